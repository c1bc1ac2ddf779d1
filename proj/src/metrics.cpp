#include "bufshuf/metrics.hpp"

#include "bufshuf/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace bufshuf {
namespace {

double uniform_weight(const BeliefState& state) { return 1.0 / static_cast<double>(state.size()); }

}  // namespace

double phi(const BeliefState& state) {
  return kernels::active().sum_sq_dev(state.weights(), uniform_weight(state));
}

double alpha(const BeliefState& state) {
  return kernels::active().max_abs_dev(state.weights(), uniform_weight(state));
}

double beta(const BeliefState& state) {
  return 0.5 * kernels::active().sum_abs_dev(state.weights(), uniform_weight(state));
}

double anon_prime(const BeliefState& state) { return kernels::active().max_value(state.weights()); }

double relative_entropy_bits(const BeliefState& state) {
  const double m = static_cast<double>(state.size());
  double bits = 0.0;
  for (double w : state.weights()) {
    if (w > 0.0) bits += w * std::log2(m * w);
  }
  // Rounding can leave a tiny negative value near uniform.
  return std::max(bits, 0.0);
}

std::size_t k_support(const BeliefState& state) {
  return kernels::active().count_above(state.weights(), kSupportThreshold);
}

MetricReport evaluate(const BeliefState& state) {
  MetricReport report;
  report.phi = phi(state);
  report.alpha = alpha(state);
  report.beta = beta(state);
  report.anon_prime = anon_prime(state);
  report.anon = 1.0 / report.anon_prime;
  report.rel_entropy_bits = relative_entropy_bits(state);
  report.k_support = k_support(state);
  return report;
}

std::vector<InequalityCheck> check_inequalities(const BeliefState& state) {
  const MetricReport r = evaluate(state);
  const double m = static_cast<double>(state.size());
  const double root_phi = std::sqrt(r.phi);
  auto check = [](std::string name, double lhs, double rhs) {
    return InequalityCheck{std::move(name), lhs, rhs, lhs <= rhs + kInequalitySlack};
  };
  return {
      check("alpha <= sqrt(phi)", r.alpha, root_phi),
      check("beta <= sqrt(n*phi)/2", r.beta, std::sqrt(m * r.phi) / 2.0),
      check("anon' <= sqrt(phi) + 1/n", r.anon_prime, root_phi + 1.0 / m),
      check("sqrt(phi)/2 <= beta", root_phi / 2.0, r.beta),
      check("sqrt(phi/n) <= alpha", std::sqrt(r.phi / m), r.alpha),
      check("anon' <= alpha + 1/n", r.anon_prime, r.alpha + 1.0 / m),
  };
}

void to_json(nlohmann::json& out, const MetricReport& report) {
  out = nlohmann::json{{"phi", report.phi},
                       {"alpha", report.alpha},
                       {"beta", report.beta},
                       {"anon_prime", report.anon_prime},
                       {"anon", report.anon},
                       {"rel_entropy_bits", report.rel_entropy_bits},
                       {"k_support", report.k_support}};
}

void from_json(const nlohmann::json& in, MetricReport& report) {
  in.at("phi").get_to(report.phi);
  in.at("alpha").get_to(report.alpha);
  in.at("beta").get_to(report.beta);
  in.at("anon_prime").get_to(report.anon_prime);
  in.at("anon").get_to(report.anon);
  in.at("rel_entropy_bits").get_to(report.rel_entropy_bits);
  in.at("k_support").get_to(report.k_support);
}

std::string metric_csv_header() { return "phi,alpha,beta,anon_prime,anon,rel_entropy_bits,k_support"; }

std::string metric_csv_row(const MetricReport& report) {
  return format_double(report.phi) + ',' + format_double(report.alpha) + ',' + format_double(report.beta) + ',' +
         format_double(report.anon_prime) + ',' + format_double(report.anon) + ',' +
         format_double(report.rel_entropy_bits) + ',' + std::to_string(report.k_support);
}

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

}  // namespace bufshuf
