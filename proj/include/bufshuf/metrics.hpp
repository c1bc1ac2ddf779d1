#pragma once

// Anonymity measures of a belief vector against the uniform distribution
// over the n - f unmarked positions.

#include "bufshuf/core.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace bufshuf {

/// Weights at or below this count as structural zeros in k_support.
inline constexpr double kSupportThreshold = 1e-15;
/// Slack allowed in check_inequalities.
inline constexpr double kInequalitySlack = 1e-12;

/// Sum-of-squares distance to uniform, sum (w_i - 1/m)^2 with m = n - f.
/// Evaluated in centered form, so it is exactly 0 on a uniform vector.
double phi(const BeliefState& state);
double alpha(const BeliefState& state);
double beta(const BeliefState& state);
double anon_prime(const BeliefState& state);
inline double anon(const BeliefState& state) { return 1.0 / anon_prime(state); }
double relative_entropy_bits(const BeliefState& state);
std::size_t k_support(const BeliefState& state);

MetricReport evaluate(const BeliefState& state);

struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// The six bounds relating phi to alpha, beta and anon_prime.
std::vector<InequalityCheck> check_inequalities(const BeliefState& state);

void to_json(nlohmann::json& out, const MetricReport& report);
void from_json(const nlohmann::json& in, MetricReport& report);

std::string metric_csv_header();
std::string metric_csv_row(const MetricReport& report);

/// "%.17g" rendering used for every emitted double.
std::string format_double(double value);

}  // namespace bufshuf
