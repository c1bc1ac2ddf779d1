#include "bufshuf/rates.hpp"

#include "bufshuf/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace bufshuf {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw RangeError("range error: " + what);
}

void check_nk(std::int64_t n, std::int64_t k) {
  require(k >= 2 && k <= n, "need 2 <= K <= n (n=" + std::to_string(n) + ", K=" + std::to_string(k) + ")");
}

void check_s(std::int64_t n, std::int64_t k, std::int64_t s) {
  require(s >= 0 && s * k <= n, "need 0 <= s <= n/K (s=" + std::to_string(s) + ")");
}

void check_f(std::int64_t n, std::int64_t f) {
  require(f >= 0 && f <= n - 2, "need 0 <= f <= n-2 (f=" + std::to_string(f) + ")");
}

// Pascal triangle rows 0..n, so the load sums do not recompute coefficients.
class BinomialTable {
public:
  explicit BinomialTable(std::int64_t n) : rows_(static_cast<std::size_t>(n) + 1) {
    for (std::int64_t a = 0; a <= n; ++a) {
      auto& row = rows_[static_cast<std::size_t>(a)];
      row.resize(static_cast<std::size_t>(a) + 1);
      row.front() = row.back() = 1;
      for (std::int64_t b = 1; b < a; ++b) {
        const auto& prev = rows_[static_cast<std::size_t>(a - 1)];
        row[static_cast<std::size_t>(b)] = prev[static_cast<std::size_t>(b - 1)] + prev[static_cast<std::size_t>(b)];
      }
    }
  }

  const BigInt& operator()(std::int64_t a, std::int64_t b) const {
    static const BigInt zero = 0;
    if (a < 0 || b < 0 || b > a) return zero;
    return rows_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }

private:
  std::vector<std::vector<BigInt>> rows_;
};

// sum_{K'=2..group} C(group,K') C(n-group, n-f-K') (K'-1)/K'
Rational printed_sum(const BinomialTable& c, std::int64_t n, std::int64_t group, std::int64_t f) {
  Rational total = 0;
  for (std::int64_t kp = 2; kp <= group; ++kp) {
    const BigInt& tail = c(n - group, n - f - kp);
    if (tail == 0) continue;
    total += Rational(c(group, kp) * tail * (kp - 1), BigInt(kp));
  }
  return total;
}

// sK(n-f) / (n(n-1) C(n,f)) * printed_sum, with group size in place of K.
Rational printed_combined_term(const BinomialTable& c, std::int64_t n, std::int64_t group, std::int64_t s,
                               std::int64_t f) {
  const Rational scale(BigInt(s) * group * (n - f), BigInt(n) * (n - 1) * c(n, f));
  return scale * printed_sum(c, n, group, f);
}

// sum_{K'=2..group} H(K') (K'-1)/(n-f-1), H hypergeometric: the expected
// per-server contraction for a server holding `group` cards.
Rational derived_group_term(const BinomialTable& c, std::int64_t n, std::int64_t group, std::int64_t f) {
  Rational total = 0;
  const BigInt& all = c(n, group);
  for (std::int64_t kp = 2; kp <= group; ++kp) {
    const BigInt& marked = c(f, group - kp);
    if (marked == 0) continue;
    total += Rational(c(n - f, kp) * marked * (kp - 1), all * (n - f - 1));
  }
  return total;
}

// C(n,J) K^J (n-K)^e / n^(J+e)
Rational load_weight(const BinomialTable& c, std::int64_t n, std::int64_t k, std::int64_t j, std::int64_t e) {
  using boost::multiprecision::pow;
  const BigInt num = c(n, j) * pow(BigInt(k), static_cast<unsigned>(j)) * pow(BigInt(n - k), static_cast<unsigned>(e));
  if (num == 0) return 0;
  return Rational(num, pow(BigInt(n), static_cast<unsigned>(j + e)));
}

}  // namespace

Rational rate_uniform(std::int64_t n, std::int64_t k) {
  check_nk(n, k);
  return Rational(BigInt(n) * (k - 1), BigInt(k) * (n - 1));
}

Rational rate_corrupt_servers(std::int64_t n, std::int64_t k, std::int64_t s) {
  check_nk(n, k);
  check_s(n, k, s);
  return Rational(BigInt(s) * (k - 1), BigInt(n - 1));
}

Rational rate_fake_paper(std::int64_t n, std::int64_t k, std::int64_t f) {
  check_nk(n, k);
  check_f(n, f);
  const BinomialTable c(n);
  return Rational(BigInt(n - f), BigInt(n - 1) * c(n, f)) * printed_sum(c, n, k, f);
}

Rational rate_fake_derived(std::int64_t n, std::int64_t k, std::int64_t f) {
  check_nk(n, k);
  check_f(n, f);
  const BinomialTable c(n);
  return Rational(BigInt(n), BigInt(k)) * derived_group_term(c, n, k, f);
}

Rational rate_combined_paper(std::int64_t n, std::int64_t k, std::int64_t s, std::int64_t f) {
  check_nk(n, k);
  check_s(n, k, s);
  check_f(n, f);
  const BinomialTable c(n);
  return printed_combined_term(c, n, k, s, f);
}

Rational rate_combined_derived(std::int64_t n, std::int64_t k, std::int64_t s, std::int64_t f) {
  check_nk(n, k);
  check_s(n, k, s);
  return Rational(BigInt(s) * k, BigInt(n)) * rate_fake_derived(n, k, f);
}

std::string_view to_string(ExponentPolicy policy) {
  return policy == ExponentPolicy::AsPrinted ? "as_printed" : "corrected";
}

Rational rate_binomial(std::int64_t n, std::int64_t k, std::int64_t s, std::int64_t f, ExponentPolicy policy) {
  check_nk(n, k);
  check_s(n, k, s);
  check_f(n, f);
  const BinomialTable c(n);
  Rational total = 0;
  for (std::int64_t j = 2; j <= n; ++j) {
    const std::int64_t e = policy == ExponentPolicy::AsPrinted ? j : n - j;
    const Rational weight = load_weight(c, n, k, j, e);
    if (weight == 0) continue;
    total += weight * printed_combined_term(c, n, j, s, f);
  }
  return total;
}

Rational rate_binomial_derived(std::int64_t n, std::int64_t k, std::int64_t s, std::int64_t f) {
  check_nk(n, k);
  check_s(n, k, s);
  check_f(n, f);
  const BinomialTable c(n);
  Rational total = 0;
  for (std::int64_t j = 2; j <= n; ++j) {
    const Rational weight = load_weight(c, n, k, j, n - j);
    if (weight == 0) continue;
    total += weight * derived_group_term(c, n, j, f);
  }
  return total * s;
}

NamedRate model_rate(const MixConfig& config) {
  const auto n = static_cast<std::int64_t>(config.n());
  const auto k = static_cast<std::int64_t>(config.k());
  const auto s = static_cast<std::int64_t>(config.s());
  const auto f = static_cast<std::int64_t>(config.f());
  if (config.assignment() == AssignmentMode::ExactPartition) {
    if (f == 0) return {"rate_corrupt_servers", rate_corrupt_servers(n, k, s)};
    return {"rate_combined_derived", rate_combined_derived(n, k, s, f)};
  }
  if (f == 0) return {"rate_binomial_corrected", rate_binomial(n, k, s, f, ExponentPolicy::Corrected)};
  return {"rate_binomial_derived", rate_binomial_derived(n, k, s, f)};
}

RatePrediction::RatePrediction(double rate, double phi0) : rate_(rate), phi0_(phi0) {
  require(rate >= 0.0 && rate <= 1.0, "rate must lie in [0, 1]");
  require(phi0 >= 0.0, "phi0 must be nonnegative");
}

double RatePrediction::predicted_phi(std::size_t t) const noexcept { return bufshuf::predicted_phi(rate_, t, phi0_); }

double predicted_phi(double rate, std::size_t t, double phi0) {
  return std::pow(1.0 - rate, static_cast<double>(t)) * phi0;
}

std::int64_t rounds_for_target(double rate, std::int64_t n, double b) {
  require(rate > 0.0 && rate <= 1.0, "rounds_for_target needs 0 < rate <= 1");
  require(b >= 1.0, "rounds_for_target needs b >= 1");
  require(n >= 2, "rounds_for_target needs n >= 2");
  if (rate == 1.0) return 1;
  const double exact = b * std::log(static_cast<double>(n)) / -std::log1p(-rate);
  // Absorb rounding when the exact answer is an integer.
  const double rounded = std::round(exact);
  const double t = std::abs(exact - rounded) <= 1e-9 * std::max(1.0, rounded) ? rounded : std::ceil(exact);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(t));
}

std::int64_t markov_rounds(double rate, std::int64_t n, double b) { return 2 * rounds_for_target(rate, n, b); }

double corrupted_server_threshold(std::int64_t n, std::int64_t k, double c) {
  check_nk(n, k);
  require(c >= 1.0, "need c >= 1");
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return std::pow(nd, -1.0 / c) * (nd - 1.0) / (kd - 1.0) - (nd - kd) / (kd * (kd - 1.0));
}

}  // namespace bufshuf
