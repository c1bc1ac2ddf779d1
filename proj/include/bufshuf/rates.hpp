#pragma once

// Closed-form per-round contraction rates E[dPhi/Phi] and round counts.
//
// The marked-card and combined rates exist in two forms: the expressions
// exactly as they were published (`*_paper`) and conditional-expectation
// re-derivations (`*_derived`). They disagree when f > 0; the enumeration
// oracle in oracle.hpp decides which one describes the process.

#include "bufshuf/core.hpp"
#include "bufshuf/exact.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace bufshuf {

/// n(K-1) / (K(n-1)); all servers honest, no marked cards.
Rational rate_uniform(std::int64_t n, std::int64_t k);

/// s(K-1) / (n-1); s honest servers out of n/K.
Rational rate_corrupt_servers(std::int64_t n, std::int64_t k, std::int64_t s);

/// Published marked-card rate:
/// (n-f) / ((n-1) C(n,f)) * sum_{K'=2..K} C(K,K') C(n-K, n-f-K') (K'-1)/K'.
Rational rate_fake_paper(std::int64_t n, std::int64_t k, std::int64_t f);

/// Re-derived marked-card rate:
/// sum_{K'=2..K} (n/K) H(K') (K'-1)/(n-f-1), H(K') = C(n-f,K') C(f,K-K') / C(n,K).
Rational rate_fake_derived(std::int64_t n, std::int64_t k, std::int64_t f);

/// Published combined rate: sK(n-f) / (n(n-1) C(n,f)) * (same sum as rate_fake_paper).
Rational rate_combined_paper(std::int64_t n, std::int64_t k, std::int64_t s, std::int64_t f);

/// (sK/n) * rate_fake_derived(n, K, f).
Rational rate_combined_derived(std::int64_t n, std::int64_t k, std::int64_t s, std::int64_t f);

enum class ExponentPolicy {
  AsPrinted,  // load weight C(n,J) (K/n)^J (1-K/n)^J
  Corrected,  // load weight C(n,J) (K/n)^J (1-K/n)^(n-J), the Binomial(n, K/n) pmf
};

std::string_view to_string(ExponentPolicy policy);

/// Rate under independent uniform card-to-server assignment: the published
/// sum over server load J of weight(J) times the combined per-group term
/// evaluated at group size J.
Rational rate_binomial(std::int64_t n, std::int64_t k, std::int64_t s, std::int64_t f, ExponentPolicy policy);

/// Binomial-assignment rate built on the re-derived per-group term:
/// s * sum_J Binomial(n,K/n)(J) * sum_{K'} H_J(K') (K'-1)/(n-f-1).
/// Equals rate_binomial(..., Corrected) when f = 0.
Rational rate_binomial_derived(std::int64_t n, std::int64_t k, std::int64_t s, std::int64_t f);

struct NamedRate {
  std::string name;
  Rational value;
};

/// The rate that describes a configuration's dynamics: rate_corrupt_servers
/// (f = 0) or rate_combined_derived (f > 0) for exact partitions, and
/// rate_binomial(Corrected) or rate_binomial_derived for binomial assignment.
NamedRate model_rate(const MixConfig& config);

/// Expected potential under a constant contraction rate.
class RatePrediction {
public:
  /// Throws RangeError unless 0 <= rate <= 1 and phi0 >= 0.
  RatePrediction(double rate, double phi0);

  double rate() const noexcept { return rate_; }
  double phi0() const noexcept { return phi0_; }
  double predicted_phi(std::size_t t) const noexcept;

private:
  double rate_;
  double phi0_;
};

/// (1 - rate)^t * phi0.
double predicted_phi(double rate, std::size_t t, double phi0);

/// Smallest t with (1 - rate)^t <= n^-b, i.e. ceil(b ln n / ln(1/(1-rate))).
/// Returns 1 for rate = 1. Throws RangeError unless 0 < rate <= 1, b >= 1, n >= 2.
std::int64_t rounds_for_target(double rate, std::int64_t n, double b);

/// 2 * rounds_for_target: after that many rounds E[Phi] <= n^-2b, so
/// Pr(Phi > n^-b) <= n^-b by Markov's inequality.
std::int64_t markov_rounds(double rate, std::int64_t n, double b);

/// Largest number of corrupted servers that keeps rate_corrupt_servers at or
/// above 1 - n^(-1/c): n^(-1/c)(n-1)/(K-1) - (n-K)/(K(K-1)).
double corrupted_server_threshold(std::int64_t n, std::int64_t k, double c);

}  // namespace bufshuf
