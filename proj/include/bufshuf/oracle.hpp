#pragma once

// Exact ground truth by enumeration. Every quantity here is a rational;
// nothing in this module touches floating point.

#include "bufshuf/core.hpp"
#include "bufshuf/exact.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace bufshuf::oracle {

/// The enumeration would visit more outcomes than the configured cap.
class TooLarge : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Probe states produced different values of E[dPhi]/Phi.
class NotConstant : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultCap = 1'000'000;

using ExactWeights = std::vector<Rational>;

/// n! / ((K!)^M M!), the number of unordered partitions into M groups of K.
BigInt count_partitions(std::size_t n, std::size_t k);

/// Visits every unordered partition of {0..n-1} into groups of K exactly once.
/// The visitor receives group_of[card]; groups are labelled by the order of
/// their smallest card. Throws TooLarge when the count exceeds cap and
/// RangeError when K does not divide n.
void enumerate_partitions(std::size_t n, std::size_t k,
                          const std::function<void(std::span<const std::uint32_t>)>& visit,
                          std::uint64_t cap = kDefaultCap);

/// sum w_i^2 - 1/(n-f)
Rational exact_phi(std::span<const Rational> weights);

/// E[Phi(t) - Phi(t+1)] over one round.
///
/// ExactPartition: uniform over all partitions and, for each, uniform over
/// the C(M, s) choices of honest groups. BinomialAssignment: uniform over all
/// M^n labelled assignments with servers [M-s, M) honest (n <= 8, M <= 3).
/// Marked cards (the last f) never carry weight and never count toward a
/// group's size.
Rational exact_expected_delta_phi(std::span<const Rational> weights, const MixConfig& config,
                                  std::uint64_t cap = kDefaultCap);

struct ExactRateReport {
  Rational rate;
  std::vector<Rational> per_probe;
};

/// E[dPhi]/Phi on every probe state; all must agree exactly.
/// Needs at least 3 probes spanning min(3, n-f) dimensions, each a
/// non-uniform distribution over the n-f unmarked cards.
ExactRateReport exact_rate(const MixConfig& config, std::span<const ExactWeights> probes,
                           std::uint64_t cap = kDefaultCap);

/// `count` pseudo-random rational distributions over `support` cards. The
/// first is the point mass on card 0; the set spans min(count, support)
/// dimensions and none is uniform.
std::vector<ExactWeights> random_probe_states(std::size_t support, std::size_t count, std::uint64_t seed);

/// Rank of a set of rational vectors.
std::size_t rank(std::span<const ExactWeights> vectors);

}  // namespace bufshuf::oracle
