#include "bufshuf/oracle.hpp"

#include "bufshuf/rng.hpp"

#include <algorithm>
#include <string>

namespace bufshuf::oracle {
namespace {

class PartitionWalker {
public:
  PartitionWalker(std::size_t n, std::size_t k, const std::function<void(std::span<const std::uint32_t>)>& visit)
      : n_(n), k_(k), visit_(visit), group_of_(n, kUnassigned) {}

  void run() { open_group(0); }

private:
  static constexpr std::uint32_t kUnassigned = ~0u;

  // The smallest unassigned card opens the next group.
  void open_group(std::uint32_t label) {
    const auto first = std::find(group_of_.begin(), group_of_.end(), kUnassigned);
    if (first == group_of_.end()) {
      visit_(group_of_);
      return;
    }
    const auto leader = static_cast<std::size_t>(first - group_of_.begin());
    group_of_[leader] = label;
    fill_group(label, leader + 1, k_ - 1);
    group_of_[leader] = kUnassigned;
  }

  void fill_group(std::uint32_t label, std::size_t from, std::size_t remaining) {
    if (remaining == 0) {
      open_group(label + 1);
      return;
    }
    for (std::size_t card = from; card < n_; ++card) {
      if (group_of_[card] != kUnassigned) continue;
      group_of_[card] = label;
      fill_group(label, card + 1, remaining - 1);
      group_of_[card] = kUnassigned;
    }
  }

  std::size_t n_;
  std::size_t k_;
  const std::function<void(std::span<const std::uint32_t>)>& visit_;
  std::vector<std::uint32_t> group_of_;
};

// sum_{honest g} (S2_g - S1_g^2 / K'_g) for one labelled assignment.
struct GroupMoments {
  std::vector<Rational> sum;
  std::vector<Rational> sum_sq;
  std::vector<std::size_t> count;

  explicit GroupMoments(std::size_t groups) : sum(groups), sum_sq(groups), count(groups, 0) {}

  void accumulate(std::span<const std::uint32_t> group_of, std::span<const Rational> weights) {
    std::fill(sum.begin(), sum.end(), Rational(0));
    std::fill(sum_sq.begin(), sum_sq.end(), Rational(0));
    std::fill(count.begin(), count.end(), 0);
    for (std::size_t card = 0; card < weights.size(); ++card) {
      const auto g = group_of[card];
      sum[g] += weights[card];
      sum_sq[g] += weights[card] * weights[card];
      ++count[g];
    }
  }

  Rational drop(std::size_t g) const {
    if (count[g] < 2) return 0;
    return sum_sq[g] - sum[g] * sum[g] / count[g];
  }
};

void check_weights(std::span<const Rational> weights, const MixConfig& config) {
  if (weights.size() != config.unmarked()) {
    throw ShapeMismatch("exact state has " + std::to_string(weights.size()) + " weights, expected n-f=" +
                        std::to_string(config.unmarked()));
  }
}

Rational expected_drop_partition(std::span<const Rational> weights, const MixConfig& config, std::uint64_t cap) {
  const std::size_t m = config.m();
  // Honest-group subsets as indicator vectors, in lexicographic order.
  std::vector<std::vector<std::uint8_t>> subsets;
  std::vector<std::uint8_t> mask(m, 0);
  std::fill(mask.end() - static_cast<std::ptrdiff_t>(config.s()), mask.end(), 1);
  do {
    subsets.push_back(mask);
  } while (std::next_permutation(mask.begin(), mask.end()));

  GroupMoments moments(m);
  Rational total = 0;
  std::uint64_t outcomes = 0;
  enumerate_partitions(
      config.n(), config.k(),
      [&](std::span<const std::uint32_t> group_of) {
        moments.accumulate(group_of, weights);
        for (const auto& honest : subsets) {
          for (std::size_t g = 0; g < m; ++g) {
            if (honest[g]) total += moments.drop(g);
          }
          ++outcomes;
        }
      },
      cap);
  return total / outcomes;
}

Rational expected_drop_binomial(std::span<const Rational> weights, const MixConfig& config, std::uint64_t cap) {
  const std::size_t n = config.n();
  const std::size_t m = config.m();
  if (n > 8 || m > 3) {
    throw TooLarge("binomial enumeration is limited to n <= 8 and M <= 3 (n=" + std::to_string(n) +
                   ", M=" + std::to_string(m) + ")");
  }
  std::uint64_t outcomes = 1;
  for (std::size_t i = 0; i < n; ++i) outcomes *= m;
  if (outcomes > cap) throw TooLarge("binomial enumeration exceeds cap");

  const auto honest = honest_flags(config);
  GroupMoments moments(m);
  std::vector<std::uint32_t> group_of(n, 0);
  Rational total = 0;
  for (std::uint64_t code = 0; code < outcomes; ++code) {
    std::uint64_t rest = code;
    for (std::size_t card = 0; card < n; ++card) {
      group_of[card] = static_cast<std::uint32_t>(rest % m);
      rest /= m;
    }
    moments.accumulate(group_of, weights);
    for (std::size_t g = 0; g < m; ++g) {
      if (honest[g]) total += moments.drop(g);
    }
  }
  return total / outcomes;
}

}  // namespace

BigInt count_partitions(std::size_t n, std::size_t k) {
  if (k == 0 || n % k != 0) return 0;
  const auto m = static_cast<std::int64_t>(n / k);
  BigInt denom = factorial(m);
  const BigInt kfact = factorial(static_cast<std::int64_t>(k));
  for (std::int64_t i = 0; i < m; ++i) denom *= kfact;
  return factorial(static_cast<std::int64_t>(n)) / denom;
}

void enumerate_partitions(std::size_t n, std::size_t k,
                          const std::function<void(std::span<const std::uint32_t>)>& visit, std::uint64_t cap) {
  if (k == 0 || n == 0 || n % k != 0) {
    throw RangeError("range error: partition enumeration needs K | n (n=" + std::to_string(n) +
                     ", K=" + std::to_string(k) + ")");
  }
  const BigInt count = count_partitions(n, k);
  if (count > cap) {
    throw TooLarge(count.str() + " partitions of " + std::to_string(n) + " cards exceed the cap of " +
                   std::to_string(cap));
  }
  PartitionWalker(n, k, visit).run();
}

Rational exact_phi(std::span<const Rational> weights) {
  Rational total = 0;
  for (const auto& w : weights) total += w * w;
  return total - Rational(1, static_cast<long long>(weights.size()));
}

Rational exact_expected_delta_phi(std::span<const Rational> weights, const MixConfig& config, std::uint64_t cap) {
  check_weights(weights, config);
  if (config.s() == 0) return 0;
  return config.assignment() == AssignmentMode::ExactPartition ? expected_drop_partition(weights, config, cap)
                                                               : expected_drop_binomial(weights, config, cap);
}

ExactRateReport exact_rate(const MixConfig& config, std::span<const ExactWeights> probes, std::uint64_t cap) {
  const std::size_t support = config.unmarked();
  if (probes.size() < 3) throw std::invalid_argument("exact_rate needs at least 3 probe states");
  for (const auto& probe : probes) {
    check_weights(probe, config);
    Rational total = 0;
    for (const auto& w : probe) {
      if (w < 0) throw std::invalid_argument("probe state has a negative weight");
      total += w;
    }
    if (total != 1) throw std::invalid_argument("probe state does not sum to 1");
    if (exact_phi(probe) == 0) throw std::invalid_argument("probe state is uniform");
  }
  if (rank(probes) < std::min<std::size_t>(3, support)) {
    throw std::invalid_argument("probe states are not linearly independent");
  }

  ExactRateReport report;
  for (const auto& probe : probes) {
    report.per_probe.push_back(exact_expected_delta_phi(probe, config, cap) / exact_phi(probe));
  }
  report.rate = report.per_probe.front();
  for (std::size_t i = 1; i < report.per_probe.size(); ++i) {
    if (report.per_probe[i] != report.rate) {
      throw NotConstant("E[dPhi]/Phi differs between probes: " + to_string(report.rate) + " vs " +
                        to_string(report.per_probe[i]));
    }
  }
  return report;
}

std::vector<ExactWeights> random_probe_states(std::size_t support, std::size_t count, std::uint64_t seed) {
  if (support < 2) throw std::invalid_argument("probe states need at least 2 cards");
  RngStream rng(seed);
  std::vector<ExactWeights> probes;
  ExactWeights point(support, Rational(0));
  point[0] = 1;
  probes.push_back(point);

  const std::size_t wanted = std::min(count, support);
  while (probes.size() < count) {
    std::vector<long long> raw(support);
    long long total = 0;
    for (auto& r : raw) {
      r = static_cast<long long>(rng.below(17));
      total += r;
    }
    if (total == 0) continue;
    ExactWeights probe(support);
    for (std::size_t i = 0; i < support; ++i) probe[i] = Rational(raw[i], total);
    if (exact_phi(probe) == 0) continue;
    probes.push_back(std::move(probe));
    // Keep drawing replacements until the set is as independent as it can be.
    if (rank(probes) < std::min(probes.size(), wanted)) probes.pop_back();
  }
  return probes;
}

std::size_t rank(std::span<const ExactWeights> vectors) {
  if (vectors.empty()) return 0;
  std::vector<ExactWeights> rows(vectors.begin(), vectors.end());
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows.size(); ++col) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      const Rational factor = rows[i][col] / rows[r][col];
      for (std::size_t j = col; j < cols; ++j) rows[i][j] -= factor * rows[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace bufshuf::oracle
