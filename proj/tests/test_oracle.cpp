#include "doctest.h"

#include "bufshuf/oracle.hpp"
#include "bufshuf/rates.hpp"

#include <set>
#include <vector>

using namespace bufshuf;
using oracle::ExactWeights;

namespace {

Rational q(long long num, long long den) { return Rational(BigInt(num), BigInt(den)); }

MixConfig config(std::int64_t n, std::int64_t k, std::int64_t s, std::int64_t f,
                 AssignmentMode mode = AssignmentMode::ExactPartition) {
  return validate_config(RawParameters{n, k, s, f, mode});
}

std::uint64_t count_visits(std::size_t n, std::size_t k) {
  std::uint64_t visits = 0;
  oracle::enumerate_partitions(n, k, [&](std::span<const std::uint32_t>) { ++visits; });
  return visits;
}

Rational pairwise_closed_form(const ExactWeights& w, std::int64_t n, std::int64_t k) {
  Rational sum = 0;
  for (const auto& a : w)
    for (const auto& b : w) sum += (a - b) * (a - b);
  return Rational(BigInt(k - 1), BigInt(2 * k * (n - 1))) * sum;
}

}  // namespace

TEST_CASE("partition counts") {
  CHECK(count_visits(4, 2) == 3);
  CHECK(count_visits(6, 3) == 10);
  CHECK(count_visits(2, 2) == 1);
  CHECK(count_visits(6, 2) == 15);
  CHECK(oracle::count_partitions(12, 3) == 15400);
  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{8, 2}, {8, 4}, {9, 3}, {10, 5}, {12, 4}})
    CHECK(BigInt(count_visits(n, k)) == oracle::count_partitions(n, k));
}

TEST_CASE("partitions are distinct and well formed") {
  std::set<std::vector<std::uint32_t>> seen;
  oracle::enumerate_partitions(8, 4, [&](std::span<const std::uint32_t> g) {
    std::vector<std::uint32_t> labels(g.begin(), g.end());
    std::vector<int> sizes(2, 0);
    for (auto label : labels) ++sizes.at(label);
    CHECK(sizes == std::vector<int>{4, 4});
    CHECK(labels[0] == 0);
    seen.insert(labels);
  });
  CHECK(seen.size() == 35);
}

TEST_CASE("enumeration guards") {
  CHECK_THROWS_AS(oracle::enumerate_partitions(12, 2, [](auto) {}, 1000), oracle::TooLarge);
  CHECK_THROWS_AS(oracle::enumerate_partitions(7, 2, [](auto) {}), RangeError);
  const auto probes = oracle::random_probe_states(16, 3, 1);
  CHECK_THROWS_AS(oracle::exact_rate(config(16, 2, 8, 0), probes, 1000), oracle::TooLarge);
  const auto big = oracle::random_probe_states(12, 3, 1);
  CHECK_THROWS_AS(oracle::exact_rate(config(12, 2, 6, 0, AssignmentMode::BinomialAssignment), big),
                  oracle::TooLarge);
}

TEST_CASE("exact_expected_delta_phi") {
  const ExactWeights uniform(4, q(1, 4));
  CHECK(oracle::exact_expected_delta_phi(uniform, config(4, 2, 2, 0)) == 0);

  const ExactWeights point{1, 0, 0, 0};
  const Rational drop = oracle::exact_expected_delta_phi(point, config(4, 2, 2, 0));
  CHECK(drop == pairwise_closed_form(point, 4, 2));
  CHECK(drop == q(1, 2));

  for (const auto& w : oracle::random_probe_states(6, 4, 3))
    CHECK(oracle::exact_expected_delta_phi(w, config(6, 3, 2, 0)) == pairwise_closed_form(w, 6, 3));

  CHECK(oracle::exact_expected_delta_phi(point, config(4, 2, 0, 0)) == 0);
  CHECK_THROWS_AS(oracle::exact_expected_delta_phi(point, config(4, 2, 2, 1)), ShapeMismatch);
}

TEST_CASE("one marked card among four: the rate is 1/2 on every state") {
  const MixConfig c = config(4, 2, 2, 1);
  for (const auto& w : oracle::random_probe_states(3, 3, 9))
    CHECK(oracle::exact_expected_delta_phi(w, c) == q(1, 2) * oracle::exact_phi(w));
}

TEST_CASE("exact_rate examples") {
  const auto probes4 = oracle::random_probe_states(4, 5, 1);
  CHECK(oracle::exact_rate(config(4, 2, 2, 0), probes4).rate == q(2, 3));
  const auto probes8 = oracle::random_probe_states(8, 5, 2);
  CHECK(oracle::exact_rate(config(8, 2, 3, 0), probes8).rate == q(3, 7));
  const auto probes5 = oracle::random_probe_states(5, 5, 3);
  const auto report = oracle::exact_rate(config(6, 3, 2, 1), probes5);
  CHECK(report.rate == q(3, 4));
  CHECK(report.rate == rate_fake_derived(6, 3, 1));
  CHECK(report.per_probe.size() == 5);
}

TEST_CASE("exact_rate on the uniform and corrupted-server families up to n = 10") {
  for (std::int64_t n = 2; n <= 10; ++n)
    for (std::int64_t k = 2; k <= n; ++k) {
      if (n % k) continue;
      const auto probes = oracle::random_probe_states(static_cast<std::size_t>(n), 4, 100 + n);
      for (std::int64_t s = 0; s <= n / k; ++s) {
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(s);
        const Rational rate = oracle::exact_rate(config(n, k, s, 0), probes).rate;
        CHECK(rate == rate_corrupt_servers(n, k, s));
        if (s == n / k) CHECK(rate == rate_uniform(n, k));
      }
    }
}

TEST_CASE("exact_rate input checks") {
  const MixConfig c = config(4, 2, 2, 0);
  auto probes = oracle::random_probe_states(4, 3, 5);
  CHECK_THROWS_AS(oracle::exact_rate(c, std::span(probes).first(2)), std::invalid_argument);

  std::vector<ExactWeights> dependent{probes[0], probes[0], probes[1]};
  CHECK_THROWS_AS(oracle::exact_rate(c, dependent), std::invalid_argument);

  std::vector<ExactWeights> with_uniform = probes;
  with_uniform.push_back(ExactWeights(4, q(1, 4)));
  CHECK_THROWS_AS(oracle::exact_rate(c, with_uniform), std::invalid_argument);

  std::vector<ExactWeights> unnormalised = probes;
  unnormalised[1][0] += 1;
  CHECK_THROWS_AS(oracle::exact_rate(c, unnormalised), std::invalid_argument);
}

TEST_CASE("probes over the wrong support are rejected") {
  const MixConfig c = config(4, 2, 2, 0);
  std::vector<ExactWeights> probes = oracle::random_probe_states(4, 3, 7);
  probes.push_back(ExactWeights{1, 0, 0});
  CHECK_THROWS_AS(oracle::exact_rate(c, probes), std::invalid_argument);
}

TEST_CASE("expected drop is never negative") {
  for (auto [n, k, s, f] : {std::tuple{4, 2, 1, 1}, std::tuple{6, 3, 1, 2}, std::tuple{8, 4, 2, 3},
                            std::tuple{6, 2, 2, 1}, std::tuple{8, 2, 1, 4}}) {
    const MixConfig c = config(n, k, s, f);
    for (const auto& w : oracle::random_probe_states(c.unmarked(), 6, 11 + n))
      CHECK(oracle::exact_expected_delta_phi(w, c) >= 0);
  }
}

TEST_CASE("probe states and rank") {
  const auto probes = oracle::random_probe_states(6, 5, 4);
  REQUIRE(probes.size() == 5);
  CHECK(probes[0] == ExactWeights{1, 0, 0, 0, 0, 0});
  CHECK(oracle::rank(probes) == 5);
  for (const auto& p : probes) {
    Rational total = 0;
    for (const auto& w : p) total += w;
    CHECK(total == 1);
    CHECK(oracle::exact_phi(p) > 0);
  }
  CHECK(oracle::rank(oracle::random_probe_states(2, 5, 4)) == 2);
  CHECK(oracle::exact_phi(ExactWeights{q(3, 4), q(1, 4)}) == q(1, 8));
}
