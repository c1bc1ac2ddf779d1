#include "bufshuf/core.hpp"

#include <cmath>

namespace bufshuf {

std::string_view to_string(AssignmentMode mode) {
  return mode == AssignmentMode::ExactPartition ? "exact" : "binomial";
}

AssignmentMode parse_assignment_mode(std::string_view text) {
  if (text == "exact") return AssignmentMode::ExactPartition;
  if (text == "binomial") return AssignmentMode::BinomialAssignment;
  throw ConfigError("assignment must be 'exact' or 'binomial', got '" + std::string(text) + "'");
}

MixConfig validate_config(const RawParameters& raw) {
  auto fail_range = [](const std::string& what) { throw RangeError("range error: " + what); };

  if (raw.n < 2) fail_range("n=" + std::to_string(raw.n) + " must be at least 2");
  if (raw.k < 2) fail_range("k=" + std::to_string(raw.k) + " must be at least 2");
  // K > n always fails divisibility too; it is classed as a range error but
  // the message still names the divisibility failure.
  if (raw.k > raw.n) {
    fail_range("k=" + std::to_string(raw.k) + " exceeds n=" + std::to_string(raw.n) +
               ", so k does not divide n");
  }
  // Both modes need an integral server count M = n / K.
  if (raw.n % raw.k != 0) {
    throw DivisibilityError("divisibility error: k=" + std::to_string(raw.k) +
                            " does not divide n=" + std::to_string(raw.n));
  }
  const std::int64_t m = raw.n / raw.k;
  if (raw.s < 0 || raw.s > m) {
    fail_range("honest server count s=" + std::to_string(raw.s) + " must lie in [0, M=" + std::to_string(m) + "]");
  }
  if (raw.f < 0 || raw.f > raw.n - 2) {
    fail_range("marked card count f=" + std::to_string(raw.f) + " must lie in [0, n-2=" + std::to_string(raw.n - 2) + "]");
  }

  MixConfig config;
  config.n_ = static_cast<std::size_t>(raw.n);
  config.k_ = static_cast<std::size_t>(raw.k);
  config.m_ = static_cast<std::size_t>(m);
  config.s_ = static_cast<std::size_t>(raw.s);
  config.f_ = static_cast<std::size_t>(raw.f);
  config.mode_ = raw.assignment;
  return config;
}

BeliefState::BeliefState(std::vector<double> weights, std::uint64_t round)
    : weights_(std::move(weights)), round_(round) {}

bool BeliefState::is_valid() const noexcept {
  if (weights_.empty()) return false;
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0 && w <= 1.0)) return false;
    total += w;
  }
  return std::abs(total - 1.0) <= kSumTolerance;
}

BeliefState initial_state(const MixConfig& config) {
  std::vector<double> weights(config.unmarked(), 0.0);
  weights[0] = 1.0;
  return BeliefState(std::move(weights), 0);
}

std::vector<std::size_t> RoundAssignment::server_loads() const {
  std::vector<std::size_t> loads(servers(), 0);
  for (auto g : group_of) ++loads.at(g);
  return loads;
}

std::vector<std::uint8_t> honest_flags(const MixConfig& config) {
  std::vector<std::uint8_t> honest(config.m(), 0);
  for (std::size_t g = config.m() - config.s(); g < config.m(); ++g) honest[g] = 1;
  return honest;
}

std::vector<std::uint8_t> marked_flags(const MixConfig& config) {
  std::vector<std::uint8_t> marked(config.n(), 0);
  for (std::size_t i = config.unmarked(); i < config.n(); ++i) marked[i] = 1;
  return marked;
}

}  // namespace bufshuf
