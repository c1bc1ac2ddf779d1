#pragma once

// Domain types shared by every bufshuf module: experiment configuration,
// the adversary's belief vector over the tracked card, one round's
// card-to-server assignment and the anonymity metric bundle.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bufshuf {

/// Raised for configuration values that break a MixConfig invariant.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// K does not divide n.
class DivisibilityError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

/// A parameter falls outside its admissible range.
class RangeError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

/// A belief state and an assignment disagree on the number of cards.
class ShapeMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class AssignmentMode { ExactPartition, BinomialAssignment };

std::string_view to_string(AssignmentMode mode);
AssignmentMode parse_assignment_mode(std::string_view text);

struct RawParameters {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t s = 0;
  std::int64_t f = 0;
  AssignmentMode assignment = AssignmentMode::ExactPartition;
};

/// Validated experiment parameters. Only validate_config() builds one.
class MixConfig {
public:
  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t m() const noexcept { return m_; }
  std::size_t s() const noexcept { return s_; }
  std::size_t f() const noexcept { return f_; }
  AssignmentMode assignment() const noexcept { return mode_; }

  /// Number of unmarked cards, the support of the belief vector.
  std::size_t unmarked() const noexcept { return n_ - f_; }

  friend MixConfig validate_config(const RawParameters& raw);
  friend bool operator==(const MixConfig&, const MixConfig&) = default;

private:
  MixConfig() = default;

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::size_t m_ = 0;
  std::size_t s_ = 0;
  std::size_t f_ = 0;
  AssignmentMode mode_ = AssignmentMode::ExactPartition;
};

/// Checks every invariant and derives M = n / K.
/// Throws DivisibilityError or RangeError.
MixConfig validate_config(const RawParameters& raw);

/// Sum-to-one tolerance (relative) for belief states.
inline constexpr double kSumTolerance = 1e-9;

/// The adversary's probability for each unmarked position to hold the
/// tracked card. Index 0 is the tracked card at round 0.
class BeliefState {
public:
  BeliefState(std::vector<double> weights, std::uint64_t round);

  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }
  std::uint64_t round() const noexcept { return round_; }
  double operator[](std::size_t i) const { return weights_[i]; }

  /// True when every weight lies in [0, 1] and the total is 1 within
  /// kSumTolerance.
  bool is_valid() const noexcept;

  friend bool operator==(const BeliefState&, const BeliefState&) = default;

private:
  std::vector<double> weights_;
  std::uint64_t round_ = 0;
};

/// Point mass on the tracked card; round 0.
BeliefState initial_state(const MixConfig& config);

/// One round's routing: which server each card visits, which servers are
/// honest, which cards are adversary-marked. Cards [0, n - f) are unmarked;
/// cards [n - f, n) are marked.
struct RoundAssignment {
  std::vector<std::uint32_t> group_of;
  std::vector<std::uint8_t> honest;
  std::vector<std::uint8_t> marked;

  std::size_t servers() const noexcept { return honest.size(); }
  std::vector<std::size_t> server_loads() const;
};

/// Honesty flags for a config: servers [0, M - s) are corrupted.
std::vector<std::uint8_t> honest_flags(const MixConfig& config);
/// Marked flags for a config: the last f cards are marked.
std::vector<std::uint8_t> marked_flags(const MixConfig& config);

struct MetricReport {
  double phi = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double anon_prime = 0.0;
  double anon = 0.0;
  double rel_entropy_bits = 0.0;
  std::size_t k_support = 0;
};

}  // namespace bufshuf
