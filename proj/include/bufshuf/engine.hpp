#pragma once

// Shuffling rounds on a belief vector. The adversary sees the public
// permutation, so only group membership matters: an honest server replaces
// the weights of its unmarked cards with their mean, a corrupted server
// leaves them alone.

#include "bufshuf/core.hpp"
#include "bufshuf/rng.hpp"

#include <optional>
#include <vector>

namespace bufshuf {

/// Uniform partition of the n cards into M groups of exactly K.
RoundAssignment sample_partition(const MixConfig& config, RngStream& rng);

/// Each card goes to an independent uniformly random server.
RoundAssignment sample_binomial_assignment(const MixConfig& config, RngStream& rng);

/// Dispatches on config.assignment().
RoundAssignment sample_assignment(const MixConfig& config, RngStream& rng);

/// One round of group averaging. Throws ShapeMismatch when the state does
/// not have one weight per unmarked card of the assignment.
BeliefState apply_round(const BeliefState& state, const RoundAssignment& assignment);

struct Trajectory {
  std::vector<double> phi;                          // phi[t], t = 0..rounds
  std::optional<std::vector<MetricReport>> metrics;  // filled on request
  BeliefState final_state;
};

struct TrialOptions {
  bool record_metrics = false;
};

Trajectory run_trial(const MixConfig& config, std::size_t rounds, RngStream& rng, TrialOptions options = {});

}  // namespace bufshuf
