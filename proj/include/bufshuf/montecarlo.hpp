#pragma once

// Seeded Monte Carlo estimation of E[Phi(t)].
//
// Trial i draws from the stream derive_stream_seed(master_seed, i). Per-trial
// potentials are stored by trial index and reduced sequentially in that
// order, so results do not depend on the worker count.

#include "bufshuf/core.hpp"
#include "bufshuf/rates.hpp"

#include <cstdint>
#include <vector>

namespace bufshuf {

/// phi(trial, t) for t = 0..rounds, trial-major.
class PhiMatrix {
public:
  PhiMatrix(std::size_t trials, std::size_t rounds) : trials_(trials), width_(rounds + 1), data_(trials * width_) {}

  std::size_t trials() const noexcept { return trials_; }
  std::size_t rounds() const noexcept { return width_ - 1; }
  double operator()(std::size_t trial, std::size_t t) const { return data_[trial * width_ + t]; }
  double& operator()(std::size_t trial, std::size_t t) { return data_[trial * width_ + t]; }

private:
  std::size_t trials_;
  std::size_t width_;
  std::vector<double> data_;
};

struct RoundStats {
  std::size_t round = 0;
  double mean_phi = 0.0;
  double sample_std = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
};

struct ExperimentResult {
  MixConfig config;
  std::size_t rounds = 0;
  std::size_t trials = 0;
  std::uint64_t master_seed = 0;
  std::vector<RoundStats> per_round;
};

/// Runs `trials` independent trajectories on up to `workers` threads.
PhiMatrix run_trials(const MixConfig& config, std::size_t rounds, std::size_t trials, std::uint64_t master_seed,
                     std::size_t workers = 1);

/// Per-round mean, sample standard deviation and standard error.
std::vector<RoundStats> summarize(const PhiMatrix& phis);

/// Throws std::invalid_argument when trials < 2.
ExperimentResult run_experiment(const MixConfig& config, std::size_t rounds, std::size_t trials,
                                std::uint64_t master_seed, std::size_t workers = 1);

/// Per-round mean of Phi(t+1)/Phi(t) across trials with Phi(t) > 0. Its
/// expectation is 1 - rate whenever the rate is state independent.
struct RatioStats {
  std::size_t round = 0;  // ratio of round+1 to round
  double mean_ratio = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};
std::vector<RatioStats> contraction_ratios(const PhiMatrix& phis);

struct ComparisonRow {
  std::size_t round = 0;
  double empirical = 0.0;
  double predicted = 0.0;
  double std_error = 0.0;
  double z_score = 0.0;
  bool within_3_sigma = false;
  bool checked = false;  // predicted >= 10 * stderr
};

struct Comparison {
  std::vector<ComparisonRow> rows;
  bool pass = true;
};

/// z = (empirical - predicted) / stderr. With stderr = 0 the z-score is 0
/// when the two agree to 1e-12 relative, and infinite otherwise.
Comparison compare_to_theory(const ExperimentResult& result, const RatePrediction& prediction);

}  // namespace bufshuf
