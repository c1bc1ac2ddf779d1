#include "bufshuf/montecarlo.hpp"

#include "bufshuf/engine.hpp"
#include "bufshuf/rng.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace bufshuf {
namespace {

struct Moments {
  double mean = 0.0;
  double std_dev = 0.0;  // n - 1 denominator, 0 for fewer than two values
};

// Two passes, the first shifted by x[0] so a constant column gives its
// value back exactly and a zero spread.
Moments moments(const std::vector<double>& x) {
  Moments out;
  if (x.empty()) return out;
  const double shift = x.front();
  double offset = 0.0;
  for (double v : x) offset += v - shift;
  out.mean = shift + offset / static_cast<double>(x.size());
  if (x.size() < 2) return out;
  double squares = 0.0;
  for (double v : x) squares += (v - out.mean) * (v - out.mean);
  out.std_dev = std::sqrt(squares / static_cast<double>(x.size() - 1));
  return out;
}

}  // namespace

PhiMatrix run_trials(const MixConfig& config, std::size_t rounds, std::size_t trials, std::uint64_t master_seed,
                     std::size_t workers) {
  PhiMatrix phis(trials, rounds);
  auto run_slice = [&](std::size_t first, std::size_t stride) {
    for (std::size_t trial = first; trial < trials; trial += stride) {
      RngStream rng(derive_stream_seed(master_seed, trial));
      const Trajectory trajectory = run_trial(config, rounds, rng);
      for (std::size_t t = 0; t <= rounds; ++t) phis(trial, t) = trajectory.phi[t];
    }
  };

  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(trials, 1));
  if (workers == 1) {
    run_slice(0, 1);
    return phis;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        run_slice(w, workers);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return phis;
}

std::vector<RoundStats> summarize(const PhiMatrix& phis) {
  std::vector<RoundStats> out;
  const std::size_t trials = phis.trials();
  std::vector<double> column(trials);
  for (std::size_t t = 0; t <= phis.rounds(); ++t) {
    for (std::size_t i = 0; i < trials; ++i) column[i] = phis(i, t);
    const Moments m = moments(column);
    out.push_back({t, m.mean, m.std_dev, m.std_dev / std::sqrt(static_cast<double>(trials)), trials});
  }
  return out;
}

ExperimentResult run_experiment(const MixConfig& config, std::size_t rounds, std::size_t trials,
                                std::uint64_t master_seed, std::size_t workers) {
  if (trials < 2) throw std::invalid_argument("run_experiment needs at least 2 trials");
  const PhiMatrix phis = run_trials(config, rounds, trials, master_seed, workers);
  return ExperimentResult{config, rounds, trials, master_seed, summarize(phis)};
}

std::vector<RatioStats> contraction_ratios(const PhiMatrix& phis) {
  std::vector<RatioStats> out;
  for (std::size_t t = 0; t < phis.rounds(); ++t) {
    std::vector<double> ratios;
    ratios.reserve(phis.trials());
    for (std::size_t i = 0; i < phis.trials(); ++i) {
      if (phis(i, t) > 0.0) ratios.push_back(phis(i, t + 1) / phis(i, t));
    }
    const Moments m = moments(ratios);
    RatioStats stats{t, m.mean, 0.0, ratios.size()};
    if (!ratios.empty()) stats.std_error = m.std_dev / std::sqrt(static_cast<double>(ratios.size()));
    out.push_back(stats);
  }
  return out;
}

Comparison compare_to_theory(const ExperimentResult& result, const RatePrediction& prediction) {
  Comparison comparison;
  for (const RoundStats& stats : result.per_round) {
    ComparisonRow row;
    row.round = stats.round;
    row.empirical = stats.mean_phi;
    row.predicted = prediction.predicted_phi(stats.round);
    row.std_error = stats.std_error;
    const double diff = row.empirical - row.predicted;
    if (row.std_error > 0.0) {
      row.z_score = diff / row.std_error;
    } else if (std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(row.predicted))) {
      row.z_score = 0.0;
    } else {
      row.z_score = std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
    row.within_3_sigma = std::abs(row.z_score) <= 3.0;
    row.checked = row.predicted >= 10.0 * row.std_error;
    if (row.checked && !row.within_3_sigma) comparison.pass = false;
    comparison.rows.push_back(row);
  }
  return comparison;
}

}  // namespace bufshuf
