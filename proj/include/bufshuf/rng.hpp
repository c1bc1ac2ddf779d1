#pragma once

// Seeded random streams. The generator is std::mt19937_64, whose output
// sequence is fixed by the standard; bounded draws and shuffles are done
// here rather than through <random> distributions, whose algorithms are
// implementation-defined.

#include <cstdint>
#include <random>
#include <span>

namespace bufshuf {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of the trial_index-th stream of an experiment.
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t trial_index) noexcept;

class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace bufshuf
