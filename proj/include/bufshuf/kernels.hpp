#pragma once

// Reduction kernels behind the metrics and the Monte Carlo potential.
//
// Every kernel has a scalar reference implementation; an AVX2 variant is
// compiled on x86-64 and chosen at runtime when the CPU supports it. The
// BUFSHUF_KERNELS environment variable ("scalar" or "avx2") pins the choice.
// Variants agree up to floating-point reassociation, not bit for bit, so a
// single process always uses one table for reproducibility.

#include <cstddef>
#include <span>
#include <string_view>

namespace bufshuf::kernels {

struct KernelTable {
  std::string_view name;
  /// sum (x_i - center)^2
  double (*sum_sq_dev)(std::span<const double> x, double center);
  /// sum |x_i - center|
  double (*sum_abs_dev)(std::span<const double> x, double center);
  /// max |x_i - center|, 0 for an empty span
  double (*max_abs_dev)(std::span<const double> x, double center);
  /// max x_i, 0 for an empty span
  double (*max_value)(std::span<const double> x);
  /// number of x_i strictly greater than threshold
  std::size_t (*count_above)(std::span<const double> x, double threshold);
  /// sum x_i
  double (*sum)(std::span<const double> x);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the AVX2 variant is not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table() noexcept;

/// The table selected for this process.
const KernelTable& active() noexcept;

/// Override the selection ("scalar" or "avx2"). Returns false if the
/// requested variant is unavailable; the selection is then unchanged.
bool select(std::string_view name) noexcept;

}  // namespace bufshuf::kernels
