#include "bufshuf/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace bufshuf::kernels {
namespace {

double sum_sq_dev(std::span<const double> x, double center) {
  double acc = 0.0;
  for (double v : x) {
    const double d = v - center;
    acc += d * d;
  }
  return acc;
}

double sum_abs_dev(std::span<const double> x, double center) {
  double acc = 0.0;
  for (double v : x) acc += std::abs(v - center);
  return acc;
}

double max_abs_dev(std::span<const double> x, double center) {
  double best = 0.0;
  for (double v : x) best = std::max(best, std::abs(v - center));
  return best;
}

double max_value(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double best = x[0];
  for (double v : x) best = std::max(best, v);
  return best;
}

std::size_t count_above(std::span<const double> x, double threshold) {
  std::size_t count = 0;
  for (double v : x) count += v > threshold ? 1 : 0;
  return count;
}

double sum(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v;
  return acc;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{"scalar", sum_sq_dev, sum_abs_dev, max_abs_dev, max_value, count_above, sum};
  return table;
}

}  // namespace bufshuf::kernels
