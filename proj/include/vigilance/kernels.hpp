#pragma once

// Data-parallel kernels used by the grid oracles, sign scans, phase-portrait
// sampling and multi-seed searches. Every kernel has a *Serial twin that is
// the reference implementation; the OpenMP version must return bit-identical
// results (ties resolve to the lowest index, results are assembled in index
// order).

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace vigilance::kernels {

/// i-th node of an n-point uniform grid on [lo, hi].
inline double GridNode(double lo, double hi, std::size_t n, std::size_t i) {
  if (n == 1) return lo;
  if (i + 1 == n) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

struct GridMin {
  std::size_t index = 0;
  double x = 0.0;
  double value = std::numeric_limits<double>::infinity();
};

template <typename Fn>
std::vector<double> EvaluateGridSerial(const Fn& f, double lo, double hi,
                                       std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = f(GridNode(lo, hi, n, i));
  return out;
}

template <typename Fn>
std::vector<double> EvaluateGrid(const Fn& f, double lo, double hi,
                                 std::size_t n) {
  std::vector<double> out(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    out[i] = f(GridNode(lo, hi, n, static_cast<std::size_t>(i)));
  }
  return out;
}

template <typename Fn>
GridMin GridArgminSerial(const Fn& f, double lo, double hi, std::size_t n) {
  GridMin best;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = GridNode(lo, hi, n, i);
    const double v = f(x);
    if (v < best.value) best = {i, x, v};
  }
  return best;
}

template <typename Fn>
GridMin GridArgmin(const Fn& f, double lo, double hi, std::size_t n) {
  GridMin best;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
  {
    GridMin local;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const double x = GridNode(lo, hi, n, static_cast<std::size_t>(i));
      const double v = f(x);
      if (v < local.value) local = {static_cast<std::size_t>(i), x, v};
    }
#pragma omp critical(vigilance_grid_argmin)
    {
      if (local.value < best.value ||
          (local.value == best.value && local.index < best.index)) {
        best = local;
      }
    }
  }
  return best;
}

/// Applies fn to 0..n-1 and returns the results in index order.
template <typename Fn>
auto MapIndicesSerial(std::size_t n, const Fn& fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
  return out;
}

template <typename Fn>
auto MapIndices(std::size_t n, const Fn& fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> out(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    out[i] = fn(static_cast<std::size_t>(i));
  }
  return out;
}

/// Adjacent index pairs (i, i + 1) whose values have strictly opposite
/// signs, or where the right value is exactly zero.
inline std::vector<std::pair<std::size_t, std::size_t>> SignChanges(
    const std::vector<double>& values) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double l = values[i];
    const double r = values[i + 1];
    if ((l < 0.0 && r >= 0.0) || (l > 0.0 && r <= 0.0)) out.emplace_back(i, i + 1);
  }
  return out;
}

}  // namespace vigilance::kernels
