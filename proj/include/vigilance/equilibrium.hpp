#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vigilance/model.hpp"

namespace vigilance {

struct NashPoint {
  double g;
  double a;
};

struct NashVerdict {
  bool exists = false;
  std::optional<NashPoint> point;     // first equilibrium found
  std::vector<NashPoint> all_points;  // every crossing at scan resolution
  // When no equilibrium exists: the scan cell in which the composed best
  // response a -> beta_a(beta_g(a)) jumps over the diagonal.
  std::optional<double> gap_lo;
  std::optional<double> gap_hi;
  double residual_g = 0.0;  // |g - beta_g(a)| at `point`
  double residual_a = 0.0;  // |a - beta_a(g)| at `point`
};

/// Nash equilibria of the one-greedy / one-vigilante game, found as the fixed
/// points of F(a) = beta_a(beta_g(a)) on [0, 1). Scan cells that contain a
/// discontinuity of beta_g are split there so that a jump across the
/// diagonal is reported as a gap instead of a crossing.
/// Throws ConfigError unless M = V = 1.
NashVerdict FindNash(const GameConfig& cfg, std::size_t scan_points = 10000);

struct NashCheck {
  double gap_g;  // U_g(g, a) - min_x U_g(x, a)
  double gap_a;  // U_a(g, a) - min_y U_a(g, y)
  bool ok;
};

/// Unilateral-deviation check of (g, a) against grid + golden-section
/// minimizers of each player's cost.
NashCheck CheckNash(double g, double a, const GameConfig& cfg,
                    double tolerance = 1e-8,
                    std::size_t resolution = 1000000);

inline bool VerifyNash(double g, double a, const GameConfig& cfg,
                       double tolerance = 1e-8,
                       std::size_t resolution = 1000000) {
  return CheckNash(g, a, cfg, tolerance, resolution).ok;
}

}  // namespace vigilance
