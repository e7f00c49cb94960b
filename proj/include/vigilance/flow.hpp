#pragma once

// Gradient play in continuous time: each player descends its own cost,
//
//   dg/dt = -dU_g/dg (g, a),    da/dt = -dU_a/da (g, a),
//
// integrated with classic RK4 and projected onto [0, 1]^2 after every step.

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "vigilance/model.hpp"

namespace vigilance {

struct Point2 {
  double g;
  double a;
};

struct Velocity {
  double dg;
  double da;
};

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// One-vs-one field from closed-form partial derivatives (uses lambda[0],
/// rho[0]).
Velocity GradientField(Point2 x, const GameConfig& cfg);

/// Analytic Jacobian of GradientField: rows (dg, da), columns (g, a).
Matrix2 FieldJacobian(Point2 x, const GameConfig& cfg);

/// Eigenvalues of a 2x2 real matrix, ordered by ascending real part.
std::array<std::complex<double>, 2> Eigenvalues(const Matrix2& m);

struct FlowPath {
  double dt = 0.0;
  std::vector<Point2> states;  // states[k] at time k * dt
  bool touched_deadlock = false;  // g reached the boundary g = 1
};

/// Clamped RK4. Throws ConfigError for dt <= 0, steps < 0 or an init
/// outside [0, 1]^2.
FlowPath Integrate(Point2 init, double dt, int steps, const GameConfig& cfg);

struct BasinSample {
  Point2 init;
  bool reached;           // ends within 1e-4 of the fixed point
  bool touched_deadlock;  // passed through g = 1 on the way
};

struct FixedPointReport {
  Point2 point;
  std::array<std::complex<double>, 2> eigenvalues;
  bool stable;   // all real parts < 0
  bool is_nash;  // unilateral-deviation check passes
  std::vector<BasinSample> basin;
  int basin_reached = 0;
  int basin_deadlock = 0;  // reached, or not, after visiting g = 1
};

struct FixedPointOptions {
  int seed_grid = 50;  // seed_grid x seed_grid Newton seeds
  double newton_tol = 1e-12;
  int newton_max_iter = 100;
  double dedup_tol = 1e-6;
  int basin_grid = 11;  // initial conditions per axis, 0 disables
  double basin_dt = 0.05;
  int basin_steps = 20000;
  bool parallel = true;
};

/// Stationary points of the one-vs-one field in [0, 1]^2 via Newton from a
/// grid of seeds, deduplicated and sorted by (g, a). Throws ConfigError
/// unless M = V = 1 and NumericalFailure when no seed converges.
std::vector<FixedPointReport> FindFixedPoints(
    const GameConfig& cfg, const FixedPointOptions& opts = {});

struct FieldSample {
  double g, a, dg, da;
};

/// Velocities on a resolution x resolution grid over [0, 1]^2, g-major.
std::vector<FieldSample> SampleField(int resolution, const GameConfig& cfg);
std::vector<FieldSample> SampleFieldSerial(int resolution,
                                           const GameConfig& cfg);

struct PhasePortrait {
  std::vector<FieldSample> field;
  std::vector<FlowPath> streamlines;  // one per seed, in seed order
};

PhasePortrait ComputePhasePortrait(int resolution, const GameConfig& cfg,
                                   const std::vector<Point2>& seeds,
                                   double dt, int steps);

// Experimental multi-player field. Each greedy player descends U_g in its
// own g_i at fixed clearance; each vigilante descends its believed cost
// U_a(theta_hat(g_hat_j, a_j), a_j). Partials by central differences.
struct ProfileVelocity {
  std::vector<double> dg;
  std::vector<double> da;
};
ProfileVelocity GradientFieldMulti(const StrategyProfile& p,
                                   const GameConfig& cfg, double h = 1e-6);

/// Central-difference Jacobian of GradientFieldMulti, ordered greedy then
/// vigilante in both rows and columns.
std::vector<std::vector<double>> JacobianMulti(const StrategyProfile& p,
                                               const GameConfig& cfg,
                                               double h = 1e-5);

}  // namespace vigilance
