#pragma once

// Closed-form best responses for the greedy and vigilante players.
//
// Writing greedy throughput as g * X for a clearance factor X, the greedy
// cost (gX - theta0)^2 (1 + lambda (g - 1/N)^2) has critical points
//
//   r1     = theta0 / X                               (cost zero, global min)
//   r2, r3 = 1/N + [b +/- sqrt(b^2 - 8 X^2 / lambda)] / (4X),  b = theta0 - X/N
//
// r3 (minus branch) is a local minimum and r2 a local maximum whenever the
// radicand is positive. Once r1 > 1 the best response sits at the boundary
// g = 1 until r3 overtakes it, so beta_g jumps from 1 down to r3 at a+.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "vigilance/kernels.hpp"
#include "vigilance/model.hpp"

namespace vigilance {

struct CriticalPoints {
  double r1 = 0.0;
  std::optional<double> r2;  // local max, present iff discriminant >= 0
  std::optional<double> r3;  // local min, present iff discriminant >= 0
  /// ((theta0 - X/N) / X)^2 - 8 / lambda. At X = (1 - a) c this is
  /// (a - 2 + N)^2 / (N^2 (a - 1)^2) - 8 / lambda.
  double discriminant = 0.0;
};

/// Throws DegenerateInput if clearance <= 0. lambda == 0 yields r1 only.
CriticalPoints CriticalPointsG(double clearance, double lambda,
                               const GameConfig& cfg);

/// Critical points parameterized directly by the vigilante probability in the
/// one-greedy / one-vigilante game, (N - 3a + 2) / (4 (1 - a) N) +/- sqrt(D)/4.
/// Kept as an independent closed form for cross-checking CriticalPointsG.
CriticalPoints CriticalPointsGInA(double a, double lambda,
                                  const GameConfig& cfg);

/// d U_g / d g and d^2 U_g / d g^2 at fixed clearance.
double DUtilityG(double g, double clearance, double lambda,
                 const GameConfig& cfg);
double D2UtilityG(double g, double clearance, double lambda,
                  const GameConfig& cfg);

/// Second-order test terms at r3 for the one-vs-one game:
///   s1 = 3 N lambda (a - 1)(a - 2 + N)
///   s2 = 8N^2a^2 - 16N^2a - N^2 lambda - 2Na lambda - a^2 lambda + 8N^2
///        + 4N lambda + 4a lambda - 4 lambda
///   gamma = sqrt(-s2 / (N^2 (1 - a)^2 lambda))
/// with U_g''(r3) = -1/2 N^2 ((N-1)/N)^(2N) (s1 gamma + s2) (N-1)^-4.
struct CurvatureTerms {
  double s1;
  double s2;
  double gamma;  // NaN when r3 is not real
  double second_derivative_at_r3;
};
CurvatureTerms CurvatureAtR3(double a, double lambda, const GameConfig& cfg);

enum class Branch { kLeft, kBoundary, kRight };
std::string_view BranchName(Branch b);

struct Response {
  double value;
  Branch branch;
};

/// Global minimizer of U_g(., X) on [0, 1]: r1 when r1 <= 1 (left branch),
/// otherwise the better of g = 1 (boundary) and r3 (right); ties go to r3.
Response BestResponseGreedy(double clearance, double lambda,
                            const GameConfig& cfg);

/// beta_g(a) for the one-vs-one game. Throws DegenerateInput for a >= 1.
double BetaG(double a, double lambda, const GameConfig& cfg);
Response BetaGBranch(double a, double lambda, const GameConfig& cfg);

/// Clamped stationary point of the quadratic-in-a vigilante cost:
///   [(g^2c^2 - g c phi0 + rho/N) / (g^2c^2 + rho)]_0^1.
/// Throws DegenerateInput when g == 0 and rho == 0 (cost flat in a).
double BetaA(double g, double rho, const GameConfig& cfg);
Response BetaABranch(double g, double rho, const GameConfig& cfg);

/// U_g(1, a) - U_g(r3(a), a); NaN where r3 is not real or exceeds 1.
double JumpGap(double a, double lambda, const GameConfig& cfg);

struct Discontinuity {
  std::vector<double> roots;      // ascending, each in [1/N, 1)
  std::vector<double> residuals;  // |JumpGap| at each root
  bool multi_jump() const { return roots.size() > 1; }
  std::optional<double> a_plus() const {
    if (roots.empty()) return std::nullopt;
    return roots.front();
  }
};

/// Roots of U_g(1, a) = U_g(r3(a), a) on [1/N, 1), located by a sign scan of
/// `scan_points` nodes followed by bisection. Empty when beta_g is
/// continuous.
Discontinuity FindDiscontinuity(double lambda, const GameConfig& cfg,
                                std::size_t scan_points = 10000);

struct CurveSample {
  double input;
  double response;
  Branch branch;
};

struct BestResponseCurve {
  std::vector<CurveSample> samples;
  std::optional<double> a_plus;  // beta_g only
  double jump_size = 0.0;        // |1 - r3(a+)|
  bool multi_jump = false;
};

/// beta_g sampled on `n` nodes of [0, a_max].
BestResponseCurve SampleBetaG(double lambda, const GameConfig& cfg,
                              std::size_t n, double a_max = 0.999);
/// beta_a sampled on `n` nodes of [0, 1]; samples with g == rho == 0 are
/// skipped. Unclamped samples are labelled kLeft (its only interior branch).
BestResponseCurve SampleBetaA(double rho, const GameConfig& cfg,
                              std::size_t n);

/// Golden-section minimization of a unimodal f on [lo, hi] down to `tol`.
template <typename Fn>
double GoldenSection(const Fn& f, double lo, double hi, double tol = 1e-10) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

namespace detail {
inline void CheckResolution(std::size_t resolution) {
  if (resolution < 1000) {
    throw std::invalid_argument("oracle resolution must be at least 1000");
  }
}

template <typename Fn>
double RefineCell(const Fn& f, const kernels::GridMin& best,
                  std::size_t resolution) {
  const double lo =
      kernels::GridNode(0.0, 1.0, resolution, best.index == 0 ? 0 : best.index - 1);
  const double hi = kernels::GridNode(
      0.0, 1.0, resolution,
      best.index + 1 >= resolution ? resolution - 1 : best.index + 1);
  const double x = GoldenSection(f, lo, hi);
  return f(x) <= best.value ? x : best.x;
}
}  // namespace detail

/// Grid argmin of f on [0, 1] (`resolution` nodes, OpenMP) refined by golden
/// section inside the neighbouring cells of the winning node.
template <typename Fn>
double OracleArgmin(const Fn& f, std::size_t resolution = 1000000) {
  detail::CheckResolution(resolution);
  return detail::RefineCell(f, kernels::GridArgmin(f, 0.0, 1.0, resolution),
                            resolution);
}

template <typename Fn>
double OracleArgminSerial(const Fn& f, std::size_t resolution = 1000000) {
  detail::CheckResolution(resolution);
  return detail::RefineCell(
      f, kernels::GridArgminSerial(f, 0.0, 1.0, resolution), resolution);
}

}  // namespace vigilance
