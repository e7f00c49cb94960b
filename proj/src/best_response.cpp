#include "vigilance/best_response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vigilance/errors.hpp"
#include "vigilance/kernels.hpp"

namespace vigilance {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double OneOnOneClearance(double a, const GameConfig& cfg) {
  if (a >= 1.0) {
    throw DegenerateInput("vigilante probability 1 jams the channel");
  }
  return (1.0 - a) * ComputeFairBaselines(cfg).c;
}

// Sign used by the a+ scan: positive where r3 strictly beats g = 1.
double JumpSign(double a, double lambda, const GameConfig& cfg) {
  const double gap = JumpGap(a, lambda, cfg);
  return std::isnan(gap) ? -1.0 : gap;
}

double Bisect(double lo, double hi, double lambda, const GameConfig& cfg) {
  // Invariant: sign(lo) != sign(hi). Returns the endpoint on the side where
  // r3 wins, so beta_g evaluated at the root selects r3.
  const bool lo_positive = JumpSign(lo, lambda, cfg) > 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((JumpSign(mid, lambda, cfg) > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo_positive ? lo : hi;
}

}  // namespace

CriticalPoints CriticalPointsG(double clearance, double lambda,
                               const GameConfig& cfg) {
  if (!(clearance > 0.0)) {
    throw DegenerateInput("clearance factor must be positive");
  }
  const FairBaselines fb = ComputeFairBaselines(cfg);
  const double n = cfg.n_total;
  CriticalPoints cp;
  cp.r1 = fb.theta0 / clearance;
  if (!(lambda > 0.0)) {
    cp.discriminant = -std::numeric_limits<double>::infinity();
    return cp;
  }
  const double t = (fb.theta0 - clearance / n) / clearance;
  cp.discriminant = t * t - 8.0 / lambda;
  if (cp.discriminant >= 0.0) {
    const double root = std::sqrt(cp.discriminant);
    cp.r2 = 1.0 / n + (t + root) / 4.0;
    cp.r3 = 1.0 / n + (t - root) / 4.0;
  }
  return cp;
}

CriticalPoints CriticalPointsGInA(double a, double lambda,
                                  const GameConfig& cfg) {
  if (a >= 1.0) {
    throw DegenerateInput("vigilante probability 1 jams the channel");
  }
  const double n = cfg.n_total;
  CriticalPoints cp;
  cp.r1 = (n - 1.0) / (n * (1.0 - a));
  if (!(lambda > 0.0)) {
    cp.discriminant = -std::numeric_limits<double>::infinity();
    return cp;
  }
  const double q = (a - 2.0 + n) / (n * (a - 1.0));
  cp.discriminant = q * q - 8.0 / lambda;
  if (cp.discriminant >= 0.0) {
    const double centre = (n - 3.0 * a + 2.0) / (4.0 * (1.0 - a) * n);
    const double half = std::sqrt(cp.discriminant) / 4.0;
    cp.r2 = centre + half;
    cp.r3 = centre - half;
  }
  return cp;
}

double DUtilityG(double g, double clearance, double lambda,
                 const GameConfig& cfg) {
  const double e = g * clearance - ComputeFairBaselines(cfg).theta0;
  const double u = g - cfg.fair_prob();
  return 2.0 * clearance * e * (1.0 + lambda * u * u) +
         2.0 * lambda * u * e * e;
}

double D2UtilityG(double g, double clearance, double lambda,
                  const GameConfig& cfg) {
  const double e = g * clearance - ComputeFairBaselines(cfg).theta0;
  const double u = g - cfg.fair_prob();
  return 2.0 * clearance * clearance * (1.0 + lambda * u * u) +
         8.0 * lambda * clearance * u * e + 2.0 * lambda * e * e;
}

CurvatureTerms CurvatureAtR3(double a, double lambda, const GameConfig& cfg) {
  const double n = cfg.n_total;
  CurvatureTerms t;
  t.s1 = 3.0 * n * lambda * (a - 1.0) * (a - 2.0 + n);
  t.s2 = 8.0 * n * n * a * a - 16.0 * n * n * a - n * n * lambda -
         2.0 * n * a * lambda - a * a * lambda + 8.0 * n * n +
         4.0 * n * lambda + 4.0 * a * lambda - 4.0 * lambda;
  const double radicand = -t.s2 / (n * n * (1.0 - a) * (1.0 - a) * lambda);
  t.gamma = radicand >= 0.0 ? std::sqrt(radicand) : kNaN;
  t.second_derivative_at_r3 = -0.5 * n * n *
                              std::pow((n - 1.0) / n, 2.0 * n) *
                              (t.s1 * t.gamma + t.s2) /
                              std::pow(n - 1.0, 4.0);
  return t;
}

std::string_view BranchName(Branch b) {
  switch (b) {
    case Branch::kLeft:
      return "left";
    case Branch::kBoundary:
      return "boundary";
    case Branch::kRight:
      return "right";
  }
  return "unknown";
}

Response BestResponseGreedy(double clearance, double lambda,
                            const GameConfig& cfg) {
  const CriticalPoints cp = CriticalPointsG(clearance, lambda, cfg);
  if (cp.r1 <= 1.0) return {cp.r1, Branch::kLeft};
  if (cp.r3 && *cp.r3 <= 1.0 &&
      UtilityG(*cp.r3, clearance, lambda, cfg) <=
          UtilityG(1.0, clearance, lambda, cfg)) {
    return {*cp.r3, Branch::kRight};
  }
  return {1.0, Branch::kBoundary};
}

Response BetaGBranch(double a, double lambda, const GameConfig& cfg) {
  return BestResponseGreedy(OneOnOneClearance(a, cfg), lambda, cfg);
}

double BetaG(double a, double lambda, const GameConfig& cfg) {
  return BetaGBranch(a, lambda, cfg).value;
}

Response BetaABranch(double g, double rho, const GameConfig& cfg) {
  const FairBaselines fb = ComputeFairBaselines(cfg);
  const double gc = g * fb.c;
  const double den = gc * gc + rho;
  if (!(den > 0.0)) {
    throw DegenerateInput("vigilante indifferent: g = 0 and rho = 0");
  }
  const double v = (gc * gc - gc * fb.phi0 + rho * cfg.fair_prob()) / den;
  if (v <= 0.0) return {0.0, Branch::kBoundary};
  if (v >= 1.0) return {1.0, Branch::kBoundary};
  return {v, Branch::kLeft};
}

double BetaA(double g, double rho, const GameConfig& cfg) {
  return BetaABranch(g, rho, cfg).value;
}

double JumpGap(double a, double lambda, const GameConfig& cfg) {
  const double x = OneOnOneClearance(a, cfg);
  const CriticalPoints cp = CriticalPointsG(x, lambda, cfg);
  if (!cp.r3 || *cp.r3 > 1.0) return kNaN;
  return UtilityG(1.0, x, lambda, cfg) - UtilityG(*cp.r3, x, lambda, cfg);
}

Discontinuity FindDiscontinuity(double lambda, const GameConfig& cfg,
                                std::size_t scan_points) {
  Discontinuity out;
  if (!(lambda > 0.0) || scan_points < 2) return out;
  const double lo = cfg.fair_prob();
  const double hi = 1.0 - 1e-9;
  const auto sign = [&](double a) { return JumpSign(a, lambda, cfg); };
  const std::vector<double> values =
      kernels::EvaluateGrid(sign, lo, hi, scan_points);
  for (const auto& [i, j] : kernels::SignChanges(values)) {
    const double root =
        Bisect(kernels::GridNode(lo, hi, scan_points, i),
               kernels::GridNode(lo, hi, scan_points, j), lambda, cfg);
    out.roots.push_back(root);
    const double gap = JumpGap(root, lambda, cfg);
    out.residuals.push_back(std::isnan(gap) ? kNaN : std::abs(gap));
  }
  return out;
}

BestResponseCurve SampleBetaG(double lambda, const GameConfig& cfg,
                              std::size_t n, double a_max) {
  BestResponseCurve curve;
  curve.samples = kernels::MapIndices(n, [&](std::size_t i) {
    const double a = kernels::GridNode(0.0, a_max, n, i);
    const Response r = BetaGBranch(a, lambda, cfg);
    return CurveSample{a, r.value, r.branch};
  });
  const Discontinuity d = FindDiscontinuity(lambda, cfg);
  curve.a_plus = d.a_plus();
  curve.multi_jump = d.multi_jump();
  if (curve.a_plus) {
    const double r3 = BetaG(*curve.a_plus, lambda, cfg);
    curve.jump_size = std::abs(1.0 - r3);
  }
  return curve;
}

BestResponseCurve SampleBetaA(double rho, const GameConfig& cfg,
                              std::size_t n) {
  BestResponseCurve curve;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = kernels::GridNode(0.0, 1.0, n, i);
    if (g == 0.0 && rho == 0.0) continue;
    const Response r = BetaABranch(g, rho, cfg);
    curve.samples.push_back({g, r.value, r.branch});
  }
  return curve;
}

}  // namespace vigilance
