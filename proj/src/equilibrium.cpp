#include "vigilance/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "vigilance/best_response.hpp"
#include "vigilance/errors.hpp"
#include "vigilance/kernels.hpp"

namespace vigilance {
namespace {

constexpr double kUpper = 1.0 - 1e-9;
constexpr double kJumpEps = 1e-12;

struct Composed {
  const GameConfig& cfg;
  double lambda;
  double rho;

  double operator()(double a) const {
    return BetaA(BetaG(a, lambda, cfg), rho, cfg) - a;
  }
};

bool Opposite(double l, double r) {
  return (l < 0.0 && r >= 0.0) || (l > 0.0 && r <= 0.0);
}

// Root of a continuous piece of `d` on [lo, hi] with a sign change.
double BisectPiece(const Composed& d, double lo, double hi) {
  double dlo = d(lo);
  if (d(hi) == 0.0) return hi;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double dm = d(mid);
    if (dm == 0.0) return mid;
    if ((dm < 0.0) == (dlo < 0.0)) {
      lo = mid;
      dlo = dm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

NashVerdict FindNash(const GameConfig& cfg, std::size_t scan_points) {
  cfg.Validate();
  if (cfg.n_greedy != 1 || cfg.n_vigilante != 1) {
    throw ConfigError("m_greedy",
                      "analytic equilibrium search needs M = V = 1");
  }
  const double lambda = cfg.lambda[0];
  const double rho = cfg.rho[0];
  const Composed d{cfg, lambda, rho};
  const std::vector<double> jumps =
      FindDiscontinuity(lambda, cfg).roots;

  const std::vector<double> values =
      kernels::EvaluateGrid(d, 0.0, kUpper, scan_points);

  NashVerdict verdict;
  const auto add_root = [&](double a) {
    verdict.all_points.push_back({BetaG(a, lambda, cfg), a});
  };

  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double lo = kernels::GridNode(0.0, kUpper, scan_points, i);
    const double hi = kernels::GridNode(0.0, kUpper, scan_points, i + 1);
    // Discontinuities of beta_g inside this cell split it into continuous
    // pieces; d is evaluated just either side of each one.
    std::vector<double> inner;
    for (double j : jumps) {
      if (j > lo && j <= hi) inner.push_back(j);
    }
    if (inner.empty()) {
      if (Opposite(values[i], values[i + 1])) {
        add_root(BisectPiece(d, lo, hi));
      }
      continue;
    }
    double piece_lo = lo;
    double v_lo = values[i];
    for (double j : inner) {
      const double left_end = std::max(piece_lo, j - kJumpEps);
      const double right_start = std::min(hi, j + kJumpEps);
      const double v_left = d(left_end);
      if (Opposite(v_lo, v_left)) add_root(BisectPiece(d, piece_lo, left_end));
      const double v_right = d(right_start);
      if (Opposite(v_left, v_right) && !verdict.gap_lo) {
        verdict.gap_lo = lo;
        verdict.gap_hi = hi;
      }
      piece_lo = right_start;
      v_lo = v_right;
    }
    if (Opposite(v_lo, values[i + 1])) add_root(BisectPiece(d, piece_lo, hi));
  }

  if (!verdict.all_points.empty()) {
    verdict.exists = true;
    verdict.point = verdict.all_points.front();
    verdict.gap_lo.reset();
    verdict.gap_hi.reset();
    const NashPoint& p = *verdict.point;
    verdict.residual_g = std::abs(p.g - BetaG(p.a, lambda, cfg));
    verdict.residual_a = std::abs(p.a - BetaA(p.g, rho, cfg));
  }
  return verdict;
}

NashCheck CheckNash(double g, double a, const GameConfig& cfg,
                    double tolerance, std::size_t resolution) {
  const double lambda = cfg.lambda.at(0);
  const double rho = cfg.rho.at(0);
  const double x = (1.0 - a) * ComputeFairBaselines(cfg).c;

  const auto ug = [&](double gg) { return UtilityG(gg, x, lambda, cfg); };
  const auto ua = [&](double aa) {
    return UtilityA(Theta(g, aa, cfg), aa, rho, cfg);
  };
  const double best_g = ug(OracleArgmin(ug, resolution));
  const double best_a = ua(OracleArgmin(ua, resolution));

  NashCheck check;
  check.gap_g = ug(g) - best_g;
  check.gap_a = ua(a) - best_a;
  check.ok = check.gap_g <= tolerance && check.gap_a <= tolerance;
  return check;
}

}  // namespace vigilance
