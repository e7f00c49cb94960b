#include "vigilance/flow.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "vigilance/best_response.hpp"
#include "vigilance/equilibrium.hpp"
#include "vigilance/errors.hpp"
#include "vigilance/kernels.hpp"

namespace vigilance {
namespace {

void RequireOneOnOne(const GameConfig& cfg) {
  cfg.Validate();
  if (cfg.n_greedy != 1 || cfg.n_vigilante != 1) {
    throw ConfigError("m_greedy", "closed-form flow needs M = V = 1");
  }
}

// dU_a/da for the one-vs-one game with true greedy throughput.
double DUtilityA(Point2 x, const GameConfig& cfg, const FairBaselines& fb) {
  const double gc = x.g * fb.c;
  return -2.0 * gc * (gc * (1.0 - x.a) - fb.phi0) +
         2.0 * cfg.rho[0] * (x.a - cfg.fair_prob());
}

Point2 Clamp(Point2 x) {
  return {std::clamp(x.g, 0.0, 1.0), std::clamp(x.a, 0.0, 1.0)};
}

Point2 Axpy(Point2 x, double h, Velocity v) {
  return {x.g + h * v.dg, x.a + h * v.da};
}

Point2 Rk4Step(Point2 x, double dt, const GameConfig& cfg) {
  const Velocity k1 = GradientField(x, cfg);
  const Velocity k2 = GradientField(Axpy(x, 0.5 * dt, k1), cfg);
  const Velocity k3 = GradientField(Axpy(x, 0.5 * dt, k2), cfg);
  const Velocity k4 = GradientField(Axpy(x, dt, k3), cfg);
  return Clamp({x.g + dt / 6.0 * (k1.dg + 2.0 * k2.dg + 2.0 * k3.dg + k4.dg),
                x.a + dt / 6.0 * (k1.da + 2.0 * k2.da + 2.0 * k3.da + k4.da)});
}

struct NewtonResult {
  bool converged = false;
  Point2 point{0.0, 0.0};
};

NewtonResult Newton(Point2 x, const GameConfig& cfg,
                    const FixedPointOptions& opts) {
  for (int it = 0; it < opts.newton_max_iter; ++it) {
    const Velocity v = GradientField(x, cfg);
    const Matrix2 j = FieldJacobian(x, cfg);
    Eigen::Matrix2d jm;
    jm << j[0][0], j[0][1], j[1][0], j[1][1];
    if (std::abs(jm.determinant()) < 1e-300) return {};
    const Eigen::Vector2d step =
        jm.partialPivLu().solve(Eigen::Vector2d(v.dg, v.da));
    x = {x.g - step(0), x.a - step(1)};
    if (!std::isfinite(x.g) || !std::isfinite(x.a)) return {};
    if (x.g < -0.5 || x.g > 1.5 || x.a < -0.5 || x.a > 1.5) return {};
    if (step.cwiseAbs().maxCoeff() < opts.newton_tol) {
      constexpr double kSlack = 1e-9;
      if (x.g < -kSlack || x.g > 1.0 + kSlack || x.a < -kSlack ||
          x.a > 1.0 + kSlack) {
        return {};
      }
      return {true, Clamp(x)};
    }
  }
  return {};
}

double MaxNorm(Point2 x, Point2 y) {
  return std::max(std::abs(x.g - y.g), std::abs(x.a - y.a));
}

}  // namespace

Velocity GradientField(Point2 x, const GameConfig& cfg) {
  const FairBaselines fb = ComputeFairBaselines(cfg);
  const double clearance = (1.0 - x.a) * fb.c;
  return {-DUtilityG(x.g, clearance, cfg.lambda[0], cfg),
          -DUtilityA(x, cfg, fb)};
}

Matrix2 FieldJacobian(Point2 x, const GameConfig& cfg) {
  const FairBaselines fb = ComputeFairBaselines(cfg);
  const double lambda = cfg.lambda[0];
  const double c = fb.c;
  const double clearance = (1.0 - x.a) * c;
  const double e = x.g * clearance - fb.theta0;
  const double u = x.g - cfg.fair_prob();
  const double w = 1.0 + lambda * u * u;

  const double ug_gg = D2UtilityG(x.g, clearance, lambda, cfg);
  // d/da of 2 X e w + 2 lambda u e^2, with dX/da = -c and de/da = -g c.
  const double ug_ga = -2.0 * c * e * w - 2.0 * clearance * x.g * c * w -
                       4.0 * lambda * u * e * x.g * c;
  const double ua_aa = 2.0 * x.g * x.g * c * c + 2.0 * cfg.rho[0];
  const double ua_ag =
      -2.0 * c * (x.g * (1.0 - x.a) * c - fb.phi0) -
      2.0 * x.g * c * (1.0 - x.a) * c;
  return {{{-ug_gg, -ug_ga}, {-ua_ag, -ua_aa}}};
}

std::array<std::complex<double>, 2> Eigenvalues(const Matrix2& m) {
  Eigen::Matrix2d em;
  em << m[0][0], m[0][1], m[1][0], m[1][1];
  const Eigen::EigenSolver<Eigen::Matrix2d> solver(em, false);
  std::array<std::complex<double>, 2> ev{solver.eigenvalues()(0),
                                         solver.eigenvalues()(1)};
  std::sort(ev.begin(), ev.end(), [](const auto& l, const auto& r) {
    return l.real() < r.real() || (l.real() == r.real() && l.imag() < r.imag());
  });
  return ev;
}

FlowPath Integrate(Point2 init, double dt, int steps, const GameConfig& cfg) {
  if (!(dt > 0.0)) throw ConfigError("dt", "time step must be positive");
  if (steps < 0) throw ConfigError("steps", "need steps >= 0");
  if (!(init.g >= 0.0 && init.g <= 1.0 && init.a >= 0.0 && init.a <= 1.0)) {
    throw ConfigError("init_g", "initial point outside [0, 1]^2");
  }
  FlowPath path;
  path.dt = dt;
  path.states.reserve(static_cast<std::size_t>(steps) + 1);
  path.states.push_back(init);
  path.touched_deadlock = init.g >= 1.0;
  Point2 x = init;
  for (int k = 0; k < steps; ++k) {
    x = Rk4Step(x, dt, cfg);
    path.states.push_back(x);
    if (x.g >= 1.0) path.touched_deadlock = true;
  }
  return path;
}

std::vector<FixedPointReport> FindFixedPoints(const GameConfig& cfg,
                                              const FixedPointOptions& opts) {
  RequireOneOnOne(cfg);
  const int n = opts.seed_grid;
  const auto solve = [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / n;
    const int j = static_cast<int>(idx) % n;
    return Newton({(i + 0.5) / n, (j + 0.5) / n}, cfg, opts);
  };
  const std::size_t count = static_cast<std::size_t>(n) * n;
  const std::vector<NewtonResult> results =
      opts.parallel ? kernels::MapIndices(count, solve)
                    : kernels::MapIndicesSerial(count, solve);

  std::vector<Point2> unique;
  for (const NewtonResult& r : results) {
    if (!r.converged) continue;
    const bool seen = std::any_of(unique.begin(), unique.end(), [&](Point2 u) {
      return MaxNorm(u, r.point) < opts.dedup_tol;
    });
    if (!seen) unique.push_back(r.point);
  }
  if (unique.empty()) {
    throw NumericalFailure("no Newton seed converged to a stationary point");
  }
  std::sort(unique.begin(), unique.end(), [](Point2 l, Point2 r) {
    return l.g < r.g || (l.g == r.g && l.a < r.a);
  });

  std::vector<Point2> basin_inits;
  for (int i = 0; i < opts.basin_grid; ++i) {
    for (int j = 0; j < opts.basin_grid; ++j) {
      const double scale = opts.basin_grid > 1 ? opts.basin_grid - 1.0 : 1.0;
      basin_inits.push_back({i / scale, j / scale});
    }
  }
  const auto run_basin = [&](std::size_t k) {
    return Integrate(basin_inits[k], opts.basin_dt, opts.basin_steps, cfg);
  };
  const std::vector<FlowPath> paths =
      opts.parallel ? kernels::MapIndices(basin_inits.size(), run_basin)
                    : kernels::MapIndicesSerial(basin_inits.size(), run_basin);

  std::vector<FixedPointReport> reports;
  for (Point2 p : unique) {
    FixedPointReport rep;
    rep.point = p;
    rep.eigenvalues = Eigenvalues(FieldJacobian(p, cfg));
    rep.stable = rep.eigenvalues[0].real() < 0.0 &&
                 rep.eigenvalues[1].real() < 0.0;
    rep.is_nash = VerifyNash(p.g, p.a, cfg);
    for (std::size_t k = 0; k < paths.size(); ++k) {
      const bool reached = MaxNorm(paths[k].states.back(), p) < 1e-4;
      rep.basin.push_back({basin_inits[k], reached, paths[k].touched_deadlock});
      if (reached) ++rep.basin_reached;
      if (paths[k].touched_deadlock) ++rep.basin_deadlock;
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

std::vector<FieldSample> SampleFieldSerial(int resolution,
                                           const GameConfig& cfg) {
  if (resolution < 2) throw ConfigError("grid", "need resolution >= 2");
  const auto n = static_cast<std::size_t>(resolution);
  return kernels::MapIndicesSerial(n * n, [&](std::size_t idx) {
    const double g = kernels::GridNode(0.0, 1.0, n, idx / n);
    const double a = kernels::GridNode(0.0, 1.0, n, idx % n);
    const Velocity v = GradientField({g, a}, cfg);
    return FieldSample{g, a, v.dg, v.da};
  });
}

std::vector<FieldSample> SampleField(int resolution, const GameConfig& cfg) {
  if (resolution < 2) throw ConfigError("grid", "need resolution >= 2");
  const auto n = static_cast<std::size_t>(resolution);
  return kernels::MapIndices(n * n, [&](std::size_t idx) {
    const double g = kernels::GridNode(0.0, 1.0, n, idx / n);
    const double a = kernels::GridNode(0.0, 1.0, n, idx % n);
    const Velocity v = GradientField({g, a}, cfg);
    return FieldSample{g, a, v.dg, v.da};
  });
}

PhasePortrait ComputePhasePortrait(int resolution, const GameConfig& cfg,
                                   const std::vector<Point2>& seeds,
                                   double dt, int steps) {
  RequireOneOnOne(cfg);
  PhasePortrait out;
  out.field = SampleField(resolution, cfg);
  out.streamlines = kernels::MapIndices(seeds.size(), [&](std::size_t k) {
    return Integrate(seeds[k], dt, steps, cfg);
  });
  return out;
}

namespace {

double OwnCostGreedy(const StrategyProfile& p, const GameConfig& cfg, int i) {
  return UtilityG(p.g[i], Clearance(p, cfg, i), cfg.lambda[i], cfg);
}

double OwnCostVigilante(const StrategyProfile& p, const GameConfig& cfg,
                        int j) {
  const double g_hat = EstimateG(PhiMulti(p, cfg, j), p.a[j], cfg);
  return UtilityA(Theta(g_hat, p.a[j], cfg), p.a[j], cfg.rho[j], cfg);
}

}  // namespace

ProfileVelocity GradientFieldMulti(const StrategyProfile& p,
                                   const GameConfig& cfg, double h) {
  ProfileVelocity v{std::vector<double>(p.g.size()),
                    std::vector<double>(p.a.size())};
  for (int i = 0; i < cfg.n_greedy; ++i) {
    StrategyProfile up = p, dn = p;
    up.g[i] += h;
    dn.g[i] -= h;
    v.dg[i] = -(OwnCostGreedy(up, cfg, i) - OwnCostGreedy(dn, cfg, i)) /
              (2.0 * h);
  }
  for (int j = 0; j < cfg.n_vigilante; ++j) {
    StrategyProfile up = p, dn = p;
    up.a[j] += h;
    dn.a[j] -= h;
    v.da[j] = -(OwnCostVigilante(up, cfg, j) -
                OwnCostVigilante(dn, cfg, j)) /
              (2.0 * h);
  }
  return v;
}

std::vector<std::vector<double>> JacobianMulti(const StrategyProfile& p,
                                               const GameConfig& cfg,
                                               double h) {
  const std::size_t m = p.g.size();
  const std::size_t dim = m + p.a.size();
  const auto flat = [&](const StrategyProfile& s) {
    const ProfileVelocity v = GradientFieldMulti(s, cfg);
    std::vector<double> out(v.dg);
    out.insert(out.end(), v.da.begin(), v.da.end());
    return out;
  };
  std::vector<std::vector<double>> jac(dim, std::vector<double>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    StrategyProfile up = p, dn = p;
    double& cu = col < m ? up.g[col] : up.a[col - m];
    double& cd = col < m ? dn.g[col] : dn.a[col - m];
    cu += h;
    cd -= h;
    const std::vector<double> fu = flat(up);
    const std::vector<double> fd = flat(dn);
    for (std::size_t row = 0; row < dim; ++row) {
      jac[row][col] = (fu[row] - fd[row]) / (2.0 * h);
    }
  }
  return jac;
}

}  // namespace vigilance
