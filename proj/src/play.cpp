#include "vigilance/play.hpp"

#include <algorithm>
#include <cmath>

#include "vigilance/best_response.hpp"
#include "vigilance/channel.hpp"
#include "vigilance/errors.hpp"

namespace vigilance {
namespace {

constexpr int kConvergedRun = 10;

double MaxNormChange(const StrategyProfile& x, const StrategyProfile& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.g.size(); ++i) {
    d = std::max(d, std::abs(x.g[i] - y.g[i]));
  }
  for (std::size_t j = 0; j < x.a.size(); ++j) {
    d = std::max(d, std::abs(x.a[j] - y.a[j]));
  }
  return d;
}

struct Band {
  std::vector<double> lo;
  std::vector<double> hi;
  double diameter = 0.0;
};

// Per-coordinate extent of states[begin, end).
Band WindowBand(const std::vector<StrategyProfile>& states, std::size_t begin,
                std::size_t end) {
  const std::size_t m = states[begin].g.size();
  const std::size_t dim = m + states[begin].a.size();
  Band b{std::vector<double>(dim, 1.0), std::vector<double>(dim, 0.0), 0.0};
  for (std::size_t t = begin; t < end; ++t) {
    const StrategyProfile& s = states[t];
    for (std::size_t k = 0; k < dim; ++k) {
      const double v = k < m ? s.g[k] : s.a[k - m];
      b.lo[k] = std::min(b.lo[k], v);
      b.hi[k] = std::max(b.hi[k], v);
    }
  }
  for (std::size_t k = 0; k < dim; ++k) {
    b.diameter = std::max(b.diameter, b.hi[k] - b.lo[k]);
  }
  return b;
}

bool SimilarDiameter(double x, double y) {
  return std::abs(x - y) <= 0.1 * std::max(x, y);
}

}  // namespace

void PlayParams::Validate() const {
  if (!(epsilon_g > 0.0 && epsilon_g <= 1.0)) {
    throw ConfigError("epsilon_g", "step fraction must lie in (0, 1]");
  }
  if (!(epsilon_a > 0.0 && epsilon_a <= 1.0)) {
    throw ConfigError("epsilon_a", "step fraction must lie in (0, 1]");
  }
  if (t_max < 1) throw ConfigError("t_max", "need t_max >= 1");
  if (!(conv_tol > 0.0)) throw ConfigError("conv_tol", "must be positive");
  if (window < 2) throw ConfigError("window", "need window >= 2");
  if (observation_slots == 0) {
    throw ConfigError("window", "observation window must be positive");
  }
}

double ExactObserver::VigilanteThroughput(const StrategyProfile& p,
                                          const GameConfig& cfg, int j) {
  return PhiMulti(p, cfg, j);
}

ChannelObserver::ChannelObserver(std::uint64_t seed, std::size_t window_slots)
    : seeds_(seed), window_slots_(window_slots) {}

double ChannelObserver::VigilanteThroughput(const StrategyProfile& p,
                                            const GameConfig& cfg, int j) {
  const ChannelTrace trace =
      Simulate(p, cfg, window_slots_, seeds_(), Recording::kSummary);
  return EmpiricalThroughput(trace, cfg.n_greedy + j);
}

std::unique_ptr<ThroughputObserver> MakeObserver(const PlayParams& params) {
  if (params.observation == Observation::kChannel) {
    return std::make_unique<ChannelObserver>(params.seed,
                                             params.observation_slots);
  }
  return std::make_unique<ExactObserver>();
}

StrategyProfile Step(const StrategyProfile& p, const GameConfig& cfg,
                     const PlayParams& params, ThroughputObserver& observer) {
  StrategyProfile next = p;
  for (int i = 0; i < cfg.n_greedy; ++i) {
    const double x = Clearance(p, cfg, i);
    const double target = BestResponseGreedy(x, cfg.lambda[i], cfg).value;
    next.g[i] = p.g[i] + params.epsilon_g * (target - p.g[i]);
  }
  for (int j = 0; j < cfg.n_vigilante; ++j) {
    const double phi_hat = observer.VigilanteThroughput(p, cfg, j);
    const double g_hat = EstimateG(phi_hat, p.a[j], cfg);
    const double target = BetaA(g_hat, cfg.rho[j], cfg);
    next.a[j] = p.a[j] + params.epsilon_a * (target - p.a[j]);
  }
  return next;
}

StrategyProfile Step(const StrategyProfile& p, const GameConfig& cfg,
                     const PlayParams& params) {
  ExactObserver exact;
  return Step(p, cfg, params, exact);
}

const char* VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kConverged:
      return "converged";
    case Verdict::kOscillating:
      return "oscillating";
    case Verdict::kMaxedOut:
      return "maxed_out";
  }
  return "unknown";
}

double Trajectory::TrailingMeanG(int i, std::size_t last) const {
  last = std::min(last, states.size());
  double sum = 0.0;
  for (std::size_t t = states.size() - last; t < states.size(); ++t) {
    sum += states[t].g.at(i);
  }
  return last == 0 ? 0.0 : sum / static_cast<double>(last);
}

Trajectory Run(const GameConfig& cfg, const PlayParams& params) {
  cfg.Validate();
  params.Validate();
  StrategyProfile state = params.init ? *params.init
                                      : StrategyProfile::Fair(cfg);
  state.Validate(cfg);

  auto observer = MakeObserver(params);
  Trajectory traj;
  traj.states.reserve(static_cast<std::size_t>(params.t_max) + 1);
  traj.states.push_back(state);

  const std::size_t w = static_cast<std::size_t>(params.window);
  int quiet = 0;
  for (int t = 1; t <= params.t_max; ++t) {
    StrategyProfile next = Step(state, cfg, params, *observer);
    quiet = MaxNormChange(next, state) < params.conv_tol ? quiet + 1 : 0;
    state = std::move(next);
    traj.states.push_back(state);

    if (quiet >= kConvergedRun) {
      traj.verdict = Verdict::kConverged;
      traj.limit = state;
      return traj;
    }
    const std::size_t n = traj.states.size();
    if (n % w == 0 && n >= 3 * w) {
      const Band b0 = WindowBand(traj.states, n - 3 * w, n - 2 * w);
      const Band b1 = WindowBand(traj.states, n - 2 * w, n - w);
      const Band b2 = WindowBand(traj.states, n - w, n);
      if (b2.diameter > 10.0 * params.conv_tol &&
          SimilarDiameter(b0.diameter, b1.diameter) &&
          SimilarDiameter(b1.diameter, b2.diameter)) {
        traj.verdict = Verdict::kOscillating;
        traj.amplitude = b2.diameter;
        traj.window = params.window;
        traj.band_lo = b2.lo;
        traj.band_hi = b2.hi;
        return traj;
      }
    }
  }
  traj.verdict = Verdict::kMaxedOut;
  return traj;
}

}  // namespace vigilance
