#pragma once

// Fictitious play: every player moves a fraction epsilon of the way towards
// its best response to the current profile, all players simultaneously.
//
//   g_i <- g_i + eps_g (beta_g(X_i) - g_i)
//   a_j <- a_j + eps_a (beta_a(g_hat_j) - a_j)
//
// Greedy i responds to its clearance X_i. Vigilante j assumes a single
// greedy player and feeds beta_a with the estimate g_hat_j inverted from its
// own observed throughput, which overestimates g once other vigilantes or
// greedy players are active.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "vigilance/model.hpp"

namespace vigilance {

enum class Observation { kExact, kChannel };

struct PlayParams {
  double epsilon_g = 0.1;
  double epsilon_a = 0.1;
  int t_max = 20000;
  double conv_tol = 1e-9;
  int window = 1000;  // oscillation-detection window length (steps)
  std::optional<StrategyProfile> init;  // fair profile when absent
  Observation observation = Observation::kExact;
  std::size_t observation_slots = 10000;  // channel slots per estimate
  std::uint64_t seed = 1;

  /// Throws ConfigError for eps outside (0, 1], t_max < 1, window < 2,
  /// conv_tol <= 0 or zero observation slots.
  void Validate() const;
};

/// Source of a vigilante's own throughput measurement.
class ThroughputObserver {
 public:
  virtual ~ThroughputObserver() = default;
  virtual double VigilanteThroughput(const StrategyProfile& p,
                                     const GameConfig& cfg, int j) = 0;
};

/// Noise-free: the analytic throughput of the current profile.
class ExactObserver final : public ThroughputObserver {
 public:
  double VigilanteThroughput(const StrategyProfile& p, const GameConfig& cfg,
                             int j) override;
};

/// Empirical throughput over a window of simulated channel slots. Each call
/// consumes a fresh sub-seed drawn from a generator seeded once.
class ChannelObserver final : public ThroughputObserver {
 public:
  ChannelObserver(std::uint64_t seed, std::size_t window_slots);
  double VigilanteThroughput(const StrategyProfile& p, const GameConfig& cfg,
                             int j) override;

 private:
  std::mt19937_64 seeds_;
  std::size_t window_slots_;
};

std::unique_ptr<ThroughputObserver> MakeObserver(const PlayParams& params);

/// One simultaneous update. Propagates DegenerateInput from the best-response
/// maps (e.g. a silent vigilante cannot estimate g).
StrategyProfile Step(const StrategyProfile& p, const GameConfig& cfg,
                     const PlayParams& params, ThroughputObserver& observer);
StrategyProfile Step(const StrategyProfile& p, const GameConfig& cfg,
                     const PlayParams& params);

enum class Verdict { kConverged, kOscillating, kMaxedOut };
const char* VerdictName(Verdict v);

struct Trajectory {
  std::vector<StrategyProfile> states;  // states[t], t = 0..T
  Verdict verdict = Verdict::kMaxedOut;
  std::optional<StrategyProfile> limit;  // Converged only
  // Oscillating only: max-norm diameter of the trailing window and the
  // per-coordinate band (greedy coordinates first) it spans.
  double amplitude = 0.0;
  int window = 0;
  std::vector<double> band_lo;
  std::vector<double> band_hi;

  /// Mean of greedy coordinate i over the last `last` states.
  double TrailingMeanG(int i, std::size_t last) const;
};

/// Iterates Step until the max-norm change stays below conv_tol for 10
/// consecutive steps (Converged), three consecutive windows show a band of
/// stable diameter (within 10%) exceeding 10 conv_tol (Oscillating), or
/// t_max steps pass (MaxedOut).
Trajectory Run(const GameConfig& cfg, const PlayParams& params);

}  // namespace vigilance
