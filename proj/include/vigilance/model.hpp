#pragma once

// Game quantities for the greedy / vigilante shared-resource model.
//
// N players share a slotted resource; a slot succeeds for player i iff i is
// the only one to access it. M greedy players choose g_i, V vigilante players
// choose a_j, and the remaining N - M - V cooperative players access with the
// fair probability 1/N. Both utilities are costs to be minimized.

#include <cstddef>
#include <span>
#include <vector>

namespace vigilance {

/// Exponent used in the vigilante's fair-throughput target phi0.
///   kAsPrinted: phi0 = (1/N)(1 - 1/N)^N
///   kFair:      phi0 = (1/N)(1 - 1/N)^(N-1)   (the per-player fair rate)
/// kFair is the default: it is the convention under which the gradient-flow
/// fixed points (0.203, 0.297) and (0.175, 0.429) are reproduced.
enum class Phi0Convention { kAsPrinted, kFair };

struct GameConfig {
  int n_total = 10;
  int n_greedy = 1;
  int n_vigilante = 1;
  std::vector<double> lambda{10.0};  // one per greedy player
  std::vector<double> rho{0.01};     // one per vigilante player
  Phi0Convention phi0_convention = Phi0Convention::kFair;

  /// One greedy, one vigilante and N - 2 cooperative players.
  static GameConfig OneOnOne(int n, double lambda, double rho,
                             Phi0Convention conv = Phi0Convention::kFair);

  int n_cooperative() const { return n_total - n_greedy - n_vigilante; }
  double fair_prob() const { return 1.0 / n_total; }

  /// Throws ConfigError on N < 3, M < 1, V < 1, N < M + V + 1, mismatched
  /// penalty-vector lengths, or negative / non-finite penalties.
  void Validate() const;
};

struct StrategyProfile {
  std::vector<double> g;  // greedy access probabilities
  std::vector<double> a;  // vigilante access probabilities
  double q_coop = 0.1;    // always 1/N

  /// Every player at the fair probability 1/N.
  static StrategyProfile Fair(const GameConfig& cfg);
  static StrategyProfile Make(const GameConfig& cfg, std::vector<double> g,
                              std::vector<double> a);

  /// Throws ConfigError if sizes disagree with cfg or any entry is outside
  /// [0, 1] or q_coop != 1/N.
  void Validate(const GameConfig& cfg) const;

  /// Full access vector q_1..q_N ordered greedy, vigilante, cooperative.
  std::vector<double> FullVector(const GameConfig& cfg) const;
};

struct FairBaselines {
  double theta0;  // greedy target throughput (1 - 1/N)^(N-1)
  double phi0;    // vigilante fair throughput, see Phi0Convention
  double c;       // (1 - 1/N)^(N-2)
};

/// q_i * prod_{j != i} (1 - q_j). Throws std::out_of_range on a bad index.
double AccessProb(std::span<const double> q, std::size_t i);

FairBaselines ComputeFairBaselines(const GameConfig& cfg);

// Single greedy / single vigilante throughputs.
double Theta(double g, double a, const GameConfig& cfg);
double Phi(double g, double a, const GameConfig& cfg);
double CoopThroughput(double g, double a, const GameConfig& cfg);

/// Probability that every player other than greedy i stays silent:
///   X_i = prod_j (1 - a_j) * prod_{k != i} (1 - g_k) * (1 - 1/N)^(N-M-V)
/// so that greedy i's throughput is g_i * X_i.
double Clearance(const StrategyProfile& p, const GameConfig& cfg, int i);

/// Same factor seen by vigilante j, so that its throughput is a_j * Y_j.
double VigilanteClearance(const StrategyProfile& p, const GameConfig& cfg,
                          int j);

double ThetaMulti(const StrategyProfile& p, const GameConfig& cfg, int i);
double PhiMulti(const StrategyProfile& p, const GameConfig& cfg, int j);
/// Throughput of one cooperative player in the multi-player profile.
double CoopThroughputMulti(const StrategyProfile& p, const GameConfig& cfg);

/// Greedy cost (g X - theta0)^2 (1 + lambda (g - 1/N)^2).
double UtilityG(double g, double clearance, double lambda,
                const GameConfig& cfg);

/// Vigilante cost (theta_val - phi0)^2 + rho (a - 1/N)^2. theta_val may be
/// the true greedy throughput or the vigilante's believed one.
double UtilityA(double theta_val, double a, double rho, const GameConfig& cfg);

/// Vigilante's single-greedy estimate of g from its own observed
/// throughput, clamped to [0, 1]. Throws DegenerateInput for a == 0.
double EstimateG(double phi_hat, double a, const GameConfig& cfg);

}  // namespace vigilance
