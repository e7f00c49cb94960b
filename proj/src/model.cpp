#include "vigilance/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vigilance/errors.hpp"

namespace vigilance {
namespace {

double Keep(double n, int exponent) {
  return std::pow(1.0 - 1.0 / n, exponent);
}

void CheckProbability(double v, const std::string& field) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ConfigError(field, "probability " + std::to_string(v) +
                                 " outside [0, 1]");
  }
}

}  // namespace

GameConfig GameConfig::OneOnOne(int n, double lambda, double rho,
                                Phi0Convention conv) {
  GameConfig cfg;
  cfg.n_total = n;
  cfg.n_greedy = 1;
  cfg.n_vigilante = 1;
  cfg.lambda = {lambda};
  cfg.rho = {rho};
  cfg.phi0_convention = conv;
  return cfg;
}

void GameConfig::Validate() const {
  if (n_total < 3) throw ConfigError("n", "need N >= 3");
  if (n_greedy < 1) throw ConfigError("m_greedy", "need at least one greedy");
  if (n_vigilante < 1) {
    throw ConfigError("v_vigilante", "need at least one vigilante");
  }
  if (n_total < n_greedy + n_vigilante + 1) {
    throw ConfigError("n", "need at least one cooperative player");
  }
  if (static_cast<int>(lambda.size()) != n_greedy) {
    throw ConfigError("lambda", "expected " + std::to_string(n_greedy) +
                                    " values, got " +
                                    std::to_string(lambda.size()));
  }
  if (static_cast<int>(rho.size()) != n_vigilante) {
    throw ConfigError("rho", "expected " + std::to_string(n_vigilante) +
                                 " values, got " + std::to_string(rho.size()));
  }
  for (double l : lambda) {
    if (!(l >= 0.0) || !std::isfinite(l)) {
      throw ConfigError("lambda", "penalty weights must be finite and >= 0");
    }
  }
  for (double r : rho) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw ConfigError("rho", "penalty weights must be finite and >= 0");
    }
  }
}

StrategyProfile StrategyProfile::Fair(const GameConfig& cfg) {
  const double q = cfg.fair_prob();
  return {std::vector<double>(cfg.n_greedy, q),
          std::vector<double>(cfg.n_vigilante, q), q};
}

StrategyProfile StrategyProfile::Make(const GameConfig& cfg,
                                      std::vector<double> g,
                                      std::vector<double> a) {
  StrategyProfile p{std::move(g), std::move(a), cfg.fair_prob()};
  p.Validate(cfg);
  return p;
}

void StrategyProfile::Validate(const GameConfig& cfg) const {
  if (static_cast<int>(g.size()) != cfg.n_greedy) {
    throw ConfigError("init_g", "expected " + std::to_string(cfg.n_greedy) +
                                    " greedy probabilities");
  }
  if (static_cast<int>(a.size()) != cfg.n_vigilante) {
    throw ConfigError("init_a", "expected " +
                                    std::to_string(cfg.n_vigilante) +
                                    " vigilante probabilities");
  }
  for (double v : g) CheckProbability(v, "init_g");
  for (double v : a) CheckProbability(v, "init_a");
  if (q_coop != cfg.fair_prob()) {
    throw ConfigError("q_coop", "cooperative probability must be 1/N");
  }
}

std::vector<double> StrategyProfile::FullVector(const GameConfig& cfg) const {
  std::vector<double> q;
  q.reserve(cfg.n_total);
  q.insert(q.end(), g.begin(), g.end());
  q.insert(q.end(), a.begin(), a.end());
  q.resize(cfg.n_total, q_coop);
  return q;
}

double AccessProb(std::span<const double> q, std::size_t i) {
  if (i >= q.size()) throw std::out_of_range("player index out of range");
  double p = q[i];
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (j != i) p *= 1.0 - q[j];
  }
  return p;
}

FairBaselines ComputeFairBaselines(const GameConfig& cfg) {
  const double n = cfg.n_total;
  const int phi0_exp = cfg.phi0_convention == Phi0Convention::kFair
                           ? cfg.n_total - 1
                           : cfg.n_total;
  return {Keep(n, cfg.n_total - 1), Keep(n, phi0_exp) / n,
          Keep(n, cfg.n_total - 2)};
}

double Theta(double g, double a, const GameConfig& cfg) {
  return g * (1.0 - a) * Keep(cfg.n_total, cfg.n_total - 2);
}

double Phi(double g, double a, const GameConfig& cfg) {
  return Theta(a, g, cfg);
}

double CoopThroughput(double g, double a, const GameConfig& cfg) {
  const double n = cfg.n_total;
  return (1.0 / n) * (1.0 - a) * (1.0 - g) * Keep(n, cfg.n_total - 3);
}

double Clearance(const StrategyProfile& p, const GameConfig& cfg, int i) {
  double x = Keep(cfg.n_total, cfg.n_cooperative());
  for (double aj : p.a) x *= 1.0 - aj;
  for (int k = 0; k < static_cast<int>(p.g.size()); ++k) {
    if (k != i) x *= 1.0 - p.g[k];
  }
  return x;
}

double VigilanteClearance(const StrategyProfile& p, const GameConfig& cfg,
                          int j) {
  double y = Keep(cfg.n_total, cfg.n_cooperative());
  for (double gk : p.g) y *= 1.0 - gk;
  for (int k = 0; k < static_cast<int>(p.a.size()); ++k) {
    if (k != j) y *= 1.0 - p.a[k];
  }
  return y;
}

double ThetaMulti(const StrategyProfile& p, const GameConfig& cfg, int i) {
  return p.g.at(i) * Clearance(p, cfg, i);
}

double PhiMulti(const StrategyProfile& p, const GameConfig& cfg, int j) {
  return p.a.at(j) * VigilanteClearance(p, cfg, j);
}

double CoopThroughputMulti(const StrategyProfile& p, const GameConfig& cfg) {
  double r = p.q_coop * Keep(cfg.n_total, cfg.n_cooperative() - 1);
  for (double gk : p.g) r *= 1.0 - gk;
  for (double aj : p.a) r *= 1.0 - aj;
  return r;
}

double UtilityG(double g, double clearance, double lambda,
                const GameConfig& cfg) {
  const double theta0 = Keep(cfg.n_total, cfg.n_total - 1);
  const double e = g * clearance - theta0;
  const double u = g - cfg.fair_prob();
  return e * e * (1.0 + lambda * u * u);
}

double UtilityA(double theta_val, double a, double rho, const GameConfig& cfg) {
  const double e = theta_val - ComputeFairBaselines(cfg).phi0;
  const double u = a - cfg.fair_prob();
  return e * e + rho * u * u;
}

double EstimateG(double phi_hat, double a, const GameConfig& cfg) {
  if (a == 0.0) {
    throw DegenerateInput("cannot estimate g: vigilante access probability "
                          "is 0");
  }
  const double ac = a * Keep(cfg.n_total, cfg.n_total - 2);
  return std::clamp((ac - phi_hat) / ac, 0.0, 1.0);
}

}  // namespace vigilance
