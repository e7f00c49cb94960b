#pragma once

// Scenario files: flat key = value text grouped in sections
//
//   [game]    n, m_greedy, v_vigilante, lambda, rho, phi0_exponent
//   [play]    epsilon_g, epsilon_a, t_max, conv_tol, window, init_g, init_a,
//             mode (exact | channel)
//   [flow]    dt, steps, grid
//   [channel] slots, seed, window
//   [output]  dir
//
// Lists are comma separated. '#' and ';' start comments. Unknown sections or
// keys are errors.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vigilance/model.hpp"
#include "vigilance/play.hpp"

namespace vigilance {

struct FlowParams {
  double dt = 0.05;
  int steps = 20000;
  int grid = 21;  // phase-portrait resolution per axis
};

struct ChannelParams {
  std::size_t slots = 1000000;
  std::uint64_t seed = 1;
  std::size_t window = 10000;  // slots per throughput estimate in play
};

struct Scenario {
  GameConfig game;
  double epsilon_g = 0.1;
  double epsilon_a = 0.1;
  int t_max = 20000;
  double conv_tol = 1e-9;
  int window = 1000;
  std::optional<std::vector<double>> init_g;
  std::optional<std::vector<double>> init_a;
  Observation mode = Observation::kExact;
  FlowParams flow;
  ChannelParams channel;
  std::string out_dir = ".";

  /// Cross-field validation; throws ConfigError naming the field.
  void Validate() const;

  /// Initial profile (fair where init_g / init_a are absent).
  StrategyProfile InitialProfile() const;
  PlayParams ToPlayParams() const;

  friend bool operator==(const Scenario&, const Scenario&);
};

/// Throws ConfigError with the 1-based line number on malformed input.
Scenario ParseScenario(std::istream& in);
Scenario LoadScenario(const std::filesystem::path& path);

/// Canonical text form; ParseScenario(SerializeScenario(s)) == s.
std::string SerializeScenario(const Scenario& s);

}  // namespace vigilance
