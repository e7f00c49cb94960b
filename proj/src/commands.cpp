#include "vigilance/commands.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "vigilance/best_response.hpp"
#include "vigilance/channel.hpp"
#include "vigilance/equilibrium.hpp"
#include "vigilance/errors.hpp"
#include "vigilance/flow.hpp"
#include "vigilance/io.hpp"
#include "vigilance/play.hpp"

namespace vigilance {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json OptionalNumber(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json ProfileJson(const StrategyProfile& p) {
  return json{{"g", p.g}, {"a", p.a}};
}

json ComplexJson(std::complex<double> z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

void RequireOneOnOne(const GameConfig& cfg, const char* command) {
  if (cfg.n_greedy != 1 || cfg.n_vigilante != 1) {
    throw ConfigError("m_greedy", std::string(command) +
                                      " needs m_greedy = v_vigilante = 1");
  }
}

void WriteCurve(const fs::path& path, const BestResponseCurve& curve) {
  CsvWriter csv(path, {"input", "response", "branch"});
  for (const CurveSample& s : curve.samples) {
    csv.Cell(s.input).Cell(s.response).Cell(BranchName(s.branch));
    csv.EndRow();
  }
}

json NashJson(const NashVerdict& v) {
  json doc;
  doc["exists"] = v.exists;
  doc["g"] = v.point ? json(v.point->g) : json(nullptr);
  doc["a"] = v.point ? json(v.point->a) : json(nullptr);
  doc["gap_lo"] = OptionalNumber(v.gap_lo);
  doc["gap_hi"] = OptionalNumber(v.gap_hi);
  doc["residuals"] = {{"g", v.residual_g}, {"a", v.residual_a}};
  json all = json::array();
  for (const NashPoint& p : v.all_points) all.push_back({p.g, p.a});
  doc["all_points"] = all;
  return doc;
}

// Initial conditions of the plotted streamlines.
std::vector<Point2> StreamlineSeeds() {
  std::vector<Point2> seeds;
  for (double g : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) seeds.push_back({g, a});
  }
  return seeds;
}

}  // namespace

std::optional<Command> ParseCommand(std::string_view name) {
  if (name == "best-response") return Command::kBestResponse;
  if (name == "play") return Command::kPlay;
  if (name == "flow") return Command::kFlow;
  if (name == "nash") return Command::kNash;
  if (name == "channel") return Command::kChannel;
  return std::nullopt;
}

std::string_view CommandName(Command c) {
  switch (c) {
    case Command::kBestResponse:
      return "best-response";
    case Command::kPlay:
      return "play";
    case Command::kFlow:
      return "flow";
    case Command::kNash:
      return "nash";
    case Command::kChannel:
      return "channel";
  }
  return "unknown";
}

json CmdBestResponse(const Scenario& s, const fs::path& out_dir) {
  const GameConfig& cfg = s.game;
  RequireOneOnOne(cfg, "best-response");
  const BestResponseCurve bg =
      SampleBetaG(cfg.lambda[0], cfg, kCurveSamples);
  const BestResponseCurve ba = SampleBetaA(cfg.rho[0], cfg, kCurveSamples);
  WriteCurve(out_dir / "beta_g.csv", bg);
  WriteCurve(out_dir / "beta_a.csv", ba);

  const Discontinuity disc = FindDiscontinuity(cfg.lambda[0], cfg);
  const NashVerdict nash = FindNash(cfg);
  json doc;
  doc["a_plus"] = OptionalNumber(bg.a_plus);
  doc["jump_size"] = bg.jump_size;
  doc["multi_jump"] = bg.multi_jump;
  doc["discontinuities"] = disc.roots;
  doc["intersects"] = nash.exists;
  doc["intersection"] =
      nash.point ? json{{"g", nash.point->g}, {"a", nash.point->a}}
                 : json(nullptr);
  WriteJson(out_dir / "best_response.json", doc);
  return doc;
}

json CmdPlay(const Scenario& s, const fs::path& out_dir) {
  const GameConfig& cfg = s.game;
  const Trajectory traj = Run(cfg, s.ToPlayParams());

  std::vector<std::string> header{"t"};
  for (int i = 1; i <= cfg.n_greedy; ++i) header.push_back("g_" + std::to_string(i));
  for (int j = 1; j <= cfg.n_vigilante; ++j) header.push_back("a_" + std::to_string(j));
  for (int i = 1; i <= cfg.n_greedy; ++i) header.push_back("theta_" + std::to_string(i));
  for (int j = 1; j <= cfg.n_vigilante; ++j) header.push_back("phi_" + std::to_string(j));
  CsvWriter csv(out_dir / "trajectory.csv", header);
  for (std::size_t t = 0; t < traj.states.size(); ++t) {
    const StrategyProfile& p = traj.states[t];
    csv.Cell(static_cast<long long>(t));
    for (double g : p.g) csv.Cell(g);
    for (double a : p.a) csv.Cell(a);
    for (int i = 0; i < cfg.n_greedy; ++i) csv.Cell(ThetaMulti(p, cfg, i));
    for (int j = 0; j < cfg.n_vigilante; ++j) csv.Cell(PhiMulti(p, cfg, j));
    csv.EndRow();
  }

  const StrategyProfile& last = traj.states.back();
  json doc;
  doc["verdict"] = VerdictName(traj.verdict);
  doc["steps"] = traj.states.size() - 1;
  doc["final"] = ProfileJson(last);
  doc["limit"] = traj.limit ? ProfileJson(*traj.limit) : json(nullptr);
  std::vector<double> theta, phi;
  for (int i = 0; i < cfg.n_greedy; ++i) theta.push_back(ThetaMulti(last, cfg, i));
  for (int j = 0; j < cfg.n_vigilante; ++j) phi.push_back(PhiMulti(last, cfg, j));
  doc["final_theta"] = theta;
  doc["final_phi"] = phi;
  if (traj.verdict == Verdict::kOscillating) {
    doc["amplitude"] = traj.amplitude;
    doc["window"] = traj.window;
    doc["band_lo"] = traj.band_lo;
    doc["band_hi"] = traj.band_hi;
    std::vector<double> mean_g;
    for (int i = 0; i < cfg.n_greedy; ++i) {
      mean_g.push_back(traj.TrailingMeanG(i, static_cast<std::size_t>(traj.window)));
    }
    doc["mean_g"] = mean_g;
  }
  if (cfg.n_greedy == 1) {
    const Discontinuity disc = FindDiscontinuity(cfg.lambda[0], cfg);
    doc["a_plus"] = OptionalNumber(disc.a_plus());
  }
  WriteJson(out_dir / "verdict.json", doc);
  return doc;
}

json CmdFlow(const Scenario& s, const fs::path& out_dir) {
  const GameConfig& cfg = s.game;
  RequireOneOnOne(cfg, "flow");
  const PhasePortrait portrait = ComputePhasePortrait(
      s.flow.grid, cfg, StreamlineSeeds(), s.flow.dt, s.flow.steps);

  {
    CsvWriter csv(out_dir / "phase_portrait.csv", {"g", "a", "dg", "da"});
    for (const FieldSample& f : portrait.field) {
      csv.Cell(f.g).Cell(f.a).Cell(f.dg).Cell(f.da);
      csv.EndRow();
    }
  }
  {
    CsvWriter csv(out_dir / "streamlines.csv", {"id", "step", "t", "g", "a"});
    for (std::size_t id = 0; id < portrait.streamlines.size(); ++id) {
      const FlowPath& path = portrait.streamlines[id];
      const std::size_t n = path.states.size();
      for (std::size_t k = 0; k < n; ++k) {
        if (k % kStreamlineStride != 0 && k + 1 != n) continue;
        csv.Cell(static_cast<long long>(id))
            .Cell(static_cast<long long>(k))
            .Cell(static_cast<double>(k) * path.dt)
            .Cell(path.states[k].g)
            .Cell(path.states[k].a);
        csv.EndRow();
      }
    }
  }

  FixedPointOptions opts;
  opts.basin_dt = s.flow.dt;
  opts.basin_steps = s.flow.steps;
  const auto reports = FindFixedPoints(cfg, opts);
  json points = json::array();
  for (const FixedPointReport& r : reports) {
    points.push_back({{"g", r.point.g},
                      {"a", r.point.a},
                      {"eigenvalues",
                       {ComplexJson(r.eigenvalues[0]),
                        ComplexJson(r.eigenvalues[1])}},
                      {"stable", r.stable},
                      {"is_nash", r.is_nash},
                      {"basin_samples", r.basin.size()},
                      {"basin_reached", r.basin_reached},
                      {"basin_deadlock", r.basin_deadlock}});
  }
  int touched = 0;
  for (const FlowPath& p : portrait.streamlines) touched += p.touched_deadlock;
  json doc{{"fixed_points", points}, {"streamlines_touching_deadlock", touched}};
  WriteJson(out_dir / "fixed_points.json", doc);
  return doc;
}

json CmdNash(const Scenario& s, const fs::path& out_dir) {
  RequireOneOnOne(s.game, "nash");
  const json doc = NashJson(FindNash(s.game));
  WriteJson(out_dir / "nash.json", doc);
  return doc;
}

json CmdChannel(const Scenario& s, const fs::path& out_dir) {
  const GameConfig& cfg = s.game;
  const StrategyProfile p = s.InitialProfile();
  const bool full = s.channel.slots <= kMaxTraceSlots && cfg.n_total <= 64;
  const ChannelTrace trace =
      Simulate(p, cfg, s.channel.slots, s.channel.seed,
               full ? Recording::kFull : Recording::kSummary);

  const std::vector<double> q = p.FullVector(cfg);
  json players = json::array();
  {
    CsvWriter csv(out_dir / "channel_summary.csv",
                  {"player", "transmits", "successes", "rate"});
    const double slots = static_cast<double>(trace.slots);
    for (int i = 0; i < trace.n_players; ++i) {
      const double rate = EmpiricalThroughput(trace, i);
      csv.Cell(static_cast<long long>(i))
          .Cell(static_cast<long long>(trace.transmits[i]))
          .Cell(static_cast<long long>(trace.successes[i]))
          .Cell(rate);
      csv.EndRow();
      const double expected = AccessProb(q, static_cast<std::size_t>(i));
      const double sigma = std::sqrt(expected * (1.0 - expected) / slots);
      players.push_back({{"player", i},
                         {"rate", rate},
                         {"expected", expected},
                         {"z", sigma > 0.0 ? (rate - expected) / sigma : 0.0}});
    }
  }
  if (full) {
    CsvWriter csv(out_dir / "channel_trace.csv", {"slot", "mask", "success"});
    for (std::size_t t = 0; t < trace.slots; ++t) {
      csv.Cell(static_cast<long long>(t))
          .Cell(static_cast<long long>(trace.transmit_masks[t]))
          .Cell(static_cast<long long>(trace.success[t]));
      csv.EndRow();
    }
  }

  json g_hat = json::array();
  if (cfg.n_greedy == 1) {
    for (int j = 0; j < cfg.n_vigilante; ++j) {
      g_hat.push_back(EstimateGEmpirical(trace, j, p, cfg));
    }
  }
  json doc{{"slots", trace.slots},
           {"seed", trace.seed},
           {"players", players},
           {"g_hat", g_hat},
           {"trace_written", full}};
  WriteJson(out_dir / "channel.json", doc);
  return doc;
}

json RunCommand(Command c, const Scenario& s, const fs::path& out_dir) {
  s.Validate();
  EnsureWritableDir(out_dir);
  switch (c) {
    case Command::kBestResponse:
      return CmdBestResponse(s, out_dir);
    case Command::kPlay:
      return CmdPlay(s, out_dir);
    case Command::kFlow:
      return CmdFlow(s, out_dir);
    case Command::kNash:
      return CmdNash(s, out_dir);
    case Command::kChannel:
      return CmdChannel(s, out_dir);
  }
  throw Error("unknown command");
}

}  // namespace vigilance
