#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "vigilance/commands.hpp"
#include "vigilance/errors.hpp"
#include "vigilance/io.hpp"
#include "vigilance/scenario.hpp"

namespace vigilance {
namespace {

namespace fs = std::filesystem;

Scenario Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseScenario(in);
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path FreshDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("vigilance_test_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 0.36885369667780701, -2.5}) {
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
  EXPECT_EQ(FormatDouble(0.5), "0.5");
}

TEST(ParseScenario, Defaults) {
  const Scenario s = Parse("");
  EXPECT_EQ(s.game.n_total, 10);
  EXPECT_EQ(s.game.phi0_convention, Phi0Convention::kFair);
  EXPECT_EQ(s.mode, Observation::kExact);
  EXPECT_FALSE(s.init_g);
  EXPECT_NO_THROW(s.Validate());
}

TEST(ParseScenario, ReadsEverySection) {
  const Scenario s = Parse(R"(# two greedy players
[game]
n = 12
m_greedy = 2
v_vigilante = 1
lambda = 10, 5.5
rho = 0.01   ; trailing comment
phi0_exponent = as_printed

[play]
epsilon_g = 0.2
epsilon_a = 0.05
t_max = 500
conv_tol = 1e-10
window = 100
init_g = 0.2, 0.3
init_a = 0.4
mode = channel

[flow]
dt = 0.01
steps = 100
grid = 5

[channel]
slots = 1234
seed = 18446744073709551615
window = 500

[output]
dir = out/here
)");
  EXPECT_EQ(s.game.n_total, 12);
  EXPECT_EQ(s.game.n_greedy, 2);
  EXPECT_EQ(s.game.lambda, (std::vector<double>{10.0, 5.5}));
  EXPECT_EQ(s.game.rho, (std::vector<double>{0.01}));
  EXPECT_EQ(s.game.phi0_convention, Phi0Convention::kAsPrinted);
  EXPECT_EQ(s.epsilon_g, 0.2);
  EXPECT_EQ(s.t_max, 500);
  EXPECT_EQ(s.conv_tol, 1e-10);
  EXPECT_EQ(*s.init_g, (std::vector<double>{0.2, 0.3}));
  EXPECT_EQ(s.mode, Observation::kChannel);
  EXPECT_EQ(s.flow.grid, 5);
  EXPECT_EQ(s.channel.seed, 18446744073709551615ull);
  EXPECT_EQ(s.out_dir, "out/here");
  EXPECT_NO_THROW(s.Validate());

  const PlayParams pp = s.ToPlayParams();
  EXPECT_EQ(pp.observation_slots, 500u);
  EXPECT_EQ(pp.init->g, (std::vector<double>{0.2, 0.3}));
  EXPECT_EQ(pp.init->a, (std::vector<double>{0.4}));
}

TEST(ParseScenario, RoundTrip) {
  Scenario s;
  s.game.lambda = {1.0 / 3.0};
  s.game.rho = {0.001};
  s.epsilon_g = 0.123456789012345678;
  s.init_a = std::vector<double>{0.7};
  s.channel.seed = 987654321;
  s.out_dir = "results/x";
  const std::string text = SerializeScenario(s);
  const Scenario back = Parse(text);
  EXPECT_TRUE(back == s);
  EXPECT_EQ(SerializeScenario(back), text);
}

TEST(ParseScenario, DiagnosticsNameLineAndField) {
  const auto expect_error = [](const std::string& text, int line,
                               const std::string& field) {
    try {
      Parse(text);
      ADD_FAILURE() << "no error for: " << text;
    } catch (const ConfigError& e) {
      EXPECT_EQ(e.line(), line) << text;
      EXPECT_EQ(e.field(), field) << text;
      EXPECT_NE(std::string(e.what()).find(field), std::string::npos);
    }
  };
  expect_error("[game]\nn = ten\n", 2, "n");
  expect_error("[game]\n\nrho = 0.1, x\n", 3, "rho");
  expect_error("[game]\nbogus = 1\n", 2, "bogus");
  expect_error("[nope]\n", 1, "nope");
  expect_error("n = 10\n", 1, "n");
  expect_error("[play]\nmode = fuzzy\n", 2, "mode");
  expect_error("[game]\nphi0_exponent = 9\n", 2, "phi0_exponent");
  expect_error("[play]\nt_max = 1.5\n", 2, "t_max");
}

TEST(Scenario, ValidationCatchesBadFields) {
  const auto field_of = [](const std::string& text) {
    try {
      Parse(text).Validate();
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(field_of("[play]\nepsilon_g = 0\n"), "epsilon_g");
  EXPECT_EQ(field_of("[flow]\ndt = -1\n"), "dt");
  EXPECT_EQ(field_of("[flow]\ngrid = 1\n"), "grid");
  EXPECT_NE(field_of("[game]\nn = 2\n"), "<none>");
  EXPECT_NE(field_of("[play]\ninit_g = 1.5\n"), "<none>");
  EXPECT_NE(field_of("[game]\nm_greedy = 2\n"), "<none>");
}

TEST(EnsureWritableDir, RejectsFiles) {
  const fs::path dir = FreshDir("notdir");
  fs::create_directories(dir);
  std::ofstream(dir / "file") << "x";
  EXPECT_THROW(EnsureWritableDir(dir / "file"), ConfigError);
  EXPECT_NO_THROW(EnsureWritableDir(dir / "a" / "b"));
  EXPECT_TRUE(fs::is_directory(dir / "a" / "b"));
}

TEST(Commands, ParseNames) {
  for (auto c : {Command::kBestResponse, Command::kPlay, Command::kFlow,
                 Command::kNash, Command::kChannel}) {
    EXPECT_EQ(ParseCommand(CommandName(c)), c);
  }
  EXPECT_FALSE(ParseCommand("dance"));
}

TEST(Commands, BestResponseFiles) {
  Scenario s;
  s.game.rho = {0.001};
  const fs::path dir = FreshDir("br");
  const auto doc = RunCommand(Command::kBestResponse, s, dir);
  EXPECT_TRUE(doc["intersects"].get<bool>());
  EXPECT_NEAR(doc["a_plus"].get<double>(), 0.368854, 1e-6);
  const std::string csv = Slurp(dir / "beta_g.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "input,response,branch");
  EXPECT_NE(csv.find(",boundary\n"), std::string::npos);
  EXPECT_NE(csv.find(",right\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "beta_a.csv"));
  EXPECT_TRUE(fs::exists(dir / "best_response.json"));

  s.game.rho = {0.01};
  EXPECT_FALSE(RunCommand(Command::kBestResponse, s, dir)["intersects"]
                   .get<bool>());
}

TEST(Commands, PlayWritesTrajectoryAndVerdict) {
  Scenario s;
  s.game.n_greedy = 2;
  s.game.lambda = {10.0, 10.0};
  const fs::path dir = FreshDir("play");
  const auto doc = RunCommand(Command::kPlay, s, dir);
  EXPECT_EQ(doc["verdict"], "converged");
  const std::string csv = Slurp(dir / "trajectory.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,g_1,g_2,a_1,theta_1,theta_2,phi_1");
  EXPECT_TRUE(fs::exists(dir / "verdict.json"));
}

TEST(Commands, NashJson) {
  Scenario s;
  const fs::path dir = FreshDir("nash");
  const auto doc = RunCommand(Command::kNash, s, dir);
  EXPECT_FALSE(doc["exists"].get<bool>());
  EXPECT_TRUE(doc["g"].is_null());
  EXPECT_TRUE(doc["gap_lo"].is_number());
  EXPECT_TRUE(doc.contains("residuals"));
}

TEST(Commands, FlowFiles) {
  Scenario s;
  s.flow.steps = 2000;
  s.flow.grid = 6;
  const fs::path dir = FreshDir("flow");
  const auto doc = RunCommand(Command::kFlow, s, dir);
  ASSERT_EQ(doc["fixed_points"].size(), 1u);
  EXPECT_NEAR(doc["fixed_points"][0]["g"].get<double>(), 0.203, 1e-3);
  const std::string field = Slurp(dir / "phase_portrait.csv");
  EXPECT_EQ(field.substr(0, field.find('\n')), "g,a,dg,da");
  EXPECT_EQ(std::count(field.begin(), field.end(), '\n'), 37);
  const std::string lines = Slurp(dir / "streamlines.csv");
  EXPECT_EQ(lines.substr(0, lines.find('\n')), "id,step,t,g,a");
}

TEST(Commands, ChannelIsByteIdenticalForSameSeed) {
  Scenario s;
  s.channel.slots = 20000;
  s.channel.seed = 77;
  const fs::path x = FreshDir("ch_x"), y = FreshDir("ch_y");
  RunCommand(Command::kChannel, s, x);
  RunCommand(Command::kChannel, s, y);
  for (const char* f : {"channel_summary.csv", "channel_trace.csv"}) {
    EXPECT_EQ(Slurp(x / f), Slurp(y / f)) << f;
  }
  const std::string summary = Slurp(x / "channel_summary.csv");
  EXPECT_EQ(summary.substr(0, summary.find('\n')),
            "player,transmits,successes,rate");
}

TEST(Commands, PlayIsByteIdenticalForSameSeed) {
  Scenario s;
  s.mode = Observation::kChannel;
  s.t_max = 300;
  s.channel.window = 1000;
  s.channel.seed = 5;
  const fs::path x = FreshDir("pl_x"), y = FreshDir("pl_y");
  RunCommand(Command::kPlay, s, x);
  RunCommand(Command::kPlay, s, y);
  EXPECT_EQ(Slurp(x / "trajectory.csv"), Slurp(y / "trajectory.csv"));
}

TEST(Commands, ValidateBeforeDispatch) {
  Scenario s;
  s.epsilon_a = 2.0;
  EXPECT_THROW(RunCommand(Command::kPlay, s, FreshDir("bad")), ConfigError);
  Scenario multi;
  multi.game.n_vigilante = 2;
  multi.game.rho = {0.1, 0.1};
  EXPECT_THROW(RunCommand(Command::kNash, multi, FreshDir("bad2")),
               ConfigError);
}

}  // namespace
}  // namespace vigilance
