// vigilance-games <best-response|play|flow|nash|channel> --config <file...>
//                 [--out <dir>] [--seed <u64>]
//
// Output directory: --out, else $VG_OUT_DIR, else [output] dir of the config.
// With several configs each one writes to <dir>/<config stem>.
// Exit codes: 0 ok, 1 other failure, 2 config error, 3 numerical failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vigilance/commands.hpp"
#include "vigilance/errors.hpp"
#include "vigilance/scenario.hpp"

namespace fs = std::filesystem;
using namespace vigilance;

namespace {

struct Outcome {
  int code = 0;
  std::string message;
};

Outcome RunOne(Command cmd, const fs::path& config,
               const std::optional<fs::path>& out_override,
               const std::optional<std::uint64_t>& seed, bool batch) {
  std::ostringstream msg;
  try {
    Scenario s = LoadScenario(config);
    if (seed) s.channel.seed = *seed;
    fs::path out = out_override ? *out_override : fs::path(s.out_dir);
    if (batch) out /= config.stem();
    const auto summary = RunCommand(cmd, s, out);
    msg << config.string() << " -> " << out.string() << "\n"
        << summary.dump() << "\n";
    return {0, msg.str()};
  } catch (const ConfigError& e) {
    msg << config.string() << ": config error: " << e.what() << "\n";
    return {2, msg.str()};
  } catch (const DegenerateInput& e) {
    msg << config.string() << ": degenerate input: " << e.what() << "\n";
    return {3, msg.str()};
  } catch (const NumericalFailure& e) {
    msg << config.string() << ": numerical failure: " << e.what() << "\n";
    return {3, msg.str()};
  } catch (const std::exception& e) {
    msg << config.string() << ": error: " << e.what() << "\n";
    return {1, msg.str()};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy vs. vigilante shared-resource games"};
  std::string command;
  std::vector<std::string> configs;
  std::string out_dir;
  std::uint64_t seed = 0;
  app.add_option("command", command,
                 "best-response | play | flow | nash | channel")
      ->required()
      ->check(CLI::IsMember({"best-response", "play", "flow", "nash", "channel"}));
  app.add_option("--config", configs, "scenario file(s)")->required();
  auto* out_opt = app.add_option("--out", out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "channel seed override");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const Command cmd = *ParseCommand(command);
  std::optional<fs::path> out_override;
  if (*out_opt) {
    out_override = out_dir;
  } else if (const char* env = std::getenv("VG_OUT_DIR"); env && *env) {
    out_override = env;
  }
  std::optional<std::uint64_t> seed_override;
  if (*seed_opt) seed_override = seed;

  const bool batch = configs.size() > 1;
  std::vector<std::future<Outcome>> jobs;
  for (const auto& c : configs) {
    jobs.push_back(std::async(std::launch::async, RunOne, cmd, fs::path(c),
                              out_override, seed_override, batch));
  }
  int rc = 0;
  for (auto& job : jobs) {
    const Outcome o = job.get();
    (o.code == 0 ? std::cout : std::cerr) << o.message;
    if (o.code != 0 && rc == 0) rc = o.code;
  }
  return rc;
}
