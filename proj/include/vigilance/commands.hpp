#pragma once

// Scenario drivers behind the vigilance-games subcommands. Each writes its
// artifacts into `out_dir` (created if needed) and returns a short JSON
// summary of what it found.
//
//   best-response  beta_g.csv, beta_a.csv, best_response.json
//   play           trajectory.csv, verdict.json
//   flow           phase_portrait.csv, streamlines.csv, fixed_points.json
//   nash           nash.json
//   channel        channel_summary.csv, channel.json, channel_trace.csv

#include <filesystem>
#include <optional>
#include <string_view>

#include <json.hpp>

#include "vigilance/scenario.hpp"

namespace vigilance {

enum class Command { kBestResponse, kPlay, kFlow, kNash, kChannel };

std::optional<Command> ParseCommand(std::string_view name);
std::string_view CommandName(Command c);

/// Per-slot traces are written only up to this many slots.
inline constexpr std::size_t kMaxTraceSlots = 100000;
/// Samples per best-response curve.
inline constexpr std::size_t kCurveSamples = 1001;
/// Streamline rows are kept every this many integration steps.
inline constexpr int kStreamlineStride = 50;

nlohmann::json CmdBestResponse(const Scenario& s,
                               const std::filesystem::path& out_dir);
nlohmann::json CmdPlay(const Scenario& s, const std::filesystem::path& out_dir);
nlohmann::json CmdFlow(const Scenario& s, const std::filesystem::path& out_dir);
nlohmann::json CmdNash(const Scenario& s, const std::filesystem::path& out_dir);
nlohmann::json CmdChannel(const Scenario& s,
                          const std::filesystem::path& out_dir);

/// Validates `s`, checks `out_dir` and dispatches.
nlohmann::json RunCommand(Command c, const Scenario& s,
                          const std::filesystem::path& out_dir);

}  // namespace vigilance
