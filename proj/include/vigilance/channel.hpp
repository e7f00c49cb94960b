#pragma once

// Slotted random-access channel. In every slot each player transmits
// independently with its access probability; the slot is a success for the
// sole transmitter if exactly one player transmitted.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vigilance/model.hpp"

namespace vigilance {

enum class Recording { kFull, kSummary };

struct ChannelTrace {
  std::size_t slots = 0;
  std::uint64_t seed = 0;
  int n_players = 0;
  // Per-slot record, present only with Recording::kFull (needs N <= 64).
  std::vector<std::uint64_t> transmit_masks;  // bit i set: player i sent
  std::vector<std::int16_t> success;          // winning player or -1
  // Per-player totals, always present.
  std::vector<std::uint64_t> transmits;
  std::vector<std::uint64_t> successes;

  bool has_slot_record() const { return !success.empty(); }
};

/// Deterministic given `seed` (mt19937_64, 53-bit uniforms).
ChannelTrace Simulate(std::span<const double> q, std::size_t slots,
                      std::uint64_t seed, Recording rec = Recording::kFull);

/// Players ordered greedy, vigilante, cooperative (StrategyProfile order).
ChannelTrace Simulate(const StrategyProfile& p, const GameConfig& cfg,
                      std::size_t slots, std::uint64_t seed,
                      Recording rec = Recording::kFull);

/// Independent traces, one per seed, generated concurrently.
std::vector<ChannelTrace> SimulateBatch(std::span<const double> q,
                                        std::size_t slots,
                                        std::span<const std::uint64_t> seeds,
                                        Recording rec = Recording::kSummary);

/// successes / slots. Throws std::invalid_argument on an empty trace and
/// std::out_of_range on a bad player.
double EmpiricalThroughput(const ChannelTrace& trace, int player);

/// Single-greedy estimate of g by vigilante `vigilante_index` (0-based among
/// vigilantes) from its empirical throughput in `trace`.
double EstimateGEmpirical(const ChannelTrace& trace, int vigilante_index,
                          const StrategyProfile& p, const GameConfig& cfg);

}  // namespace vigilance
