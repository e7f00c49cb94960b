#include "vigilance/channel.hpp"

#include <random>
#include <stdexcept>

#include "vigilance/errors.hpp"
#include "vigilance/kernels.hpp"

namespace vigilance {
namespace {

double Uniform53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ChannelTrace Simulate(std::span<const double> q, std::size_t slots,
                      std::uint64_t seed, Recording rec) {
  const int n = static_cast<int>(q.size());
  for (double v : q) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ConfigError("profile", "access probability outside [0, 1]");
    }
  }
  if (rec == Recording::kFull && n > 64) {
    throw ConfigError("n", "per-slot recording supports at most 64 players");
  }

  ChannelTrace t;
  t.slots = slots;
  t.seed = seed;
  t.n_players = n;
  t.transmits.assign(n, 0);
  t.successes.assign(n, 0);
  if (rec == Recording::kFull) {
    t.transmit_masks.resize(slots);
    t.success.resize(slots);
  }

  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < slots; ++s) {
    std::uint64_t mask = 0;
    int count = 0;
    int last = -1;
    for (int i = 0; i < n; ++i) {
      if (Uniform53(rng) < q[i]) {
        ++t.transmits[i];
        ++count;
        last = i;
        if (i < 64) mask |= std::uint64_t{1} << i;
      }
    }
    const int winner = count == 1 ? last : -1;
    if (winner >= 0) ++t.successes[winner];
    if (rec == Recording::kFull) {
      t.transmit_masks[s] = mask;
      t.success[s] = static_cast<std::int16_t>(winner);
    }
  }
  return t;
}

ChannelTrace Simulate(const StrategyProfile& p, const GameConfig& cfg,
                      std::size_t slots, std::uint64_t seed, Recording rec) {
  const std::vector<double> q = p.FullVector(cfg);
  return Simulate(q, slots, seed, rec);
}

std::vector<ChannelTrace> SimulateBatch(std::span<const double> q,
                                        std::size_t slots,
                                        std::span<const std::uint64_t> seeds,
                                        Recording rec) {
  return kernels::MapIndices(seeds.size(), [&](std::size_t i) {
    return Simulate(q, slots, seeds[i], rec);
  });
}

double EmpiricalThroughput(const ChannelTrace& trace, int player) {
  if (trace.slots == 0) throw std::invalid_argument("empty channel trace");
  if (player < 0 || player >= trace.n_players) {
    throw std::out_of_range("player index out of range");
  }
  return static_cast<double>(trace.successes[player]) /
         static_cast<double>(trace.slots);
}

double EstimateGEmpirical(const ChannelTrace& trace, int vigilante_index,
                          const StrategyProfile& p, const GameConfig& cfg) {
  const double a = p.a.at(vigilante_index);
  const double phi_hat =
      EmpiricalThroughput(trace, cfg.n_greedy + vigilante_index);
  return EstimateG(phi_hat, a, cfg);
}

}  // namespace vigilance
