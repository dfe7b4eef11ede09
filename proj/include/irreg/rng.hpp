#pragma once

#include <cstdint>
#include <random>

namespace irreg {

using Rng = std::mt19937_64;

/// Independent sub-streams of one master seed. The numeric values are part
/// of the reproducibility contract; never renumber them.
enum class SeedStream : std::uint64_t {
  Graph = 1,
  Partition = 2,
  Labels = 3,
  LabTrial = 4,
  LabChunk = 5,
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for attempt `index` of `stream`, derived from `master` only, so
/// sequential and parallel retries see the same values.
std::uint64_t derive_seed(std::uint64_t master, SeedStream stream,
                          std::uint64_t index) noexcept;

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double unit_uniform(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace irreg
