#pragma once

#include <cstdint>
#include <random>

namespace carpool {

// Portable randomness: std::mt19937_64 has a standard-mandated output
// sequence, and every distribution below is implemented here rather than
// taken from <random>, whose distributions differ between standard libraries.
//
// Stream splitting: sub-stream k of a seed is an mt19937_64 seeded with
// splitmix64(seed ^ splitmix64(k)). Each generation stage owns one stream.
enum class stream : std::uint64_t {
  kMeetingPoints = 1U,
  kStationClusters = 2U,
  kRiders = 3U,
  kDrivers = 4U,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

class rng {
public:
  rng(std::uint64_t seed, stream s)
      : engine_{splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(s)))} {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }

  double uniform(double const lo, double const hi) {
    return lo + (hi - lo) * uniform();
  }

  // Uniform integer on [lo, hi] by rejection (no modulo bias).
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

  // Counts unit-rate exponential gaps that fit into [0, mean): exact Poisson
  // in O(mean) draws, which is fine at the scales simulated here.
  std::uint64_t poisson(double mean);

private:
  std::mt19937_64 engine_;
};

}  // namespace carpool
