#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "carpool/model.h"
#include "carpool/scenario.h"

namespace carpool {

enum class system_kind : std::uint8_t { kNoCarpooling, kCurrent, kIntegrated };

std::string_view to_str(system_kind);
std::optional<system_kind> parse_system(std::string_view);

inline constexpr auto kAllSystems = std::array{
    system_kind::kNoCarpooling, system_kind::kCurrent, system_kind::kIntegrated};

// Bit set: first mile (station nearest the driver origin) and last mile
// (station nearest the driver destination).
enum class detour : std::uint8_t {
  kNone = 0U,
  kFirstMile = 1U,
  kLastMile = 2U,
  kBoth = 3U
};

constexpr detour operator|(detour const a, detour const b) {
  return static_cast<detour>(static_cast<std::uint8_t>(a) |
                             static_cast<std::uint8_t>(b));
}

constexpr bool has(detour const set, detour const d) {
  return (static_cast<std::uint8_t>(set) & static_cast<std::uint8_t>(d)) != 0U;
}

std::string_view to_str(detour);

struct candidate_path {
  std::vector<mp_id> stops_;
  detour detours_{detour::kNone};
  double distance_km_{0.0};
};

struct stop {
  mp_id mp_{};
  double departure_min_{0.0};  // arrival time for the final stop
};

struct reservation {
  rider_id rider_{};
  std::uint32_t board_{0U};
  std::uint32_t alight_{0U};
  friend bool operator==(reservation const&, reservation const&) = default;
};

struct journey {
  std::optional<std::uint32_t> stop_index(mp_id) const;

  bool can_reserve(std::uint32_t board, std::uint32_t alight) const;

  // Returns false (journey unchanged) if a segment would exceed the seats.
  bool reserve(rider_id, std::uint32_t board, std::uint32_t alight);

  // Undo an earlier successful reserve().
  void release(reservation const&);

  std::uint32_t max_occupancy() const;

  driver_id driver_{};
  std::uint32_t seats_{4U};
  std::vector<stop> stops_;
  std::vector<std::uint32_t> occupancy_;  // per segment [i, i+1)
  detour planned_{detour::kNone};
  std::optional<std::uint32_t> first_mile_stop_;
  std::optional<std::uint32_t> last_mile_stop_;
  double direct_km_{0.0};
  double planned_km_{0.0};
  std::vector<reservation> reservations_;
};

// Ordered: direct, first mile, last mile, both. Only the direct path outside
// the Integrated system; "both" is dropped when the two stations coincide.
std::vector<candidate_path> candidate_journeys(scenario const&,
                                               driver const&,
                                               system_kind);

// Most detours within max_detour_ratio x direct distance. Among single
// detours the shorter wins, first mile on ties.
journey planned_journey(scenario const&, driver const&, system_kind);

struct realized_journey {
  detour detours_{detour::kNone};
  double driven_km_{0.0};
};

// A planned detour counts only if some reservation boards or alights at its
// station; unrealized detour stops are skipped in the driven distance.
realized_journey realized_detours(scenario const&, journey const&);

}  // namespace carpool
