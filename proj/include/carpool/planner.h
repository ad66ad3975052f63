#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "carpool/journeys.h"
#include "carpool/model.h"
#include "carpool/scenario.h"

namespace carpool {

enum class leg_mode : std::uint8_t { kWalk, kCarpool, kTrain };

// Declaration order is the tie-break order of select_option.
enum class option_kind : std::uint8_t {
  kWalkOnly,
  kTransitOnly,
  kCarpoolOnly,
  kCarpoolFirstMileTransit,
  kTransitCarpoolLastMile,
  kCarpoolBothTransit
};

inline constexpr auto kAllOptionKinds = std::array{
    option_kind::kWalkOnly,
    option_kind::kTransitOnly,
    option_kind::kCarpoolOnly,
    option_kind::kCarpoolFirstMileTransit,
    option_kind::kTransitCarpoolLastMile,
    option_kind::kCarpoolBothTransit};

std::string_view to_str(leg_mode);
std::string_view to_str(option_kind);

struct place {
  point location_;
  std::optional<mp_id> mp_;
};

struct leg {
  leg_mode mode_{leg_mode::kWalk};
  place from_;
  place to_;
  double depart_min_{0.0};
  double arrive_min_{0.0};
  double walk_km_{0.0};
  double wait_before_min_{0.0};
  std::optional<driver_id> driver_;
  std::uint32_t board_stop_{0U};  // carpool legs only
  std::uint32_t alight_stop_{0U};
};

struct itinerary {
  rider_id rider_{};
  option_kind kind_{option_kind::kWalkOnly};
  std::vector<leg> legs_;
  double total_wait_min_{0.0};
  double total_walk_km_{0.0};
  double arrival_min_{0.0};
  double journey_min_{0.0};  // arrival - rider departure
};

struct outcome {
  rider_id rider_{};
  std::optional<itinerary> itinerary_;  // nullopt: unserved
  bool served() const { return itinerary_.has_value(); }
};

// Builds and prices the rider options against the current journey state.
// Journeys are read through the span on every call, so seat reservations
// made by the caller between calls are respected.
class planner {
public:
  planner(scenario const&, std::span<journey const>);

  itinerary option_walk(rider const&) const;
  std::optional<itinerary> option_transit(rider const&) const;
  std::optional<itinerary> option_carpool_only(rider const&) const;
  std::optional<itinerary> option_carpool_transit(rider const&) const;

  // Wait and walk caps; strictly faster than walking unless walk-only.
  bool feasible(itinerary const&, rider const&) const;

  // Earliest feasible arrival over the system's menu minus `excluded`.
  outcome select_option(rider const&,
                        system_kind,
                        std::set<option_kind> const& excluded = {}) const;

  mp_id nearest_meeting_point(point const&) const;
  mp_id nearest_station(point const&) const;

private:
  struct stop_ref {
    std::uint32_t journey_;
    std::uint32_t stop_;
  };

  static std::uint64_t od_key(mp_id const a, mp_id const b) {
    return (static_cast<std::uint64_t>(to_idx(a)) << 32U) | to_idx(b);
  }

  scenario const& scenario_;
  std::span<journey const> journeys_;
  std::vector<mp_id> all_mps_;
  std::unordered_map<std::uint32_t, std::vector<stop_ref>> stops_at_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_od_;
};

// Feasibility recomputed from the legs alone (no stored totals).
struct audit_result {
  bool chain_ok_{true};
  bool wait_ok_{true};
  bool walk_ok_{true};
  bool faster_than_walking_ok_{true};
  bool ok() const {
    return chain_ok_ && wait_ok_ && walk_ok_ && faster_than_walking_ok_;
  }
};

audit_result audit_itinerary(scenario_params const&,
                             rider const&,
                             itinerary const&);

}  // namespace carpool
