#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "carpool/engine.h"
#include "carpool/scenario.h"

namespace carpool {

// Metrics only count users departing inside [0, measurement window).
bool in_window(scenario_params const&, double departure_min);

enum class mode_category : std::uint8_t {
  kUnserved,
  kWalkOnly,
  kTransitOnly,
  kCarpoolOnly,
  kCarpoolFirstMileTransit,
  kTransitCarpoolLastMile,
  kCarpoolBothTransit
};
constexpr auto kModeCategories = 7U;

std::string_view to_str(mode_category);
mode_category category_of(outcome const&);

struct mode_shares {
  std::size_t riders_{0U};
  std::array<std::size_t, kModeCategories> counts_{};
  std::array<double, kModeCategories> shares_{};

  double share(mode_category const c) const {
    return shares_[static_cast<std::size_t>(c)];
  }
};

// nullopt when no rider departs inside the window.
std::optional<mode_shares> mode_breakdown(scenario const&, run_result const&);

struct travel_time_row {
  rider_id rider_{};
  double od_km_{0.0};  // Euclidean
  std::optional<double> journey_min_;  // nullopt: unserved
};

std::vector<travel_time_row> travel_time_table(scenario const&,
                                               run_result const&);

// Minutes per Euclidean km of walking (circuity applied).
double walking_slope_min_per_km(scenario_params const&);

struct occupancy_histogram {
  std::size_t drivers_{0U};
  std::vector<std::size_t> counts_;  // index = max simultaneous riders
  double mean() const;
};

occupancy_histogram occupancy_histogram_of(scenario const&, run_result const&);

struct detour_shares {
  std::size_t drivers_{0U};
  std::array<std::size_t, 4U> counts_{};  // indexed by detour value
  std::array<double, 4U> shares_{};

  double share(detour const d) const {
    return shares_[static_cast<std::size_t>(d)];
  }
};

std::optional<detour_shares> detour_breakdown(scenario const&,
                                              run_result const&);

struct system_summary {
  system_kind system_{};
  std::size_t riders_in_window_{0U};
  std::size_t drivers_in_window_{0U};
  std::optional<mode_shares> modes_;
  occupancy_histogram occupancy_;
  std::optional<detour_shares> detours_;
  std::optional<double> mean_journey_min_;
  std::optional<double> max_served_od_km_;
  double walking_slope_min_per_km_{0.0};

  double unserved_share() const;
};

system_summary summarize(scenario const&, run_result const&);

nlohmann::ordered_json to_json(system_summary const&);

// <system>_modes.csv, <system>_travel_times.csv, <system>_occupancy.csv,
// <system>_detours.csv in `dir`.
void write_metric_csvs(std::filesystem::path const& dir,
                       scenario const&,
                       run_result const&);

}  // namespace carpool
