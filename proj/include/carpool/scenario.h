#pragma once

#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

#include "carpool/model.h"
#include "carpool/rng.h"

namespace carpool {

// Stations come first in the meeting point list: ids 0..n_stations-1.
struct scenario {
  scenario_params params_;
  std::vector<meeting_point> meeting_points_;
  rail_line rail_;
  std::vector<rider> riders_;
  std::vector<driver> drivers_;

  point location(mp_id const id) const {
    return meeting_points_[to_idx(id)].location_;
  }

  friend bool operator==(scenario const& a, scenario const& b) {
    return a.params_ == b.params_ && a.meeting_points_ == b.meeting_points_ &&
           a.riders_ == b.riders_ && a.drivers_ == b.drivers_;
  }
};

std::vector<meeting_point> generate_meeting_points(scenario_params const&,
                                                   rng& uniform_stream,
                                                   rng& cluster_stream);

std::pair<std::vector<rider>, std::vector<driver>> generate_users(
    scenario_params const&,
    std::span<meeting_point const>,
    rng& rider_stream,
    rng& driver_stream);

// Full scenario from params (including params.rng_seed_).
scenario generate_scenario(scenario_params const&);

// Assembles a scenario from parts, rebuilding the rail line.
scenario make_scenario(scenario_params,
                       std::vector<meeting_point>,
                       std::vector<rider>,
                       std::vector<driver>);

constexpr auto kScenarioFormatVersion = 1U;

struct parse_error : error {
  using error::error;
};

void write_scenario(std::ostream&, scenario const&);
scenario read_scenario(std::istream&);

void save_scenario(scenario const&, std::filesystem::path const&);
scenario load_scenario(std::filesystem::path const&);

}  // namespace carpool
