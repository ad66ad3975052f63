#pragma once

// Brute-force reference implementations used only by tests. Nothing here
// calls the planner, the journey planner or rail_line::trip, so the results
// are an independent check of the production code paths.

#include <cstdint>
#include <optional>
#include <vector>

#include "carpool/engine.h"
#include "carpool/scenario.h"

namespace carpool::oracle {

// Nearest by sorting every candidate on (distance, id).
mp_id nearest_by_sort(point const&,
                      std::span<meeting_point const>,
                      std::span<mp_id const>);

// Next departure found by walking the timetable one train at a time.
struct train_result {
  double board_{0.0};
  double arrive_{0.0};
};
train_result train_by_enumeration(scenario const&,
                                  mp_id from,
                                  mp_id to,
                                  double ready);

struct oracle_journey {
  std::vector<mp_id> stops_;
  std::vector<double> times_;
  std::vector<std::uint32_t> occupancy_;
  std::uint32_t seats_{0U};
  double direct_km_{0.0};
  double planned_km_{0.0};
};

oracle_journey plan_by_enumeration(scenario const&, driver const&, system_kind);

struct oracle_carpool {
  std::uint32_t driver_{0U};
  std::uint32_t board_{0U};
  std::uint32_t alight_{0U};
  friend bool operator==(oracle_carpool const&, oracle_carpool const&) = default;
};

struct oracle_choice {
  int kind_{0};  // option_kind as int
  double arrival_{0.0};
  std::vector<oracle_carpool> carpools_;
};

// Every option of every menu enumerated from scratch.
std::optional<oracle_choice> select_by_enumeration(
    scenario const&,
    std::vector<oracle_journey> const&,
    rider const&,
    system_kind);

struct oracle_run {
  std::vector<std::optional<oracle_choice>> choices_;  // by rider id
  std::vector<oracle_journey> journeys_;
};

// Greedy replay: riders by (departure, id), seats committed per choice.
oracle_run replay(scenario const&, system_kind);

// Random micro-instance: <= 5 riders, <= 3 drivers, <= 12 meeting points.
scenario micro_instance(std::uint64_t seed);

struct comparison {
  bool equal_{true};
  std::string detail_;
};

// Compares a production run with the oracle replay (choices and ledger).
comparison compare(scenario const&, run_result const&, oracle_run const&);

}  // namespace carpool::oracle
