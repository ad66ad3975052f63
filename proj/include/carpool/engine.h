#pragma once

#include <map>
#include <vector>

#include "carpool/journeys.h"
#include "carpool/planner.h"
#include "carpool/scenario.h"

namespace carpool {

struct run_result {
  system_kind system_{system_kind::kNoCarpooling};
  std::vector<outcome> outcomes_;  // indexed by rider id
  std::vector<journey> journeys_;  // indexed by driver id
};

// Greedy first-come-first-served matching: riders in ascending departure
// time (ties by id) each take their best option, and carpool seats are
// committed before the next rider is considered.
run_result run(scenario const&, system_kind);

std::map<system_kind, run_result> run_all(scenario const&);

}  // namespace carpool
