#include "carpool/engine.h"

#include <algorithm>
#include <numeric>

namespace carpool {

namespace {

// All carpool legs or none.
bool commit(std::vector<journey>& journeys, itinerary const& it) {
  auto done = std::vector<std::pair<std::uint32_t, reservation>>{};
  for (auto const& l : it.legs_) {
    if (l.mode_ != leg_mode::kCarpool) {
      continue;
    }
    auto& j = journeys[to_idx(*l.driver_)];
    if (!j.reserve(it.rider_, l.board_stop_, l.alight_stop_)) {
      for (auto const& [idx, res] : done) {
        journeys[idx].release(res);
      }
      return false;
    }
    done.emplace_back(to_idx(*l.driver_),
                      reservation{it.rider_, l.board_stop_, l.alight_stop_});
  }
  return true;
}

}  // namespace

run_result run(scenario const& s, system_kind const system) {
  auto result = run_result{.system_ = system};

  result.journeys_.reserve(s.drivers_.size());
  for (auto const& d : s.drivers_) {
    if (to_idx(d.id_) != result.journeys_.size()) {
      throw error{"driver ids must be dense and ordered"};
    }
    result.journeys_.push_back(planned_journey(s, d, system));
  }

  auto order = std::vector<std::uint32_t>(s.riders_.size());
  std::iota(begin(order), end(order), 0U);
  std::stable_sort(begin(order), end(order), [&](auto const a, auto const b) {
    auto const& ra = s.riders_[a];
    auto const& rb = s.riders_[b];
    return std::tuple{ra.departure_min_, to_idx(ra.id_)} <
           std::tuple{rb.departure_min_, to_idx(rb.id_)};
  });

  auto const p = planner{s, result.journeys_};
  result.outcomes_.resize(s.riders_.size());
  for (auto const idx : order) {
    auto const& r = s.riders_[idx];
    if (to_idx(r.id_) != idx) {
      throw error{"rider ids must be dense and ordered"};
    }
    auto excluded = std::set<option_kind>{};
    while (true) {
      auto o = p.select_option(r, system, excluded);
      if (!o.served() || commit(result.journeys_, *o.itinerary_)) {
        result.outcomes_[idx] = std::move(o);
        break;
      }
      excluded.insert(o.itinerary_->kind_);
    }
  }
  return result;
}

std::map<system_kind, run_result> run_all(scenario const& s) {
  auto out = std::map<system_kind, run_result>{};
  for (auto const system : kAllSystems) {
    out.emplace(system, run(s, system));
  }
  return out;
}

}  // namespace carpool
