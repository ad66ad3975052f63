#include "carpool/journeys.h"

#include <algorithm>
#include <cassert>

namespace carpool {

std::string_view to_str(system_kind const s) {
  switch (s) {
    case system_kind::kNoCarpooling: return "no_carpooling";
    case system_kind::kCurrent: return "current";
    case system_kind::kIntegrated: return "integrated";
  }
  return "unknown";
}

std::optional<system_kind> parse_system(std::string_view const s) {
  for (auto const k : kAllSystems) {
    if (to_str(k) == s) {
      return k;
    }
  }
  return std::nullopt;
}

std::string_view to_str(detour const d) {
  switch (d) {
    case detour::kNone: return "none";
    case detour::kFirstMile: return "first_mile";
    case detour::kLastMile: return "last_mile";
    case detour::kBoth: return "both";
  }
  return "unknown";
}

std::optional<std::uint32_t> journey::stop_index(mp_id const mp) const {
  for (auto i = 0U; i != stops_.size(); ++i) {
    if (stops_[i].mp_ == mp) {
      return i;
    }
  }
  return std::nullopt;
}

bool journey::can_reserve(std::uint32_t const board,
                          std::uint32_t const alight) const {
  assert(board < alight && alight < stops_.size());
  return std::all_of(begin(occupancy_) + board, begin(occupancy_) + alight,
                     [&](std::uint32_t const o) { return o < seats_; });
}

bool journey::reserve(rider_id const r,
                      std::uint32_t const board,
                      std::uint32_t const alight) {
  if (board >= alight || alight >= stops_.size()) {
    throw error{"reservation must board before it alights, within the journey"};
  }
  if (!can_reserve(board, alight)) {
    return false;
  }
  for (auto s = board; s != alight; ++s) {
    ++occupancy_[s];
  }
  reservations_.push_back({r, board, alight});
  return true;
}

void journey::release(reservation const& res) {
  auto const it = std::find(begin(reservations_), end(reservations_), res);
  if (it == end(reservations_)) {
    throw error{"release of an unknown reservation"};
  }
  for (auto s = res.board_; s != res.alight_; ++s) {
    --occupancy_[s];
  }
  reservations_.erase(it);
}

std::uint32_t journey::max_occupancy() const {
  return occupancy_.empty()
             ? 0U
             : *std::max_element(begin(occupancy_), end(occupancy_));
}

namespace {

double path_km(scenario const& s, std::span<mp_id const> stops) {
  auto km = 0.0;
  for (auto i = 1U; i < stops.size(); ++i) {
    km += road_distance(s.params_, s.location(stops[i - 1U]),
                        s.location(stops[i]));
  }
  return km;
}

mp_id nearest_station(scenario const& s, mp_id const mp) {
  return nearest(s.location(mp), s.meeting_points_, s.rail_.stations());
}

}  // namespace

std::vector<candidate_path> candidate_journeys(scenario const& s,
                                               driver const& d,
                                               system_kind const system) {
  auto out = std::vector<candidate_path>{};
  auto const add = [&](std::vector<mp_id> stops, detour const kind) {
    auto const km = path_km(s, stops);
    out.push_back({std::move(stops), kind, km});
  };

  add({d.origin_, d.destination_}, detour::kNone);
  if (system != system_kind::kIntegrated) {
    return out;
  }

  auto const s_org = nearest_station(s, d.origin_);
  auto const s_dst = nearest_station(s, d.destination_);
  add({d.origin_, s_org, d.destination_}, detour::kFirstMile);
  add({d.origin_, s_dst, d.destination_}, detour::kLastMile);
  if (s_org != s_dst) {
    add({d.origin_, s_org, s_dst, d.destination_}, detour::kBoth);
  }
  return out;
}

journey planned_journey(scenario const& s,
                        driver const& d,
                        system_kind const system) {
  auto const candidates = candidate_journeys(s, d, system);
  auto const direct_km = candidates.front().distance_km_;
  auto const cap = s.params_.max_detour_ratio_ * direct_km;

  auto const detour_count = [](detour const k) {
    return static_cast<int>(has(k, detour::kFirstMile)) +
           static_cast<int>(has(k, detour::kLastMile));
  };
  auto const within_cap = [&](candidate_path const& c) {
    return c.distance_km_ <= cap * (1.0 + 1e-12);
  };

  // Candidates come in preference order for equal detour counts
  // (first mile before last mile), so strict comparisons keep the earlier.
  auto const* best = &candidates.front();
  for (auto const& c : candidates) {
    if (!within_cap(c)) {
      continue;
    }
    auto const n = detour_count(c.detours_);
    auto const best_n = detour_count(best->detours_);
    if (n > best_n || (n == best_n && c.distance_km_ < best->distance_km_)) {
      best = &c;
    }
  }

  auto j = journey{};
  j.driver_ = d.id_;
  j.seats_ = d.seats_;
  j.planned_ = best->detours_;
  j.direct_km_ = direct_km;
  j.planned_km_ = best->distance_km_;

  auto t = d.departure_min_;
  for (auto i = 0U; i != best->stops_.size(); ++i) {
    if (i != 0U) {
      t += travel_time(s.params_, travel_mode::kCar,
                       s.location(best->stops_[i - 1U]),
                       s.location(best->stops_[i]));
    }
    j.stops_.push_back({best->stops_[i], t});
  }
  j.occupancy_.assign(j.stops_.size() - 1U, 0U);

  switch (best->detours_) {
    case detour::kNone: break;
    case detour::kFirstMile: j.first_mile_stop_ = 1U; break;
    case detour::kLastMile: j.last_mile_stop_ = 1U; break;
    case detour::kBoth:
      j.first_mile_stop_ = 1U;
      j.last_mile_stop_ = 2U;
      break;
  }
  return j;
}

realized_journey realized_detours(scenario const& s, journey const& j) {
  auto const used = [&](std::optional<std::uint32_t> const stop) {
    return stop.has_value() &&
           std::any_of(begin(j.reservations_), end(j.reservations_),
                       [&](reservation const& r) {
                         return r.board_ == *stop || r.alight_ == *stop;
                       });
  };

  auto out = realized_journey{};
  auto const fm = used(j.first_mile_stop_);
  auto const lm = used(j.last_mile_stop_);
  if (fm) {
    out.detours_ = out.detours_ | detour::kFirstMile;
  }
  if (lm) {
    out.detours_ = out.detours_ | detour::kLastMile;
  }

  auto kept = std::vector<mp_id>{};
  for (auto i = 0U; i != j.stops_.size(); ++i) {
    auto const skip = (j.first_mile_stop_ == i && !fm) ||
                      (j.last_mile_stop_ == i && !lm);
    if (!skip) {
      kept.push_back(j.stops_[i].mp_);
    }
  }
  out.driven_km_ = path_km(s, kept);
  return out;
}

}  // namespace carpool
