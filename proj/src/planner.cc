#include "carpool/planner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace carpool {

std::string_view to_str(leg_mode const m) {
  switch (m) {
    case leg_mode::kWalk: return "walk";
    case leg_mode::kCarpool: return "carpool";
    case leg_mode::kTrain: return "train";
  }
  return "unknown";
}

std::string_view to_str(option_kind const k) {
  switch (k) {
    case option_kind::kWalkOnly: return "walk_only";
    case option_kind::kTransitOnly: return "transit_only";
    case option_kind::kCarpoolOnly: return "carpool_only";
    case option_kind::kCarpoolFirstMileTransit: return "carpool_fm_transit";
    case option_kind::kTransitCarpoolLastMile: return "transit_carpool_lm";
    case option_kind::kCarpoolBothTransit: return "carpool_fm_transit_carpool_lm";
  }
  return "unknown";
}

namespace {

bool within_walk(scenario_params const& p, double const km) {
  return km <= p.max_walk_km_ + 1e-9;
}

bool within_wait(scenario_params const& p, double const min) {
  return time_le(min, p.max_wait_min_);
}

double walk_minutes(scenario_params const& p, double const km) {
  return km / p.walk_speed_kmh_ * 60.0;
}

leg walk_leg(scenario_params const& p,
             place const& from,
             place const& to,
             double const depart) {
  auto const km = road_distance(p, from.location_, to.location_);
  return {.mode_ = leg_mode::kWalk,
          .from_ = from,
          .to_ = to,
          .depart_min_ = depart,
          .arrive_min_ = depart + walk_minutes(p, km),
          .walk_km_ = km};
}

itinerary finish(rider const& r, option_kind const kind, std::vector<leg> legs) {
  auto it = itinerary{.rider_ = r.id_, .kind_ = kind, .legs_ = std::move(legs)};
  for (auto const& l : it.legs_) {
    it.total_wait_min_ += l.wait_before_min_;
    it.total_walk_km_ += l.walk_km_;
  }
  it.arrival_min_ = it.legs_.back().arrive_min_;
  it.journey_min_ = it.arrival_min_ - r.departure_min_;
  return it;
}

place at(scenario const& s, mp_id const mp) { return {s.location(mp), mp}; }

}  // namespace

planner::planner(scenario const& s, std::span<journey const> journeys)
    : scenario_{s}, journeys_{journeys} {
  for (auto const& m : s.meeting_points_) {
    all_mps_.push_back(m.id_);
  }
  for (auto j = 0U; j != journeys_.size(); ++j) {
    auto const& stops = journeys_[j].stops_;
    for (auto i = 0U; i != stops.size(); ++i) {
      if (s.rail_.is_station(stops[i].mp_)) {
        stops_at_[to_idx(stops[i].mp_)].push_back({j, i});
      }
    }
    by_od_[od_key(stops.front().mp_, stops.back().mp_)].push_back(j);
  }
}

mp_id planner::nearest_meeting_point(point const& p) const {
  return nearest(p, scenario_.meeting_points_, all_mps_);
}

mp_id planner::nearest_station(point const& p) const {
  return nearest(p, scenario_.meeting_points_, scenario_.rail_.stations());
}

itinerary planner::option_walk(rider const& r) const {
  return finish(r, option_kind::kWalkOnly,
                {walk_leg(scenario_.params_, {r.origin_, {}},
                          {r.destination_, {}}, r.departure_min_)});
}

std::optional<itinerary> planner::option_transit(rider const& r) const {
  auto const& p = scenario_.params_;
  auto const s_org = nearest_station(r.origin_);
  auto const s_dst = nearest_station(r.destination_);
  if (s_org == s_dst) {
    return std::nullopt;
  }

  auto legs = std::vector<leg>{};
  legs.push_back(
      walk_leg(p, {r.origin_, {}}, at(scenario_, s_org), r.departure_min_));
  auto const train = scenario_.rail_.trip(s_org, s_dst, legs.back().arrive_min_);
  legs.push_back({.mode_ = leg_mode::kTrain,
                  .from_ = at(scenario_, s_org),
                  .to_ = at(scenario_, s_dst),
                  .depart_min_ = train.board_min_,
                  .arrive_min_ = train.arrive_min_,
                  .wait_before_min_ = train.wait_min_});
  legs.push_back(walk_leg(p, at(scenario_, s_dst), {r.destination_, {}},
                          train.arrive_min_));
  return finish(r, option_kind::kTransitOnly, std::move(legs));
}

std::optional<itinerary> planner::option_carpool_only(rider const& r) const {
  auto const& p = scenario_.params_;
  auto const m_org = nearest_meeting_point(r.origin_);
  auto const m_dst = nearest_meeting_point(r.destination_);
  if (m_org == m_dst) {
    return std::nullopt;
  }
  auto const it = by_od_.find(od_key(m_org, m_dst));
  if (it == end(by_od_)) {
    return std::nullopt;
  }

  auto const to_stop =
      walk_leg(p, {r.origin_, {}}, at(scenario_, m_org), r.departure_min_);

  std::optional<std::uint32_t> best;
  for (auto const j : it->second) {
    auto const& jr = journeys_[j];
    auto const last = static_cast<std::uint32_t>(jr.stops_.size() - 1U);
    if (!time_le(to_stop.arrive_min_, jr.stops_.front().departure_min_) ||
        !jr.can_reserve(0U, last)) {
      continue;
    }
    // Same final walk for every candidate: compare drop-off times.
    if (!best.has_value() ||
        std::tuple{jr.stops_.back().departure_min_, to_idx(jr.driver_)} <
            std::tuple{journeys_[*best].stops_.back().departure_min_,
                       to_idx(journeys_[*best].driver_)}) {
      best = j;
    }
  }
  if (!best.has_value()) {
    return std::nullopt;
  }

  auto const& jr = journeys_[*best];
  auto const last = static_cast<std::uint32_t>(jr.stops_.size() - 1U);
  auto legs = std::vector<leg>{to_stop};
  legs.push_back(
      {.mode_ = leg_mode::kCarpool,
       .from_ = at(scenario_, m_org),
       .to_ = at(scenario_, m_dst),
       .depart_min_ = jr.stops_.front().departure_min_,
       .arrive_min_ = jr.stops_.back().departure_min_,
       .wait_before_min_ =
           std::max(0.0, jr.stops_.front().departure_min_ - to_stop.arrive_min_),
       .driver_ = jr.driver_,
       .board_stop_ = 0U,
       .alight_stop_ = last});
  legs.push_back(walk_leg(p, at(scenario_, m_dst), {r.destination_, {}},
                          jr.stops_.back().departure_min_));
  return finish(r, option_kind::kCarpoolOnly, std::move(legs));
}

namespace {

// One way of covering a first- or last-mile stage. Walk candidates carry no
// driver; the ordering key prefers walking on equal arrival.
struct stage_choice {
  double arrival_{std::numeric_limits<double>::infinity()};
  double wait_{0.0};
  double walk_km_{0.0};
  std::optional<std::uint32_t> journey_;
  std::uint32_t board_{0U};
  std::uint32_t alight_{0U};
  driver_id driver_{};

  auto key() const {
    return std::tuple{arrival_, journey_.has_value(), walk_km_,
                      to_idx(driver_), board_, alight_};
  }
};

}  // namespace

std::optional<itinerary> planner::option_carpool_transit(rider const& r) const {
  auto const& p = scenario_.params_;
  auto const& rail = scenario_.rail_;
  auto const s_org = nearest_station(r.origin_);
  auto const s_dst = nearest_station(r.destination_);
  if (s_org == s_dst) {
    return std::nullopt;
  }
  auto const org_loc = r.origin_;
  auto const dst_loc = r.destination_;

  // First mile: earliest arrival at s_org whose own wait (incl. the train)
  // and walk stay within the caps.
  auto fm = std::optional<stage_choice>{};
  auto const consider_fm = [&](stage_choice const& c) {
    auto const train = rail.trip(s_org, s_dst, c.arrival_);
    if (!within_walk(p, c.walk_km_) || !within_wait(p, c.wait_ + train.wait_min_)) {
      return;
    }
    if (!fm.has_value() || c.key() < fm->key()) {
      fm = c;
    }
  };

  {
    auto const km = road_distance(p, org_loc, scenario_.location(s_org));
    consider_fm({.arrival_ = r.departure_min_ + walk_minutes(p, km),
                 .walk_km_ = km});
  }
  if (auto const it = stops_at_.find(to_idx(s_org)); it != end(stops_at_)) {
    for (auto const [j, station_stop] : it->second) {
      auto const& jr = journeys_[j];
      for (auto i = 0U; i < station_stop; ++i) {
        auto const& board = jr.stops_[i];
        auto const km = road_distance(p, org_loc, scenario_.location(board.mp_));
        auto const ready = r.departure_min_ + walk_minutes(p, km);
        if (!time_le(ready, board.departure_min_) ||
            !jr.can_reserve(i, station_stop)) {
          continue;
        }
        consider_fm({.arrival_ = jr.stops_[station_stop].departure_min_,
                     .wait_ = std::max(0.0, board.departure_min_ - ready),
                     .walk_km_ = km,
                     .journey_ = j,
                     .board_ = i,
                     .alight_ = station_stop,
                     .driver_ = jr.driver_});
      }
    }
  }
  if (!fm.has_value()) {
    return std::nullopt;
  }

  auto const train = rail.trip(s_org, s_dst, fm->arrival_);
  auto const wait_so_far = fm->wait_ + train.wait_min_;

  // Last mile: earliest arrival at the destination within the remaining caps.
  auto lm = std::optional<stage_choice>{};
  auto const consider_lm = [&](stage_choice const& c) {
    if (!within_walk(p, fm->walk_km_ + c.walk_km_) ||
        !within_wait(p, wait_so_far + c.wait_)) {
      return;
    }
    if (!lm.has_value() || c.key() < lm->key()) {
      lm = c;
    }
  };

  {
    auto const km = road_distance(p, scenario_.location(s_dst), dst_loc);
    consider_lm({.arrival_ = train.arrive_min_ + walk_minutes(p, km),
                 .walk_km_ = km});
  }
  if (auto const it = stops_at_.find(to_idx(s_dst)); it != end(stops_at_)) {
    for (auto const [j, station_stop] : it->second) {
      auto const& jr = journeys_[j];
      auto const& board = jr.stops_[station_stop];
      if (!time_le(train.arrive_min_, board.departure_min_)) {
        continue;
      }
      for (auto k = station_stop + 1U; k < jr.stops_.size(); ++k) {
        if (!jr.can_reserve(station_stop, k)) {
          continue;
        }
        auto const km =
            road_distance(p, scenario_.location(jr.stops_[k].mp_), dst_loc);
        consider_lm(
            {.arrival_ = jr.stops_[k].departure_min_ + walk_minutes(p, km),
             .wait_ = std::max(0.0, board.departure_min_ - train.arrive_min_),
             .walk_km_ = km,
             .journey_ = j,
             .board_ = station_stop,
             .alight_ = k,
             .driver_ = jr.driver_});
      }
    }
  }
  if (!lm.has_value()) {
    return std::nullopt;
  }

  auto const fm_car = fm->journey_.has_value();
  auto const lm_car = lm->journey_.has_value();
  if (!fm_car && !lm_car) {
    return std::nullopt;
  }

  auto legs = std::vector<leg>{};
  if (fm_car) {
    auto const& jr = journeys_[*fm->journey_];
    auto const board_mp = jr.stops_[fm->board_].mp_;
    legs.push_back(
        walk_leg(p, {org_loc, {}}, at(scenario_, board_mp), r.departure_min_));
    legs.push_back({.mode_ = leg_mode::kCarpool,
                    .from_ = at(scenario_, board_mp),
                    .to_ = at(scenario_, s_org),
                    .depart_min_ = jr.stops_[fm->board_].departure_min_,
                    .arrive_min_ = fm->arrival_,
                    .wait_before_min_ = fm->wait_,
                    .driver_ = jr.driver_,
                    .board_stop_ = fm->board_,
                    .alight_stop_ = fm->alight_});
  } else {
    legs.push_back(
        walk_leg(p, {org_loc, {}}, at(scenario_, s_org), r.departure_min_));
  }
  legs.push_back({.mode_ = leg_mode::kTrain,
                  .from_ = at(scenario_, s_org),
                  .to_ = at(scenario_, s_dst),
                  .depart_min_ = train.board_min_,
                  .arrive_min_ = train.arrive_min_,
                  .wait_before_min_ = train.wait_min_});
  if (lm_car) {
    auto const& jr = journeys_[*lm->journey_];
    auto const alight_mp = jr.stops_[lm->alight_].mp_;
    auto const alight_time = jr.stops_[lm->alight_].departure_min_;
    legs.push_back({.mode_ = leg_mode::kCarpool,
                    .from_ = at(scenario_, s_dst),
                    .to_ = at(scenario_, alight_mp),
                    .depart_min_ = jr.stops_[lm->board_].departure_min_,
                    .arrive_min_ = alight_time,
                    .wait_before_min_ = lm->wait_,
                    .driver_ = jr.driver_,
                    .board_stop_ = lm->board_,
                    .alight_stop_ = lm->alight_});
    legs.push_back(
        walk_leg(p, at(scenario_, alight_mp), {dst_loc, {}}, alight_time));
  } else {
    legs.push_back(
        walk_leg(p, at(scenario_, s_dst), {dst_loc, {}}, train.arrive_min_));
  }

  auto const kind = fm_car && lm_car ? option_kind::kCarpoolBothTransit
                    : fm_car         ? option_kind::kCarpoolFirstMileTransit
                                     : option_kind::kTransitCarpoolLastMile;
  return finish(r, kind, std::move(legs));
}

bool planner::feasible(itinerary const& it, rider const& r) const {
  auto const& p = scenario_.params_;
  if (!within_wait(p, it.total_wait_min_) ||
      !within_walk(p, it.total_walk_km_)) {
    return false;
  }
  if (it.kind_ == option_kind::kWalkOnly) {
    return true;
  }
  auto const walk_min =
      travel_time(p, travel_mode::kWalk, r.origin_, r.destination_);
  return time_lt(it.journey_min_, walk_min);
}

outcome planner::select_option(rider const& r,
                               system_kind const system,
                               std::set<option_kind> const& excluded) const {
  auto menu = std::vector<itinerary>{};
  auto const offer = [&](std::optional<itinerary> it) {
    if (it.has_value() && !excluded.contains(it->kind_) && feasible(*it, r)) {
      menu.push_back(std::move(*it));
    }
  };

  offer(option_walk(r));
  offer(option_transit(r));
  if (system != system_kind::kNoCarpooling) {
    offer(option_carpool_only(r));
  }
  if (system == system_kind::kIntegrated) {
    offer(option_carpool_transit(r));
  }

  if (menu.empty()) {
    return {r.id_, std::nullopt};
  }
  auto const key = [](itinerary const& it) {
    return std::tuple{it.arrival_min_, it.legs_.size(), it.total_walk_km_,
                      static_cast<int>(it.kind_)};
  };
  auto best = std::min_element(
      begin(menu), end(menu),
      [&](auto const& a, auto const& b) { return key(a) < key(b); });
  return {r.id_, std::move(*best)};
}

audit_result audit_itinerary(scenario_params const& p,
                             rider const& r,
                             itinerary const& it) {
  auto res = audit_result{};
  if (it.legs_.empty()) {
    res.chain_ok_ = false;
    return res;
  }

  auto ready = r.departure_min_;
  auto here = r.origin_;
  auto wait = 0.0;
  auto walk_km = 0.0;
  for (auto const& l : it.legs_) {
    if (!(l.from_.location_ == here) || time_lt(l.arrive_min_, l.depart_min_) ||
        time_lt(l.depart_min_, ready)) {
      res.chain_ok_ = false;
    }
    if (std::abs(l.wait_before_min_ - (l.depart_min_ - ready)) > 1e-9) {
      res.chain_ok_ = false;
    }
    wait += std::max(0.0, l.depart_min_ - ready);
    if (l.mode_ == leg_mode::kWalk) {
      auto const km = road_distance(p, l.from_.location_, l.to_.location_);
      walk_km += km;
      if (std::abs((l.arrive_min_ - l.depart_min_) -
                   km / p.walk_speed_kmh_ * 60.0) > 1e-6) {
        res.chain_ok_ = false;
      }
    }
    ready = l.arrive_min_;
    here = l.to_.location_;
  }
  if (!(here == r.destination_)) {
    res.chain_ok_ = false;
  }

  res.wait_ok_ = time_le(wait, p.max_wait_min_);
  res.walk_ok_ = walk_km <= p.max_walk_km_ + 1e-9;
  if (it.kind_ != option_kind::kWalkOnly) {
    auto const walk_min =
        travel_time(p, travel_mode::kWalk, r.origin_, r.destination_);
    res.faster_than_walking_ok_ = time_lt(ready - r.departure_min_, walk_min);
  }
  return res;
}

}  // namespace carpool
