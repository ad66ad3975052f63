#include "carpool/model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fmt/core.h"

namespace carpool {

void scenario_params::validate() const {
  auto const require = [](bool const cond, char const* what) {
    if (!cond) {
      throw error{fmt::format("invalid scenario parameters: {}", what)};
    }
  };
  require(area_width_km_ > 0.0 && area_height_km_ > 0.0,
          "area dimensions must be positive");
  require(n_stations_ >= 2U, "at least two stations required");
  require(station_spacing_km_ > 0.0 &&
              station_spacing_km_ * (n_stations_ - 1U) <= area_width_km_,
          "stations must fit inside the area width");
  require(walk_speed_kmh_ > 0.0 && car_speed_kmh_ > 0.0 &&
              train_speed_kmh_ > 0.0,
          "all speeds must be positive");
  require(rider_density_per_km2_h_ >= 0.0 && driver_density_per_km2_h_ >= 0.0 &&
              meeting_point_density_per_km2_ >= 0.0,
          "densities must be non-negative");
  require(station_cluster_min_ <= station_cluster_max_,
          "station cluster min exceeds max");
  require(station_cluster_radius_km_ >= 0.0, "cluster radius negative");
  require(max_seats_ >= 1U, "vehicles need at least one seat");
  require(circuity_ >= 1.0, "circuity must be >= 1");
  require(max_wait_min_ >= 0.0 && max_walk_km_ >= 0.0,
          "feasibility bounds must be non-negative");
  require(max_detour_ratio_ >= 1.0, "max detour ratio must be >= 1");
  require(generation_window_min_ > 0.0, "generation window must be positive");
  require(measurement_window_min_ > 0.0 &&
              measurement_window_min_ <= generation_window_min_,
          "measurement window must lie inside the generation window");
  require(train_headway_min_ > 0.0, "train headway must be positive");
}

double euclidean(point const& p, point const& q) {
  return std::hypot(p.x_km_ - q.x_km_, p.y_km_ - q.y_km_);
}

double road_distance(scenario_params const& params,
                     point const& p,
                     point const& q) {
  return params.circuity_ * euclidean(p, q);
}

double travel_time(scenario_params const& params,
                   travel_mode const mode,
                   point const& p,
                   point const& q) {
  auto const speed = mode == travel_mode::kWalk ? params.walk_speed_kmh_
                                                : params.car_speed_kmh_;
  return road_distance(params, p, q) / speed * 60.0;
}

mp_id nearest(point const& p,
              std::span<meeting_point const> points,
              std::span<mp_id const> candidates) {
  if (candidates.empty()) {
    throw error{"nearest: empty candidate set"};
  }
  auto best = candidates.front();
  auto best_dist = euclidean(p, points[to_idx(best)].location_);
  for (auto const c : candidates.subspan(1U)) {
    auto const d = euclidean(p, points[to_idx(c)].location_);
    if (d < best_dist || (d == best_dist && to_idx(c) < to_idx(best))) {
      best = c;
      best_dist = d;
    }
  }
  return best;
}

rail_line::rail_line(std::vector<mp_id> stations,
                     std::vector<double> cumulative_km,
                     double const headway_min,
                     double const speed_kmh)
    : stations_{std::move(stations)},
      cumulative_km_{std::move(cumulative_km)},
      headway_min_{headway_min},
      speed_kmh_{speed_kmh} {
  if (stations_.size() < 2U || stations_.size() != cumulative_km_.size()) {
    throw error{"rail line needs >= 2 stations with one offset each"};
  }
  if (cumulative_km_.front() != 0.0 ||
      std::adjacent_find(begin(cumulative_km_), end(cumulative_km_),
                         std::greater_equal<>{}) != end(cumulative_km_)) {
    throw error{"rail line offsets must start at 0 and strictly increase"};
  }
  if (headway_min_ <= 0.0 || speed_kmh_ <= 0.0) {
    throw error{"rail line headway and speed must be positive"};
  }
}

rail_line rail_line::from_meeting_points(std::span<meeting_point const> points,
                                         double const headway_min,
                                         double const speed_kmh) {
  auto ordered = std::vector<meeting_point>{};
  for (auto const& m : points) {
    if (m.is_station_) {
      ordered.push_back(m);
    }
  }
  std::stable_sort(begin(ordered), end(ordered), [](auto&& a, auto&& b) {
    return a.location_.x_km_ < b.location_.x_km_;
  });

  auto ids = std::vector<mp_id>{};
  auto offsets = std::vector<double>{};
  for (auto const& s : ordered) {
    offsets.push_back(ids.empty() ? 0.0
                                  : offsets.back() +
                                        euclidean(points[to_idx(ids.back())]
                                                      .location_,
                                                  s.location_));
    ids.push_back(s.id_);
  }
  return rail_line{std::move(ids), std::move(offsets), headway_min, speed_kmh};
}

std::optional<std::size_t> rail_line::position(mp_id const id) const {
  auto const it = std::find(begin(stations_), end(stations_), id);
  if (it == end(stations_)) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(std::distance(begin(stations_), it));
}

train_trip rail_line::trip(mp_id const from,
                           mp_id const to,
                           double const ready_min) const {
  auto const a = position(from);
  auto const b = position(to);
  if (!a || !b || *a == *b) {
    throw error{"train trip requires two distinct stations of the line"};
  }

  auto const minutes_per_km = 60.0 / speed_kmh_;
  auto const forward = *a < *b;
  auto const from_terminus_km =
      forward ? cumulative_km_[*a] : cumulative_km_.back() - cumulative_km_[*a];
  auto const offset = from_terminus_km * minutes_per_km;

  // Smallest k with offset + k * headway >= ready (within tolerance).
  auto const k = std::max(
      0.0, std::ceil((ready_min - offset - kTimeEps) / headway_min_));
  auto const board = offset + k * headway_min_;
  auto const ride_km = std::abs(cumulative_km_[*b] - cumulative_km_[*a]);
  auto const arrive = board + ride_km * minutes_per_km;
  return {.board_min_ = board,
          .arrive_min_ = arrive,
          .wait_min_ = std::max(0.0, board - ready_min)};
}

std::vector<point> default_station_locations(scenario_params const& params) {
  auto const span = params.station_spacing_km_ * (params.n_stations_ - 1U);
  auto const x0 = (params.area_width_km_ - span) / 2.0;
  auto out = std::vector<point>{};
  out.reserve(params.n_stations_);
  for (auto k = 0U; k != params.n_stations_; ++k) {
    out.push_back({x0 + k * params.station_spacing_km_,
                   params.area_height_km_ / 2.0});
  }
  return out;
}

}  // namespace carpool
