#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace carpool {

enum class mp_id : std::uint32_t {};
enum class rider_id : std::uint32_t {};
enum class driver_id : std::uint32_t {};

template <typename Id>
constexpr std::uint32_t to_idx(Id const id) {
  return static_cast<std::uint32_t>(id);
}

// Times are continuous minutes, distances kilometres.
constexpr auto kTimeEps = 1e-9;

inline bool time_le(double const a, double const b) { return a <= b + kTimeEps; }
inline bool time_lt(double const a, double const b) { return a < b - kTimeEps; }

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct scenario_params {
  double area_width_km_{15.0};
  double area_height_km_{8.0};
  std::uint32_t n_stations_{10U};
  double station_spacing_km_{1.5};
  double walk_speed_kmh_{4.5};
  double car_speed_kmh_{38.0};
  double train_speed_kmh_{60.0};
  double rider_density_per_km2_h_{8.3};
  double driver_density_per_km2_h_{4.8};
  double meeting_point_density_per_km2_{3.55};
  std::uint32_t station_cluster_min_{4U};
  std::uint32_t station_cluster_max_{5U};
  double station_cluster_radius_km_{0.3};
  std::uint32_t max_seats_{4U};
  double circuity_{1.2};
  double max_wait_min_{45.0};
  double max_walk_km_{2.5};
  double max_detour_ratio_{1.15};
  double generation_window_min_{180.0};
  double measurement_window_min_{60.0};
  double train_headway_min_{15.0};
  std::uint64_t rng_seed_{42U};

  double area_km2() const { return area_width_km_ * area_height_km_; }

  // Throws carpool::error naming the first violated constraint.
  void validate() const;

  friend bool operator==(scenario_params const&,
                         scenario_params const&) = default;
};

struct point {
  double x_km_{0.0};
  double y_km_{0.0};
  friend bool operator==(point const&, point const&) = default;
};

double euclidean(point const& p, point const& q);

struct meeting_point {
  mp_id id_{};
  point location_;
  bool is_station_{false};
  friend bool operator==(meeting_point const&, meeting_point const&) = default;
};

struct rider {
  rider_id id_{};
  point origin_;
  point destination_;
  double departure_min_{0.0};
  friend bool operator==(rider const&, rider const&) = default;
};

struct driver {
  driver_id id_{};
  mp_id origin_{};
  mp_id destination_{};
  double departure_min_{0.0};
  std::uint32_t seats_{4U};
  friend bool operator==(driver const&, driver const&) = default;
};

enum class travel_mode : std::uint8_t { kWalk, kCar };

// circuity x Euclidean distance.
double road_distance(scenario_params const&, point const& p, point const& q);

double travel_time(scenario_params const&,
                   travel_mode,
                   point const& p,
                   point const& q);

// Closest candidate by Euclidean distance, lowest id on ties.
mp_id nearest(point const& p,
              std::span<meeting_point const> points,
              std::span<mp_id const> candidates);

struct train_trip {
  double board_min_{0.0};
  double arrive_min_{0.0};
  double wait_min_{0.0};
};

// Bidirectional line with one departure from each terminus every headway,
// starting at t = 0, zero dwell.
struct rail_line {
  rail_line() = default;
  rail_line(std::vector<mp_id> stations,
            std::vector<double> cumulative_km,
            double headway_min,
            double speed_kmh);

  // Stations are taken from the flagged meeting points, ordered by x.
  static rail_line from_meeting_points(std::span<meeting_point const>,
                                       double headway_min,
                                       double speed_kmh);

  std::optional<std::size_t> position(mp_id) const;
  bool is_station(mp_id const id) const { return position(id).has_value(); }

  std::span<mp_id const> stations() const { return stations_; }
  std::span<double const> cumulative_km() const { return cumulative_km_; }
  double headway_min() const { return headway_min_; }
  double speed_kmh() const { return speed_kmh_; }

  train_trip trip(mp_id from, mp_id to, double ready_min) const;

private:
  std::vector<mp_id> stations_;
  std::vector<double> cumulative_km_;
  double headway_min_{15.0};
  double speed_kmh_{60.0};
};

// Stations evenly spaced on the horizontal mid-line, centred in the area.
std::vector<point> default_station_locations(scenario_params const&);

}  // namespace carpool
