#include "gtest/gtest.h"

#include <algorithm>
#include <vector>

#include "carpool/model.h"
#include "carpool/rng.h"
#include "carpool/scenario.h"

#include "oracle.h"

using namespace carpool;

namespace {

std::vector<meeting_point> random_points(std::uint64_t const seed,
                                         std::size_t const n) {
  auto r = rng{seed, stream::kMeetingPoints};
  auto out = std::vector<meeting_point>{};
  for (auto i = 0U; i != n; ++i) {
    out.push_back({mp_id{i}, {r.uniform(0.0, 15.0), r.uniform(0.0, 8.0)}, false});
  }
  return out;
}

std::vector<mp_id> ids_of(std::span<meeting_point const> points) {
  auto out = std::vector<mp_id>{};
  for (auto const& m : points) {
    out.push_back(m.id_);
  }
  return out;
}

rail_line default_rail() {
  auto const p = scenario_params{};
  auto mps = std::vector<meeting_point>{};
  for (auto const& loc : default_station_locations(p)) {
    mps.push_back({mp_id{static_cast<std::uint32_t>(mps.size())}, loc, true});
  }
  return rail_line::from_meeting_points(mps, p.train_headway_min_,
                                        p.train_speed_kmh_);
}

}  // namespace

TEST(model, road_distance_applies_circuity) {
  auto const p = scenario_params{};
  EXPECT_DOUBLE_EQ(road_distance(p, {0.0, 0.0}, {3.0, 4.0}), 6.0);
  EXPECT_EQ(road_distance(p, {2.5, 1.0}, {2.5, 1.0}), 0.0);
}

TEST(model, road_distance_symmetric_and_triangle) {
  auto const p = scenario_params{};
  auto r = rng{11U, stream::kRiders};
  auto const draw = [&]() -> point {
    return {r.uniform(0.0, 15.0), r.uniform(0.0, 8.0)};
  };
  for (auto i = 0; i != 100; ++i) {
    auto const a = draw();
    auto const b = draw();
    auto const c = draw();
    EXPECT_EQ(road_distance(p, a, b), road_distance(p, b, a));
    EXPECT_LE(road_distance(p, a, b),
              road_distance(p, a, c) + road_distance(p, c, b) + 1e-12);
    EXPECT_GT(road_distance(p, a, b), 0.0);
  }
}

TEST(model, travel_time_walk_and_car) {
  auto const p = scenario_params{};
  // 1.5 km Euclidean -> 1.8 km walked at 4.5 km/h.
  EXPECT_NEAR(travel_time(p, travel_mode::kWalk, {0.0, 0.0}, {1.5, 0.0}), 24.0,
              1e-12);
  // 5 km Euclidean -> 6 km driven at 38 km/h.
  EXPECT_NEAR(travel_time(p, travel_mode::kCar, {0.0, 0.0}, {3.0, 4.0}),
              6.0 / 38.0 * 60.0, 1e-12);
  EXPECT_NEAR(travel_time(p, travel_mode::kCar, {0.0, 0.0}, {3.0, 4.0}),
              9.474, 1e-3);
  EXPECT_EQ(travel_time(p, travel_mode::kWalk, {1.0, 1.0}, {1.0, 1.0}), 0.0);
  EXPECT_EQ(travel_time(p, travel_mode::kCar, {1.0, 1.0}, {1.0, 1.0}), 0.0);
}

TEST(model, nearest_coincident_point) {
  auto const pts = random_points(3U, 20U);
  auto const ids = ids_of(pts);
  EXPECT_EQ(nearest(pts[7].location_, pts, ids), mp_id{7U});
}

TEST(model, nearest_tie_takes_lower_id) {
  auto const pts = std::vector<meeting_point>{
      {mp_id{0U}, {5.0, 5.0}, false},
      {mp_id{1U}, {1.0, 0.0}, false},
      {mp_id{2U}, {-1.0, 0.0}, false}};
  auto const reversed = std::vector<mp_id>{mp_id{2U}, mp_id{1U}};
  EXPECT_EQ(nearest({0.0, 0.0}, pts, reversed), mp_id{1U});
}

TEST(model, nearest_matches_exhaustive_scan) {
  auto const pts = random_points(5U, 200U);
  auto const ids = ids_of(pts);
  auto r = rng{6U, stream::kRiders};
  for (auto i = 0; i != 500; ++i) {
    auto const p = point{r.uniform(0.0, 15.0), r.uniform(0.0, 8.0)};
    EXPECT_EQ(nearest(p, pts, ids), oracle::nearest_by_sort(p, pts, ids));
  }
}

TEST(model, nearest_invariant_under_permutation) {
  auto const pts = random_points(8U, 50U);
  auto ids = ids_of(pts);
  auto const p = point{7.0, 3.0};
  auto const expected = nearest(p, pts, ids);
  auto r = rng{9U, stream::kRiders};
  for (auto i = 0; i != 20; ++i) {
    for (auto k = ids.size() - 1U; k > 0U; --k) {
      std::swap(ids[k], ids[r.uniform_int(0U, k)]);
    }
    EXPECT_EQ(nearest(p, pts, ids), expected);
  }
}

TEST(model, nearest_empty_candidates_throws) {
  auto const pts = random_points(1U, 3U);
  EXPECT_THROW(nearest({0.0, 0.0}, pts, std::span<mp_id const>{}), error);
}

TEST(model, default_stations_on_mid_line) {
  auto const locs = default_station_locations(scenario_params{});
  ASSERT_EQ(locs.size(), 10U);
  for (auto k = 0U; k != locs.size(); ++k) {
    EXPECT_DOUBLE_EQ(locs[k].x_km_, 0.75 + 1.5 * k);
    EXPECT_DOUBLE_EQ(locs[k].y_km_, 4.0);
  }
  auto const rail = default_rail();
  for (auto k = 1U; k != rail.cumulative_km().size(); ++k) {
    EXPECT_DOUBLE_EQ(rail.cumulative_km()[k] - rail.cumulative_km()[k - 1U], 1.5);
  }
}

TEST(model, train_adjacent_stations_ride_time) {
  auto const rail = default_rail();
  auto const t = rail.trip(mp_id{0U}, mp_id{1U}, 0.0);
  EXPECT_DOUBLE_EQ(t.arrive_min_ - t.board_min_, 1.5);
}

TEST(model, train_timetable_trace) {
  // Station 2 sits 3 km from the western terminus: eastbound trains pass at
  // 3, 18, 33, ... so a rider ready at 20 boards at 33.
  auto const rail = default_rail();
  auto const t = rail.trip(mp_id{2U}, mp_id{5U}, 20.0);
  EXPECT_DOUBLE_EQ(t.board_min_, 33.0);
  EXPECT_DOUBLE_EQ(t.wait_min_, 13.0);
  EXPECT_DOUBLE_EQ(t.arrive_min_, 37.5);
}

TEST(model, train_ready_at_departure_has_no_wait) {
  auto const rail = default_rail();
  auto const t = rail.trip(mp_id{2U}, mp_id{5U}, 18.0);
  EXPECT_EQ(t.wait_min_, 0.0);
  EXPECT_DOUBLE_EQ(t.board_min_, 18.0);
}

TEST(model, train_westbound) {
  // Westbound trains leave station 9 at 0, 15, ...; station 7 is 3 km on.
  auto const rail = default_rail();
  auto const t = rail.trip(mp_id{7U}, mp_id{0U}, 4.0);
  EXPECT_DOUBLE_EQ(t.board_min_, 18.0);
  EXPECT_DOUBLE_EQ(t.arrive_min_, 18.0 + 10.5);
}

TEST(model, train_wait_below_headway) {
  auto const rail = default_rail();
  auto r = rng{21U, stream::kRiders};
  for (auto i = 0; i != 2000; ++i) {
    auto const a = r.uniform_int(0U, 9U);
    auto b = r.uniform_int(0U, 8U);
    if (b >= a) {
      ++b;
    }
    auto const ready = r.uniform(0.0, 200.0);
    auto const t = rail.trip(mp_id{static_cast<std::uint32_t>(a)},
                             mp_id{static_cast<std::uint32_t>(b)}, ready);
    EXPECT_GE(t.wait_min_, 0.0);
    EXPECT_LT(t.wait_min_, rail.headway_min());
    EXPECT_NEAR(t.board_min_ - ready, t.wait_min_, 1e-9);
  }
}

TEST(model, train_same_station_throws) {
  auto const rail = default_rail();
  EXPECT_THROW(rail.trip(mp_id{3U}, mp_id{3U}, 0.0), error);
}

TEST(model, params_validation) {
  auto p = scenario_params{};
  EXPECT_NO_THROW(p.validate());
  p.circuity_ = 0.9;
  EXPECT_THROW(p.validate(), error);
  p = scenario_params{};
  p.measurement_window_min_ = 200.0;
  EXPECT_THROW(p.validate(), error);
  p = scenario_params{};
  p.car_speed_kmh_ = 0.0;
  EXPECT_THROW(p.validate(), error);
  p = scenario_params{};
  p.max_detour_ratio_ = 0.99;
  EXPECT_THROW(p.validate(), error);
}
