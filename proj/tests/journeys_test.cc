#include "gtest/gtest.h"

#include <algorithm>

#include "carpool/journeys.h"
#include "carpool/rng.h"

#include "oracle.h"

using namespace carpool;

namespace {

// Default rail (stations 0..9 at x = 0.75 + 1.5k, y = 4) plus extra points.
scenario with_points(std::vector<point> const& extra,
                     scenario_params p = {}) {
  auto mps = std::vector<meeting_point>{};
  for (auto const& loc : default_station_locations(p)) {
    mps.push_back({mp_id{static_cast<std::uint32_t>(mps.size())}, loc, true});
  }
  for (auto const& loc : extra) {
    mps.push_back({mp_id{static_cast<std::uint32_t>(mps.size())}, loc, false});
  }
  return make_scenario(p, std::move(mps), {}, {});
}

driver make_driver(std::uint32_t const org,
                   std::uint32_t const dst,
                   double const t = 0.0) {
  return {.id_ = driver_id{0U},
          .origin_ = mp_id{org},
          .destination_ = mp_id{dst},
          .departure_min_ = t,
          .seats_ = 4U};
}

}  // namespace

TEST(journeys, current_system_has_one_candidate) {
  auto const s = with_points({{4.0, 4.0}, {10.0, 4.0}});
  auto const d = make_driver(10U, 11U);
  EXPECT_EQ(candidate_journeys(s, d, system_kind::kCurrent).size(), 1U);
  EXPECT_EQ(candidate_journeys(s, d, system_kind::kNoCarpooling).size(), 1U);
  EXPECT_EQ(candidate_journeys(s, d, system_kind::kIntegrated).size(), 4U);
}

TEST(journeys, shared_nearest_station_deduplicates) {
  // Both endpoints are closest to station 2 at (3.75, 4).
  auto const s = with_points({{3.5, 5.0}, {4.0, 3.0}});
  auto const c = candidate_journeys(s, make_driver(10U, 11U),
                                    system_kind::kIntegrated);
  ASSERT_EQ(c.size(), 3U);
  EXPECT_EQ(c[1].stops_, (std::vector<mp_id>{mp_id{10U}, mp_id{2U}, mp_id{11U}}));
  EXPECT_EQ(c[2].stops_, c[1].stops_);
}

TEST(journeys, both_detours_within_cap) {
  // Direct 6 km -> 7.2 km road; via (3.75,4) and (9.75,4): 6.5 km -> 7.8 km.
  auto const s = with_points({{4.0, 4.0}, {10.0, 4.0}});
  auto const d = make_driver(10U, 11U, 5.0);
  auto const c = candidate_journeys(s, d, system_kind::kIntegrated);
  ASSERT_EQ(c.size(), 4U);
  EXPECT_NEAR(c[0].distance_km_, 7.2, 1e-12);
  EXPECT_NEAR(c[3].distance_km_, 7.8, 1e-12);
  EXPECT_NEAR(c[3].distance_km_ / c[0].distance_km_, 1.0833333333333333, 1e-12);

  auto const j = planned_journey(s, d, system_kind::kIntegrated);
  EXPECT_EQ(j.planned_, detour::kBoth);
  ASSERT_EQ(j.stops_.size(), 4U);
  EXPECT_EQ(j.stops_[1].mp_, mp_id{2U});
  EXPECT_EQ(j.stops_[2].mp_, mp_id{6U});
  EXPECT_EQ(j.first_mile_stop_, 1U);
  EXPECT_EQ(j.last_mile_stop_, 2U);
  EXPECT_EQ(j.stops_[0].departure_min_, 5.0);
  // 0.3 km, 7.2 km, 0.3 km at 38 km/h.
  EXPECT_NEAR(j.stops_[1].departure_min_, 5.0 + 0.3 / 38.0 * 60.0, 1e-12);
  EXPECT_NEAR(j.stops_[3].departure_min_, 5.0 + 7.8 / 38.0 * 60.0, 1e-12);
  EXPECT_EQ(j.occupancy_, (std::vector<std::uint32_t>{0U, 0U, 0U}));
}

TEST(journeys, far_stations_keep_direct_route) {
  auto const s = with_points({{1.0, 0.5}, {14.0, 0.5}});
  auto const j =
      planned_journey(s, make_driver(10U, 11U), system_kind::kIntegrated);
  EXPECT_EQ(j.planned_, detour::kNone);
  EXPECT_EQ(j.stops_.size(), 2U);
  EXPECT_EQ(j.planned_km_, j.direct_km_);
}

TEST(journeys, ratio_exactly_at_cap_is_accepted) {
  auto p = scenario_params{};
  // Origin near station 2, destination far from any station.
  auto const pts = std::vector<point>{{4.0, 4.6}, {12.0, 7.5}};
  auto s = with_points(pts, p);
  auto const d = make_driver(10U, 11U);
  auto const c = candidate_journeys(s, d, system_kind::kIntegrated);
  auto const fm_ratio = c[1].distance_km_ / c[0].distance_km_;
  ASSERT_LT(fm_ratio, c[2].distance_km_ / c[0].distance_km_);

  p.max_detour_ratio_ = fm_ratio;
  s = with_points(pts, p);
  EXPECT_EQ(planned_journey(s, d, system_kind::kIntegrated).planned_,
            detour::kFirstMile);

  p.max_detour_ratio_ = fm_ratio * (1.0 - 1e-9);
  s = with_points(pts, p);
  EXPECT_EQ(planned_journey(s, d, system_kind::kIntegrated).planned_,
            detour::kNone);
}

TEST(journeys, single_detours_prefer_shorter_then_first_mile) {
  // Symmetric layout: both single detours add the same distance.
  auto const sym = with_points({{3.75, 4.6}, {9.75, 4.6}});
  auto p = scenario_params{};
  auto const c = candidate_journeys(sym, make_driver(10U, 11U),
                                    system_kind::kIntegrated);
  ASSERT_EQ(c.size(), 4U);
  EXPECT_DOUBLE_EQ(c[1].distance_km_, c[2].distance_km_);
  // Allow a single detour but not both.
  p.max_detour_ratio_ = (c[1].distance_km_ + c[3].distance_km_) / 2.0 /
                        c[0].distance_km_;
  auto const s = with_points({{3.75, 4.6}, {9.75, 4.6}}, p);
  EXPECT_EQ(planned_journey(s, make_driver(10U, 11U), system_kind::kIntegrated)
                .planned_,
            detour::kFirstMile);

  // Last-mile station closer to the route: last mile wins.
  auto const asym = with_points({{3.75, 5.0}, {9.75, 4.3}});
  auto const c2 = candidate_journeys(asym, make_driver(10U, 11U),
                                     system_kind::kIntegrated);
  ASSERT_GT(c2[1].distance_km_, c2[2].distance_km_);
  p.max_detour_ratio_ = c2[1].distance_km_ / c2[0].distance_km_;
  ASSERT_LT(p.max_detour_ratio_ * c2[0].distance_km_, c2[3].distance_km_);
  auto const s2 = with_points({{3.75, 5.0}, {9.75, 4.3}}, p);
  EXPECT_EQ(planned_journey(s2, make_driver(10U, 11U), system_kind::kIntegrated)
                .planned_,
            detour::kLastMile);
}

TEST(journeys, fifth_rider_is_refused) {
  auto const s = with_points({{4.0, 4.0}, {10.0, 4.0}});
  auto j = planned_journey(s, make_driver(10U, 11U), system_kind::kIntegrated);
  for (auto r = 0U; r != 4U; ++r) {
    EXPECT_TRUE(j.reserve(rider_id{r}, 0U, 3U));
  }
  auto const before = j.occupancy_;
  EXPECT_FALSE(j.reserve(rider_id{4U}, 1U, 2U));
  EXPECT_EQ(j.occupancy_, before);
  EXPECT_EQ(j.reservations_.size(), 4U);
  EXPECT_EQ(j.max_occupancy(), 4U);
}

TEST(journeys, disjoint_segments_never_conflict) {
  auto const s = with_points({{4.0, 4.0}, {10.0, 4.0}});
  auto j = planned_journey(s, make_driver(10U, 11U), system_kind::kIntegrated);
  for (auto r = 0U; r != 4U; ++r) {
    ASSERT_TRUE(j.reserve(rider_id{r}, 0U, 1U));
  }
  for (auto r = 4U; r != 8U; ++r) {
    EXPECT_TRUE(j.reserve(rider_id{r}, 1U, 3U));
  }
  EXPECT_EQ(j.occupancy_, (std::vector<std::uint32_t>{4U, 4U, 4U}));
}

TEST(journeys, release_restores_ledger) {
  auto const s = with_points({{4.0, 4.0}, {10.0, 4.0}});
  auto j = planned_journey(s, make_driver(10U, 11U), system_kind::kIntegrated);
  ASSERT_TRUE(j.reserve(rider_id{0U}, 0U, 2U));
  ASSERT_TRUE(j.reserve(rider_id{1U}, 1U, 3U));
  j.release({rider_id{0U}, 0U, 2U});
  EXPECT_EQ(j.occupancy_, (std::vector<std::uint32_t>{0U, 1U, 1U}));
  EXPECT_THROW(j.release({rider_id{0U}, 0U, 2U}), error);
  EXPECT_THROW(j.reserve(rider_id{2U}, 2U, 2U), error);
}

TEST(journeys, occupancy_matches_recount) {
  auto const s = with_points({{4.0, 4.0}, {10.0, 4.0}});
  auto r = rng{77U, stream::kRiders};
  for (auto round = 0; round != 200; ++round) {
    auto j = planned_journey(s, make_driver(10U, 11U), system_kind::kIntegrated);
    for (auto k = 0U; k != 12U; ++k) {
      auto const a = static_cast<std::uint32_t>(r.uniform_int(0U, 2U));
      auto const b = static_cast<std::uint32_t>(r.uniform_int(a + 1U, 3U));
      j.reserve(rider_id{k}, a, b);
    }
    auto recount = std::vector<std::uint32_t>(3U, 0U);
    for (auto const& res : j.reservations_) {
      for (auto seg = res.board_; seg != res.alight_; ++seg) {
        ++recount[seg];
      }
    }
    EXPECT_EQ(j.occupancy_, recount);
    EXPECT_EQ(j.max_occupancy(), *std::max_element(begin(recount), end(recount)));
    EXPECT_LE(j.max_occupancy(), 4U);
  }
}

TEST(journeys, realized_detours_follow_reservations) {
  auto const s = with_points({{4.0, 4.0}, {10.0, 4.0}});
  auto j = planned_journey(s, make_driver(10U, 11U), system_kind::kIntegrated);

  auto const none = realized_detours(s, j);
  EXPECT_EQ(none.detours_, detour::kNone);
  EXPECT_NEAR(none.driven_km_, j.direct_km_, 1e-12);

  ASSERT_TRUE(j.reserve(rider_id{0U}, 1U, 3U));
  auto const fm = realized_detours(s, j);
  EXPECT_EQ(fm.detours_, detour::kFirstMile);
  // org -> station 2 -> dst: 0.25 + 6.25 Euclidean.
  EXPECT_NEAR(fm.driven_km_, 1.2 * 6.5, 1e-12);

  ASSERT_TRUE(j.reserve(rider_id{1U}, 0U, 2U));
  EXPECT_EQ(realized_detours(s, j).detours_, detour::kBoth);
  EXPECT_NEAR(realized_detours(s, j).driven_km_, j.planned_km_, 1e-12);
}

TEST(journeys, realized_detours_match_exhaustive_check) {
  auto const s = with_points({{4.0, 4.0}, {10.0, 4.0}});
  auto r = rng{31U, stream::kDrivers};
  for (auto round = 0; round != 200; ++round) {
    auto j = planned_journey(s, make_driver(10U, 11U), system_kind::kIntegrated);
    auto const n = r.uniform_int(0U, 3U);
    for (auto k = 0U; k != n; ++k) {
      auto const a = static_cast<std::uint32_t>(r.uniform_int(0U, 2U));
      auto const b = static_cast<std::uint32_t>(r.uniform_int(a + 1U, 3U));
      j.reserve(rider_id{k}, a, b);
    }
    auto touched = std::vector<bool>(4U, false);
    for (auto const& res : j.reservations_) {
      touched[res.board_] = true;
      touched[res.alight_] = true;
    }
    auto expected = detour::kNone;
    if (touched[1]) {
      expected = expected | detour::kFirstMile;
    }
    if (touched[2]) {
      expected = expected | detour::kLastMile;
    }
    EXPECT_EQ(realized_detours(s, j).detours_, expected);
  }
}

TEST(journeys, planned_journeys_respect_cap_and_timing) {
  auto p = scenario_params{};
  p.rider_density_per_km2_h_ = 0.0;
  for (auto seed = 1U; seed != 4U; ++seed) {
    p.rng_seed_ = seed;
    auto const s = generate_scenario(p);
    for (auto const& d : s.drivers_) {
      auto const j = planned_journey(s, d, system_kind::kIntegrated);
      EXPECT_LE(j.planned_km_ / j.direct_km_, p.max_detour_ratio_ + 1e-12);
      EXPECT_EQ(j.stops_.front().mp_, d.origin_);
      EXPECT_EQ(j.stops_.back().mp_, d.destination_);
      EXPECT_EQ(j.stops_.front().departure_min_, d.departure_min_);
      for (auto i = 1U; i < j.stops_.size(); ++i) {
        auto const gap = j.stops_[i].departure_min_ - j.stops_[i - 1U].departure_min_;
        EXPECT_GT(gap, 0.0);
        EXPECT_NEAR(gap,
                    travel_time(p, travel_mode::kCar,
                                s.location(j.stops_[i - 1U].mp_),
                                s.location(j.stops_[i].mp_)),
                    1e-9);
      }

      auto const o = oracle::plan_by_enumeration(s, d, system_kind::kIntegrated);
      ASSERT_EQ(o.stops_.size(), j.stops_.size());
      for (auto i = 0U; i != o.stops_.size(); ++i) {
        EXPECT_EQ(o.stops_[i], j.stops_[i].mp_);
      }
    }
  }
}
