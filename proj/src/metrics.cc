#include "carpool/metrics.h"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "fmt/core.h"
#include "fmt/ostream.h"

#include "carpool/params_io.h"

namespace carpool {

bool in_window(scenario_params const& p, double const departure_min) {
  return departure_min >= 0.0 && departure_min < p.measurement_window_min_;
}

std::string_view to_str(mode_category const c) {
  switch (c) {
    case mode_category::kUnserved: return "unserved";
    case mode_category::kWalkOnly: return "walk_only";
    case mode_category::kTransitOnly: return "transit_only";
    case mode_category::kCarpoolOnly: return "carpool_only";
    case mode_category::kCarpoolFirstMileTransit: return "carpool_fm_transit";
    case mode_category::kTransitCarpoolLastMile: return "transit_carpool_lm";
    case mode_category::kCarpoolBothTransit:
      return "carpool_fm_transit_carpool_lm";
  }
  return "unknown";
}

mode_category category_of(outcome const& o) {
  if (!o.served()) {
    return mode_category::kUnserved;
  }
  return static_cast<mode_category>(
      static_cast<std::uint8_t>(o.itinerary_->kind_) + 1U);
}

std::optional<mode_shares> mode_breakdown(scenario const& s,
                                          run_result const& res) {
  auto m = mode_shares{};
  for (auto const& r : s.riders_) {
    if (!in_window(s.params_, r.departure_min_)) {
      continue;
    }
    ++m.riders_;
    ++m.counts_[static_cast<std::size_t>(category_of(res.outcomes_[to_idx(r.id_)]))];
  }
  if (m.riders_ == 0U) {
    return std::nullopt;
  }
  for (auto i = 0U; i != kModeCategories; ++i) {
    m.shares_[i] = static_cast<double>(m.counts_[i]) / m.riders_;
  }
  return m;
}

std::vector<travel_time_row> travel_time_table(scenario const& s,
                                               run_result const& res) {
  auto rows = std::vector<travel_time_row>{};
  for (auto const& r : s.riders_) {
    if (!in_window(s.params_, r.departure_min_)) {
      continue;
    }
    auto const& o = res.outcomes_[to_idx(r.id_)];
    rows.push_back({.rider_ = r.id_,
                    .od_km_ = euclidean(r.origin_, r.destination_),
                    .journey_min_ = o.served()
                                        ? std::optional{o.itinerary_->journey_min_}
                                        : std::nullopt});
  }
  return rows;
}

double walking_slope_min_per_km(scenario_params const& p) {
  return p.circuity_ * 60.0 / p.walk_speed_kmh_;
}

double occupancy_histogram::mean() const {
  if (drivers_ == 0U) {
    return 0.0;
  }
  auto sum = 0.0;
  for (auto i = 0U; i != counts_.size(); ++i) {
    sum += static_cast<double>(i) * counts_[i];
  }
  return sum / drivers_;
}

occupancy_histogram occupancy_histogram_of(scenario const& s,
                                           run_result const& res) {
  auto h = occupancy_histogram{};
  h.counts_.assign(s.params_.max_seats_ + 1U, 0U);
  for (auto const& d : s.drivers_) {
    if (!in_window(s.params_, d.departure_min_)) {
      continue;
    }
    auto const occ = res.journeys_[to_idx(d.id_)].max_occupancy();
    if (occ >= h.counts_.size()) {
      h.counts_.resize(occ + 1U, 0U);
    }
    ++h.counts_[occ];
    ++h.drivers_;
  }
  return h;
}

std::optional<detour_shares> detour_breakdown(scenario const& s,
                                              run_result const& res) {
  auto d = detour_shares{};
  for (auto const& drv : s.drivers_) {
    if (!in_window(s.params_, drv.departure_min_)) {
      continue;
    }
    auto const realized = realized_detours(s, res.journeys_[to_idx(drv.id_)]);
    ++d.counts_[static_cast<std::size_t>(realized.detours_)];
    ++d.drivers_;
  }
  if (d.drivers_ == 0U) {
    return std::nullopt;
  }
  for (auto i = 0U; i != d.counts_.size(); ++i) {
    d.shares_[i] = static_cast<double>(d.counts_[i]) / d.drivers_;
  }
  return d;
}

double system_summary::unserved_share() const {
  return modes_.has_value() ? modes_->share(mode_category::kUnserved) : 0.0;
}

system_summary summarize(scenario const& s, run_result const& res) {
  auto sum = system_summary{};
  sum.system_ = res.system_;
  sum.modes_ = mode_breakdown(s, res);
  sum.riders_in_window_ = sum.modes_.has_value() ? sum.modes_->riders_ : 0U;
  sum.occupancy_ = occupancy_histogram_of(s, res);
  sum.drivers_in_window_ = sum.occupancy_.drivers_;
  sum.detours_ = detour_breakdown(s, res);
  sum.walking_slope_min_per_km_ = walking_slope_min_per_km(s.params_);

  auto served = 0U;
  auto total = 0.0;
  for (auto const& row : travel_time_table(s, res)) {
    if (!row.journey_min_.has_value()) {
      continue;
    }
    ++served;
    total += *row.journey_min_;
    sum.max_served_od_km_ =
        std::max(sum.max_served_od_km_.value_or(0.0), row.od_km_);
  }
  if (served != 0U) {
    sum.mean_journey_min_ = total / served;
  }
  return sum;
}

nlohmann::ordered_json to_json(system_summary const& s) {
  auto j = nlohmann::ordered_json{};
  j["system"] = to_str(s.system_);
  j["riders_in_window"] = s.riders_in_window_;
  j["drivers_in_window"] = s.drivers_in_window_;

  if (s.modes_.has_value()) {
    auto modes = nlohmann::ordered_json::object();
    for (auto i = 0U; i != kModeCategories; ++i) {
      modes[std::string{to_str(static_cast<mode_category>(i))}] =
          s.modes_->shares_[i];
    }
    j["unserved_share"] = s.unserved_share();
    j["mode_shares"] = std::move(modes);
  } else {
    j["unserved_share"] = nullptr;
    j["mode_shares"] = nullptr;
  }

  j["max_occupancy_histogram"] = s.occupancy_.counts_;
  j["mean_max_occupancy"] = s.occupancy_.mean();

  if (s.detours_.has_value()) {
    auto detours = nlohmann::ordered_json::object();
    for (auto i = 0U; i != 4U; ++i) {
      detours[std::string{to_str(static_cast<detour>(i))}] =
          s.detours_->shares_[i];
    }
    j["detour_shares"] = std::move(detours);
  } else {
    j["detour_shares"] = nullptr;
  }

  j["mean_journey_min"] = s.mean_journey_min_.has_value()
                              ? nlohmann::ordered_json(*s.mean_journey_min_)
                              : nlohmann::ordered_json(nullptr);
  j["max_served_od_km"] = s.max_served_od_km_.has_value()
                              ? nlohmann::ordered_json(*s.max_served_od_km_)
                              : nlohmann::ordered_json(nullptr);
  j["walking_slope_min_per_km"] = s.walking_slope_min_per_km_;
  return j;
}

namespace {

std::ofstream open_csv(std::filesystem::path const& path) {
  auto out = std::ofstream{path, std::ios::binary};
  if (!out) {
    throw error{fmt::format("cannot open '{}' for writing", path.string())};
  }
  return out;
}

void close_csv(std::ofstream& out, std::filesystem::path const& path) {
  out.flush();
  if (!out) {
    throw error{fmt::format("write to '{}' failed", path.string())};
  }
}

}  // namespace

void write_metric_csvs(std::filesystem::path const& dir,
                       scenario const& s,
                       run_result const& res) {
  auto const prefix = std::string{to_str(res.system_)};

  {
    auto const path = dir / (prefix + "_modes.csv");
    auto out = open_csv(path);
    auto const modes = mode_breakdown(s, res);
    out << "category,count,share\n";
    for (auto i = 0U; i != kModeCategories; ++i) {
      if (modes.has_value()) {
        fmt::print(out, "{},{},{}\n", to_str(static_cast<mode_category>(i)),
                   modes->counts_[i], format_double(modes->shares_[i]));
      } else {
        fmt::print(out, "{},0,\n", to_str(static_cast<mode_category>(i)));
      }
    }
    close_csv(out, path);
  }

  {
    auto const path = dir / (prefix + "_travel_times.csv");
    auto out = open_csv(path);
    out << "rider_id,od_km,journey_min\n";
    for (auto const& row : travel_time_table(s, res)) {
      fmt::print(out, "{},{},{}\n", to_idx(row.rider_), format_double(row.od_km_),
                 row.journey_min_.has_value() ? format_double(*row.journey_min_)
                                              : std::string{"unserved"});
    }
    close_csv(out, path);
  }

  {
    auto const path = dir / (prefix + "_occupancy.csv");
    auto out = open_csv(path);
    auto const h = occupancy_histogram_of(s, res);
    out << "max_occupancy,drivers\n";
    for (auto i = 0U; i != h.counts_.size(); ++i) {
      fmt::print(out, "{},{}\n", i, h.counts_[i]);
    }
    close_csv(out, path);
  }

  {
    auto const path = dir / (prefix + "_detours.csv");
    auto out = open_csv(path);
    auto const d = detour_breakdown(s, res);
    out << "category,count,share\n";
    for (auto i = 0U; i != 4U; ++i) {
      auto const name = to_str(static_cast<detour>(i));
      if (d.has_value()) {
        fmt::print(out, "{},{},{}\n", name, d->counts_[i],
                   format_double(d->shares_[i]));
      } else {
        fmt::print(out, "{},0,\n", name);
      }
    }
    close_csv(out, path);
  }
}

}  // namespace carpool
