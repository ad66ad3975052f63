#include "carpool/scenario.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <unordered_map>

#include "fmt/core.h"
#include "fmt/ostream.h"

#include "carpool/params_io.h"

namespace carpool {

namespace {

point clamp_to_area(scenario_params const& params, point const p) {
  return {std::clamp(p.x_km_, 0.0, params.area_width_km_),
          std::clamp(p.y_km_, 0.0, params.area_height_km_)};
}

point uniform_point(scenario_params const& params, rng& r) {
  auto const x = r.uniform(0.0, params.area_width_km_);
  auto const y = r.uniform(0.0, params.area_height_km_);
  return {x, y};
}

}  // namespace

std::vector<meeting_point> generate_meeting_points(scenario_params const& params,
                                                   rng& uniform_stream,
                                                   rng& cluster_stream) {
  auto out = std::vector<meeting_point>{};
  auto const add = [&](point const p, bool const is_station) {
    out.push_back({.id_ = mp_id{static_cast<std::uint32_t>(out.size())},
                   .location_ = p,
                   .is_station_ = is_station});
  };

  auto const stations = default_station_locations(params);
  for (auto const& s : stations) {
    add(s, true);
  }

  auto const n_uniform = uniform_stream.poisson(
      params.meeting_point_density_per_km2_ * params.area_km2());
  for (auto i = 0U; i != n_uniform; ++i) {
    add(uniform_point(params, uniform_stream), false);
  }

  // Uniform in the disc: radius ~ R sqrt(U).
  for (auto const& s : stations) {
    auto const k = cluster_stream.uniform_int(params.station_cluster_min_,
                                              params.station_cluster_max_);
    for (auto i = 0U; i != k; ++i) {
      auto const r =
          params.station_cluster_radius_km_ * std::sqrt(cluster_stream.uniform());
      auto const theta = 2.0 * std::numbers::pi * cluster_stream.uniform();
      add(clamp_to_area(params, {s.x_km_ + r * std::cos(theta),
                                 s.y_km_ + r * std::sin(theta)}),
          false);
    }
  }
  return out;
}

std::pair<std::vector<rider>, std::vector<driver>> generate_users(
    scenario_params const& params,
    std::span<meeting_point const> meeting_points,
    rng& rider_stream,
    rng& driver_stream) {
  auto const hours = params.generation_window_min_ / 60.0;

  auto riders = std::vector<rider>{};
  auto const n_riders = rider_stream.poisson(params.rider_density_per_km2_h_ *
                                             params.area_km2() * hours);
  riders.reserve(n_riders);
  for (auto i = 0U; i != n_riders; ++i) {
    auto r = rider{};
    r.departure_min_ = rider_stream.uniform(0.0, params.generation_window_min_);
    r.origin_ = uniform_point(params, rider_stream);
    do {
      r.destination_ = uniform_point(params, rider_stream);
    } while (r.destination_ == r.origin_);
    riders.push_back(r);
  }

  auto candidates = std::vector<mp_id>{};
  for (auto const& m : meeting_points) {
    if (!m.is_station_) {
      candidates.push_back(m.id_);
    }
  }

  auto drivers = std::vector<driver>{};
  auto const n_drivers = driver_stream.poisson(params.driver_density_per_km2_h_ *
                                               params.area_km2() * hours);
  if (n_drivers != 0U && candidates.size() < 2U) {
    throw error{"drivers need at least two non-station meeting points"};
  }
  drivers.reserve(n_drivers);
  for (auto i = 0U; i != n_drivers; ++i) {
    auto d = driver{};
    d.departure_min_ =
        driver_stream.uniform(0.0, params.generation_window_min_);
    auto const last = candidates.size() - 1U;
    auto const a = driver_stream.uniform_int(0U, last);
    auto b = driver_stream.uniform_int(0U, last - 1U);
    if (b >= a) {
      ++b;
    }
    d.origin_ = candidates[a];
    d.destination_ = candidates[b];
    d.seats_ = params.max_seats_;
    drivers.push_back(d);
  }

  auto const by_departure = [](auto const& x, auto const& y) {
    return x.departure_min_ < y.departure_min_;
  };
  std::stable_sort(begin(riders), end(riders), by_departure);
  std::stable_sort(begin(drivers), end(drivers), by_departure);
  for (auto i = 0U; i != riders.size(); ++i) {
    riders[i].id_ = rider_id{i};
  }
  for (auto i = 0U; i != drivers.size(); ++i) {
    drivers[i].id_ = driver_id{i};
  }
  return {std::move(riders), std::move(drivers)};
}

scenario make_scenario(scenario_params params,
                       std::vector<meeting_point> meeting_points,
                       std::vector<rider> riders,
                       std::vector<driver> drivers) {
  auto rail = rail_line::from_meeting_points(
      meeting_points, params.train_headway_min_, params.train_speed_kmh_);
  return scenario{.params_ = std::move(params),
                  .meeting_points_ = std::move(meeting_points),
                  .rail_ = std::move(rail),
                  .riders_ = std::move(riders),
                  .drivers_ = std::move(drivers)};
}

scenario generate_scenario(scenario_params const& params) {
  params.validate();
  auto const seed = params.rng_seed_;
  auto mp_stream = rng{seed, stream::kMeetingPoints};
  auto cluster_stream = rng{seed, stream::kStationClusters};
  auto rider_stream = rng{seed, stream::kRiders};
  auto driver_stream = rng{seed, stream::kDrivers};

  auto meeting_points =
      generate_meeting_points(params, mp_stream, cluster_stream);
  auto [riders, drivers] =
      generate_users(params, meeting_points, rider_stream, driver_stream);
  return make_scenario(params, std::move(meeting_points), std::move(riders),
                       std::move(drivers));
}

// Format (one record per line, space separated):
//   carpool-scenario version=1 meeting_points=N riders=R drivers=D <param>=<v>...
//   M <id> <x_km> <y_km> <is_station 0|1>
//   R <id> <origin_x> <origin_y> <destination_x> <destination_y> <departure>
//   D <id> <origin_mp> <destination_mp> <departure> <seats>
//   end
void write_scenario(std::ostream& out, scenario const& s) {
  fmt::print(out, "carpool-scenario version={} meeting_points={} riders={} "
                  "drivers={}",
             kScenarioFormatVersion, s.meeting_points_.size(), s.riders_.size(),
             s.drivers_.size());
  for (auto const& [key, value] : param_values(s.params_)) {
    fmt::print(out, " {}={}", key, value);
  }
  out << '\n';
  for (auto const& m : s.meeting_points_) {
    fmt::print(out, "M {} {} {} {}\n", to_idx(m.id_),
               format_double(m.location_.x_km_),
               format_double(m.location_.y_km_), m.is_station_ ? 1 : 0);
  }
  for (auto const& r : s.riders_) {
    fmt::print(out, "R {} {} {} {} {} {}\n", to_idx(r.id_),
               format_double(r.origin_.x_km_), format_double(r.origin_.y_km_),
               format_double(r.destination_.x_km_),
               format_double(r.destination_.y_km_),
               format_double(r.departure_min_));
  }
  for (auto const& d : s.drivers_) {
    fmt::print(out, "D {} {} {} {} {}\n", to_idx(d.id_), to_idx(d.origin_),
               to_idx(d.destination_), format_double(d.departure_min_),
               d.seats_);
  }
  out << "end\n";
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  auto out = std::vector<std::string_view>{};
  while (!line.empty()) {
    auto const start = line.find_first_not_of(' ');
    if (start == std::string_view::npos) {
      break;
    }
    line.remove_prefix(start);
    auto const end = std::min(line.find(' '), line.size());
    out.push_back(line.substr(0U, end));
    line.remove_prefix(end);
  }
  return out;
}

struct line_reader {
  template <typename Fn>
  auto field(std::string_view const name, Fn&& fn) const {
    try {
      return fn();
    } catch (parse_error const&) {
      throw;
    } catch (error const& e) {
      throw parse_error{
          fmt::format("line {}: field '{}': {}", line_no_, name, e.what())};
    }
  }

  [[noreturn]] void fail(std::string_view const msg) const {
    throw parse_error{fmt::format("line {}: {}", line_no_, msg)};
  }

  std::size_t line_no_{0U};
};

}  // namespace

scenario read_scenario(std::istream& in) {
  auto reader = line_reader{};
  auto line = std::string{};

  auto const next_line = [&]() {
    if (!std::getline(in, line)) {
      throw parse_error{
          fmt::format("line {}: unexpected end of file", reader.line_no_ + 1U)};
    }
    ++reader.line_no_;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    return split(line);
  };

  auto header = next_line();
  if (header.empty() || header.front() != "carpool-scenario") {
    reader.fail("missing 'carpool-scenario' header");
  }

  auto params = scenario_params{};
  auto version = std::optional<std::uint64_t>{};
  auto counts = std::unordered_map<std::string, std::uint64_t>{};
  auto seen = std::unordered_map<std::string, bool>{};
  for (auto const& token : std::span{header}.subspan(1U)) {
    auto const eq = token.find('=');
    if (eq == std::string_view::npos) {
      reader.fail(fmt::format("header token '{}' is not key=value", token));
    }
    auto const key = token.substr(0U, eq);
    auto const value = token.substr(eq + 1U);
    if (key == "version") {
      version = reader.field(key, [&] { return parse_uint(value); });
    } else if (key == "meeting_points" || key == "riders" ||
               key == "drivers") {
      counts[std::string{key}] = reader.field(key, [&] { return parse_uint(value); });
    } else {
      reader.field(key, [&] { set_param(params, key, value); });
      seen[std::string{key}] = true;
    }
  }
  if (!version) {
    reader.fail("header lacks a version field");
  }
  if (*version != kScenarioFormatVersion) {
    reader.fail(fmt::format("unsupported scenario format version {} "
                            "(expected {})",
                            *version, kScenarioFormatVersion));
  }
  for (auto const key : {"meeting_points", "riders", "drivers"}) {
    if (!counts.contains(key)) {
      reader.fail(fmt::format("header lacks '{}' count", key));
    }
  }
  for (auto const key : param_names()) {
    if (!seen.contains(std::string{key})) {
      reader.fail(fmt::format("header lacks parameter '{}'", key));
    }
  }
  reader.field("header", [&] { params.validate(); });

  auto const expect_arity = [&](auto const& tokens, std::size_t const n) {
    if (tokens.size() != n) {
      reader.fail(fmt::format("'{}' record needs {} fields, got {}",
                              tokens.front(), n - 1U, tokens.size() - 1U));
    }
  };
  auto const num = [&](std::string_view const name, std::string_view v) {
    return reader.field(name, [&] { return parse_double(v); });
  };
  auto const uint = [&](std::string_view const name, std::string_view v) {
    return reader.field(name, [&] { return parse_uint(v); });
  };
  auto const expect_id = [&](std::string_view const v, std::size_t const idx) {
    if (uint("id", v) != idx) {
      reader.fail(fmt::format("id {} out of sequence (expected {})", v, idx));
    }
  };
  auto const expect_tag = [&](auto const& tokens, std::string_view const tag) {
    if (tokens.empty() || tokens.front() != tag) {
      reader.fail(fmt::format("expected '{}' record", tag));
    }
  };

  auto meeting_points = std::vector<meeting_point>{};
  for (auto i = 0U; i != counts["meeting_points"]; ++i) {
    auto const t = next_line();
    expect_tag(t, "M");
    expect_arity(t, 5U);
    expect_id(t[1], i);
    auto const flag = uint("is_station", t[4]);
    if (flag > 1U) {
      reader.fail("is_station must be 0 or 1");
    }
    meeting_points.push_back({.id_ = mp_id{i},
                              .location_ = {num("x_km", t[2]),
                                            num("y_km", t[3])},
                              .is_station_ = flag == 1U});
  }

  auto riders = std::vector<rider>{};
  for (auto i = 0U; i != counts["riders"]; ++i) {
    auto const t = next_line();
    expect_tag(t, "R");
    expect_arity(t, 7U);
    expect_id(t[1], i);
    riders.push_back({.id_ = rider_id{i},
                      .origin_ = {num("origin_x", t[2]), num("origin_y", t[3])},
                      .destination_ = {num("destination_x", t[4]),
                                       num("destination_y", t[5])},
                      .departure_min_ = num("departure", t[6])});
  }

  auto drivers = std::vector<driver>{};
  for (auto i = 0U; i != counts["drivers"]; ++i) {
    auto const t = next_line();
    expect_tag(t, "D");
    expect_arity(t, 6U);
    expect_id(t[1], i);
    auto const org = uint("origin_mp", t[2]);
    auto const dst = uint("destination_mp", t[3]);
    if (org >= meeting_points.size() || dst >= meeting_points.size()) {
      reader.fail("driver references an unknown meeting point");
    }
    if (org == dst) {
      reader.fail("driver origin equals destination");
    }
    drivers.push_back(
        {.id_ = driver_id{i},
         .origin_ = mp_id{static_cast<std::uint32_t>(org)},
         .destination_ = mp_id{static_cast<std::uint32_t>(dst)},
         .departure_min_ = num("departure", t[4]),
         .seats_ = static_cast<std::uint32_t>(uint("seats", t[5]))});
  }

  auto const tail = next_line();
  if (tail.size() != 1U || tail.front() != "end") {
    reader.fail("expected 'end' record");
  }

  try {
    return make_scenario(std::move(params), std::move(meeting_points),
                         std::move(riders), std::move(drivers));
  } catch (error const& e) {
    throw parse_error{fmt::format("inconsistent scenario: {}", e.what())};
  }
}

void save_scenario(scenario const& s, std::filesystem::path const& path) {
  auto out = std::ofstream{path, std::ios::binary};
  if (!out) {
    throw error{fmt::format("cannot open '{}' for writing", path.string())};
  }
  write_scenario(out, s);
  out.flush();
  if (!out) {
    throw error{fmt::format("write to '{}' failed", path.string())};
  }
}

scenario load_scenario(std::filesystem::path const& path) {
  auto in = std::ifstream{path, std::ios::binary};
  if (!in) {
    throw error{fmt::format("cannot open '{}' for reading", path.string())};
  }
  return read_scenario(in);
}

}  // namespace carpool
