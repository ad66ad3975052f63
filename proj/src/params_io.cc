#include "carpool/params_io.h"

#include <charconv>
#include <cstdint>
#include <variant>

#include "fmt/core.h"

namespace carpool {

namespace {

using field_ptr = std::variant<double scenario_params::*,
                               std::uint32_t scenario_params::*,
                               std::uint64_t scenario_params::*>;

struct field {
  std::string_view name_;
  field_ptr ptr_;
};

std::vector<field> const& fields() {
  static auto const kFields = std::vector<field>{
      {"area_width_km", &scenario_params::area_width_km_},
      {"area_height_km", &scenario_params::area_height_km_},
      {"n_stations", &scenario_params::n_stations_},
      {"station_spacing_km", &scenario_params::station_spacing_km_},
      {"walk_speed_kmh", &scenario_params::walk_speed_kmh_},
      {"car_speed_kmh", &scenario_params::car_speed_kmh_},
      {"train_speed_kmh", &scenario_params::train_speed_kmh_},
      {"rider_density_per_km2_h", &scenario_params::rider_density_per_km2_h_},
      {"driver_density_per_km2_h",
       &scenario_params::driver_density_per_km2_h_},
      {"meeting_point_density_per_km2",
       &scenario_params::meeting_point_density_per_km2_},
      {"station_cluster_min", &scenario_params::station_cluster_min_},
      {"station_cluster_max", &scenario_params::station_cluster_max_},
      {"station_cluster_radius_km",
       &scenario_params::station_cluster_radius_km_},
      {"max_seats", &scenario_params::max_seats_},
      {"circuity", &scenario_params::circuity_},
      {"max_wait_min", &scenario_params::max_wait_min_},
      {"max_walk_km", &scenario_params::max_walk_km_},
      {"max_detour_ratio", &scenario_params::max_detour_ratio_},
      {"generation_window_min", &scenario_params::generation_window_min_},
      {"measurement_window_min", &scenario_params::measurement_window_min_},
      {"train_headway_min", &scenario_params::train_headway_min_},
      {"rng_seed", &scenario_params::rng_seed_}};
  return kFields;
}

}  // namespace

std::string format_double(double const d) { return fmt::format("{}", d); }

double parse_double(std::string_view const s) {
  auto value = 0.0;
  auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw error{fmt::format("not a number: '{}'", s)};
  }
  return value;
}

std::uint64_t parse_uint(std::string_view const s) {
  auto value = std::uint64_t{0U};
  auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw error{fmt::format("not an unsigned integer: '{}'", s)};
  }
  return value;
}

std::vector<std::string_view> param_names() {
  auto out = std::vector<std::string_view>{};
  for (auto const& f : fields()) {
    out.push_back(f.name_);
  }
  return out;
}

std::vector<std::pair<std::string_view, std::string>> param_values(
    scenario_params const& p) {
  auto out = std::vector<std::pair<std::string_view, std::string>>{};
  for (auto const& f : fields()) {
    std::visit(
        [&](auto const member) {
          using value_t = std::decay_t<decltype(p.*member)>;
          if constexpr (std::is_same_v<value_t, double>) {
            out.emplace_back(f.name_, format_double(p.*member));
          } else {
            out.emplace_back(f.name_, fmt::format("{}", p.*member));
          }
        },
        f.ptr_);
  }
  return out;
}

void set_param(scenario_params& p,
               std::string_view const key,
               std::string_view const value) {
  for (auto const& f : fields()) {
    if (f.name_ != key) {
      continue;
    }
    std::visit(
        [&](auto const member) {
          using value_t = std::decay_t<decltype(p.*member)>;
          if constexpr (std::is_same_v<value_t, double>) {
            p.*member = parse_double(value);
          } else {
            auto const v = parse_uint(value);
            if (v > std::numeric_limits<value_t>::max()) {
              throw error{fmt::format("{} out of range: {}", key, value)};
            }
            p.*member = static_cast<value_t>(v);
          }
        },
        f.ptr_);
    return;
  }
  throw error{fmt::format("unknown parameter '{}'", key)};
}

}  // namespace carpool
