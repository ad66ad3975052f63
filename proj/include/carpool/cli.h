#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "carpool/journeys.h"
#include "carpool/metrics.h"
#include "carpool/model.h"

namespace carpool::cli {

// Default output directory when --out is not given.
constexpr auto kOutDirEnv = "CARPOOL_SIM_OUT";

struct usage_error : error {
  using error::error;
};

// "1-20", "3,5,8" or mixtures like "1-4,10". Throws usage_error if empty.
std::vector<std::uint64_t> parse_seeds(std::string_view);

// Comma separated system names; throws usage_error on unknown names.
std::vector<system_kind> parse_systems(std::string_view);

// JSON object {"<param name>": value, ...}; unknown keys are errors.
void apply_params_file(scenario_params&, std::filesystem::path const&);

struct generate_options {
  scenario_params params_;
  std::filesystem::path out_;
};

void cmd_generate(generate_options const&);

struct run_options {
  std::optional<std::filesystem::path> scenario_file_;
  scenario_params params_;  // used when no scenario file is given
  std::vector<system_kind> systems_{begin(kAllSystems), end(kAllSystems)};
  std::filesystem::path out_dir_;
};

// Writes per-system CSVs and summary.json; prints one line per system.
std::vector<system_summary> cmd_run(run_options const&, std::ostream& log);

struct sweep_options {
  scenario_params params_;
  std::vector<std::uint64_t> seeds_;
  std::vector<system_kind> systems_{begin(kAllSystems), end(kAllSystems)};
  std::filesystem::path out_dir_;
  unsigned jobs_{1U};
};

struct sample_stats {
  std::size_t n_{0U};
  double mean_{0.0};
  double stddev_{0.0};  // sample (n - 1)
  double stderr_{0.0};  // stddev / sqrt(n)
};

sample_stats stats_of(std::span<double const>);

// Per-seed outputs under seed_<n>/ plus sweep_summary.json with mean,
// standard deviation and standard error of each headline metric.
nlohmann::ordered_json cmd_sweep(sweep_options const&, std::ostream& log);

// Full command line entry point; returns the process exit code.
int main_entry(int argc, char const* const* argv);

}  // namespace carpool::cli
