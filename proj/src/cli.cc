#include "carpool/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "fmt/core.h"
#include "fmt/ostream.h"

#include "carpool/engine.h"
#include "carpool/params_io.h"
#include "carpool/scenario.h"

namespace carpool::cli {

namespace {

std::vector<std::string_view> split_on(std::string_view s, char const sep) {
  auto out = std::vector<std::string_view>{};
  while (true) {
    auto const pos = s.find(sep);
    out.push_back(s.substr(0U, pos));
    if (pos == std::string_view::npos) {
      return out;
    }
    s.remove_prefix(pos + 1U);
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') {
    s.remove_prefix(1U);
  }
  while (!s.empty() && s.back() == ' ') {
    s.remove_suffix(1U);
  }
  return s;
}

void write_json(std::filesystem::path const& path,
                nlohmann::ordered_json const& j) {
  auto out = std::ofstream{path, std::ios::binary};
  if (!out) {
    throw error{fmt::format("cannot open '{}' for writing", path.string())};
  }
  out << j.dump(2) << '\n';
  out.flush();
  if (!out) {
    throw error{fmt::format("write to '{}' failed", path.string())};
  }
}

void ensure_dir(std::filesystem::path const& dir) {
  auto ec = std::error_code{};
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw error{fmt::format("cannot create output directory '{}'",
                            dir.string())};
  }
}

nlohmann::ordered_json params_json(scenario_params const& p) {
  auto j = nlohmann::ordered_json::object();
  for (auto const& [key, value] : param_values(p)) {
    j[std::string{key}] = nlohmann::ordered_json::parse(value);
  }
  return j;
}

std::string summary_line(system_summary const& s) {
  auto const share = [&](mode_category const c) {
    return s.modes_.has_value() ? s.modes_->share(c) : 0.0;
  };
  auto const carpool = share(mode_category::kCarpoolOnly) +
                       share(mode_category::kCarpoolFirstMileTransit) +
                       share(mode_category::kTransitCarpoolLastMile) +
                       share(mode_category::kCarpoolBothTransit);
  return fmt::format(
      "{:<14} riders={} unserved={:.4f} walk={:.4f} transit={:.4f} "
      "carpool={:.4f} mean_max_occupancy={:.4f}",
      to_str(s.system_), s.riders_in_window_, s.unserved_share(),
      share(mode_category::kWalkOnly), share(mode_category::kTransitOnly),
      carpool, s.occupancy_.mean());
}

}  // namespace

std::vector<std::uint64_t> parse_seeds(std::string_view const list) {
  auto out = std::vector<std::uint64_t>{};
  try {
    for (auto const part : split_on(list, ',')) {
      auto const item = trim(part);
      if (item.empty()) {
        continue;
      }
      auto const dash = item.find('-');
      if (dash == std::string_view::npos) {
        out.push_back(parse_uint(item));
        continue;
      }
      auto const lo = parse_uint(trim(item.substr(0U, dash)));
      auto const hi = parse_uint(trim(item.substr(dash + 1U)));
      if (hi < lo) {
        throw usage_error{fmt::format("descending seed range '{}'", item)};
      }
      for (auto s = lo; s <= hi; ++s) {
        out.push_back(s);
      }
    }
  } catch (usage_error const&) {
    throw;
  } catch (error const& e) {
    throw usage_error{fmt::format("bad seed list '{}': {}", list, e.what())};
  }
  if (out.empty()) {
    throw usage_error{"empty seed set"};
  }
  return out;
}

std::vector<system_kind> parse_systems(std::string_view const list) {
  auto out = std::vector<system_kind>{};
  for (auto const part : split_on(list, ',')) {
    auto const name = trim(part);
    auto const s = parse_system(name);
    if (!s.has_value()) {
      throw usage_error{fmt::format(
          "unknown system '{}' (expected no_carpooling, current, integrated)",
          name)};
    }
    if (std::find(begin(out), end(out), *s) == end(out)) {
      out.push_back(*s);
    }
  }
  return out;
}

void apply_params_file(scenario_params& p, std::filesystem::path const& path) {
  auto in = std::ifstream{path};
  if (!in) {
    throw error{fmt::format("cannot open params file '{}'", path.string())};
  }
  auto j = nlohmann::json{};
  try {
    j = nlohmann::json::parse(in);
  } catch (nlohmann::json::exception const& e) {
    throw error{fmt::format("params file '{}': {}", path.string(), e.what())};
  }
  if (!j.is_object()) {
    throw error{fmt::format("params file '{}' must hold a JSON object",
                            path.string())};
  }
  for (auto const& [key, value] : j.items()) {
    if (!value.is_number()) {
      throw error{fmt::format("params file: '{}' must be a number", key)};
    }
    set_param(p, key, value.dump());
  }
}

void cmd_generate(generate_options const& opt) {
  auto const s = generate_scenario(opt.params_);
  if (opt.out_.has_parent_path()) {
    ensure_dir(opt.out_.parent_path());
  }
  save_scenario(s, opt.out_);
}

std::vector<system_summary> cmd_run(run_options const& opt, std::ostream& log) {
  auto const s = opt.scenario_file_.has_value()
                     ? load_scenario(*opt.scenario_file_)
                     : generate_scenario(opt.params_);
  ensure_dir(opt.out_dir_);

  auto summaries = std::vector<system_summary>{};
  auto systems_json = nlohmann::ordered_json::array();
  for (auto const system : opt.systems_) {
    auto const result = run(s, system);
    write_metric_csvs(opt.out_dir_, s, result);
    summaries.push_back(summarize(s, result));
    systems_json.push_back(to_json(summaries.back()));
  }

  auto j = nlohmann::ordered_json{};
  j["format_version"] = 1;
  j["seed"] = s.params_.rng_seed_;
  j["meeting_points"] = s.meeting_points_.size();
  j["riders"] = s.riders_.size();
  j["drivers"] = s.drivers_.size();
  j["params"] = params_json(s.params_);
  j["systems"] = std::move(systems_json);
  write_json(opt.out_dir_ / "summary.json", j);

  for (auto const& sum : summaries) {
    log << summary_line(sum) << '\n';
  }
  return summaries;
}

sample_stats stats_of(std::span<double const> xs) {
  auto st = sample_stats{.n_ = xs.size()};
  if (xs.empty()) {
    return st;
  }
  auto sum = 0.0;
  for (auto const x : xs) {
    sum += x;
  }
  st.mean_ = sum / static_cast<double>(xs.size());
  if (xs.size() > 1U) {
    auto ss = 0.0;
    for (auto const x : xs) {
      ss += (x - st.mean_) * (x - st.mean_);
    }
    st.stddev_ = std::sqrt(ss / static_cast<double>(xs.size() - 1U));
    st.stderr_ = st.stddev_ / std::sqrt(static_cast<double>(xs.size()));
  }
  return st;
}

nlohmann::ordered_json cmd_sweep(sweep_options const& opt, std::ostream& log) {
  if (opt.seeds_.empty()) {
    throw usage_error{"empty seed set"};
  }
  ensure_dir(opt.out_dir_);

  auto const run_seed = [&](std::uint64_t const seed) {
    auto ro = run_options{};
    ro.params_ = opt.params_;
    ro.params_.rng_seed_ = seed;
    ro.systems_ = opt.systems_;
    ro.out_dir_ = opt.out_dir_ / fmt::format("seed_{}", seed);
    auto sink = std::ostringstream{};
    return std::pair{cmd_run(ro, sink), sink.str()};
  };

  // Seeds run in parallel batches; results are merged in seed-list order.
  auto per_seed =
      std::vector<std::pair<std::vector<system_summary>, std::string>>{};
  auto const jobs = std::max(1U, opt.jobs_);
  for (auto start = 0U; start < opt.seeds_.size(); start += jobs) {
    auto batch = std::vector<std::future<decltype(run_seed(0U))>>{};
    auto const stop = std::min<std::size_t>(start + jobs, opt.seeds_.size());
    for (auto i = start; i != stop; ++i) {
      batch.push_back(std::async(std::launch::async, run_seed, opt.seeds_[i]));
    }
    for (auto& f : batch) {
      per_seed.push_back(f.get());
    }
  }

  auto const carpool_share = [](system_summary const& s) {
    if (!s.modes_.has_value()) {
      return 0.0;
    }
    return s.modes_->share(mode_category::kCarpoolOnly) +
           s.modes_->share(mode_category::kCarpoolFirstMileTransit) +
           s.modes_->share(mode_category::kTransitCarpoolLastMile) +
           s.modes_->share(mode_category::kCarpoolBothTransit);
  };
  auto const metrics =
      std::vector<std::pair<std::string, double (*)(system_summary const&)>>{
          {"unserved_share",
           [](system_summary const& s) { return s.unserved_share(); }},
          {"carpool_share", +carpool_share},
          {"mean_max_occupancy",
           [](system_summary const& s) { return s.occupancy_.mean(); }}};

  auto j = nlohmann::ordered_json{};
  j["seeds"] = opt.seeds_;
  auto aggregate = nlohmann::ordered_json::object();
  for (auto k = 0U; k != opt.systems_.size(); ++k) {
    auto entry = nlohmann::ordered_json::object();
    for (auto const& [name, fn] : metrics) {
      auto values = std::vector<double>{};
      for (auto const& [summaries, _] : per_seed) {
        values.push_back(fn(summaries[k]));
      }
      auto const st = stats_of(values);
      entry[name] = {{"values", values},
                     {"mean", st.mean_},
                     {"stddev", st.stddev_},
                     {"stderr", st.stderr_}};
    }
    aggregate[std::string{to_str(opt.systems_[k])}] = std::move(entry);
  }
  j["aggregate"] = std::move(aggregate);
  write_json(opt.out_dir_ / "sweep_summary.json", j);

  for (auto i = 0U; i != opt.seeds_.size(); ++i) {
    log << "seed " << opt.seeds_[i] << '\n' << per_seed[i].second;
  }
  for (auto const system : opt.systems_) {
    auto const& a = j["aggregate"][std::string{to_str(system)}];
    log << fmt::format("{:<14} unserved mean={:.4f} stderr={:.4f} (n={})\n",
                       to_str(system),
                       a["unserved_share"]["mean"].get<double>(),
                       a["unserved_share"]["stderr"].get<double>(),
                       opt.seeds_.size());
  }
  return j;
}

namespace {

std::string flag_name(std::string_view const param) {
  auto s = std::string{param};
  std::replace(begin(s), end(s), '_', '-');
  return "--" + s;
}

// Parameter flags shared by all subcommands. Explicit flags override
// --params, which overrides the built-in defaults.
struct param_flags {
  void add_to(CLI::App& app) {
    app.add_option("--params", params_file_, "JSON file of parameter overrides")
        ->check(CLI::ExistingFile);
    app.add_option("--seed", aliases_["rng_seed"], "Random seed");
    app.add_option("--headway", aliases_["train_headway_min"],
                   "Train headway in minutes");
    app.add_option("--riders-density", aliases_["rider_density_per_km2_h"],
                   "Riders per km^2 per hour");
    app.add_option("--drivers-density", aliases_["driver_density_per_km2_h"],
                   "Drivers per km^2 per hour");
    for (auto const& [name, value] : param_values(scenario_params{})) {
      app.add_option(flag_name(name), values_[std::string{name}],
                     fmt::format("default {}", value))
          ->type_name("NUM")
          ->group("Scenario parameters");
    }
  }

  scenario_params resolve() const {
    auto p = scenario_params{};
    try {
      if (!params_file_.empty()) {
        apply_params_file(p, params_file_);
      }
      for (auto const* m : {&values_, &aliases_}) {
        for (auto const& [key, value] : *m) {
          if (!value.empty()) {
            set_param(p, key, value);
          }
        }
      }
      p.validate();
    } catch (usage_error const&) {
      throw;
    } catch (error const& e) {
      throw usage_error{e.what()};
    }
    return p;
  }

  std::string params_file_;
  std::map<std::string, std::string> values_;
  std::map<std::string, std::string> aliases_;
};

std::filesystem::path default_out_dir() {
  auto const* env = std::getenv(kOutDirEnv);
  return env != nullptr && *env != '\0' ? std::filesystem::path{env}
                                        : std::filesystem::path{"results"};
}

}  // namespace

int main_entry(int const argc, char const* const* argv) {
  auto app = CLI::App{"Carpooling and transit integration simulator"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Generate and save a scenario");
  auto gen_flags = param_flags{};
  gen_flags.add_to(*gen);
  auto gen_out = std::string{};
  gen->add_option("--out", gen_out, "Scenario file to write")->required();

  auto* run_cmd = app.add_subcommand("run", "Run systems on one scenario");
  auto run_flags = param_flags{};
  run_flags.add_to(*run_cmd);
  auto run_scenario = std::string{};
  auto run_systems = std::string{"no_carpooling,current,integrated"};
  auto run_out = std::string{};
  run_cmd->add_option("--scenario", run_scenario, "Scenario file")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--systems", run_systems, "Comma separated systems");
  run_cmd->add_option("--out", run_out,
                      fmt::format("Output directory (default ${} or results)",
                                  kOutDirEnv));

  auto* sweep = app.add_subcommand("sweep", "Replicate runs over many seeds");
  auto sweep_flags = param_flags{};
  sweep_flags.add_to(*sweep);
  auto sweep_seeds = std::string{};
  auto sweep_systems = std::string{"no_carpooling,current,integrated"};
  auto sweep_out = std::string{};
  auto sweep_jobs = 1U;
  sweep->add_option("--seeds", sweep_seeds, "Seed list, e.g. 1-20 or 1,5,9")
      ->required();
  sweep->add_option("--systems", sweep_systems, "Comma separated systems");
  sweep->add_option("--out", sweep_out, "Output directory");
  sweep->add_option("--jobs", sweep_jobs, "Seeds run concurrently");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      cmd_generate({.params_ = gen_flags.resolve(), .out_ = gen_out});
      fmt::print("wrote {}\n", gen_out);
    } else if (run_cmd->parsed()) {
      auto opt = run_options{};
      opt.params_ = run_flags.resolve();
      if (!run_scenario.empty()) {
        opt.scenario_file_ = run_scenario;
      }
      opt.systems_ = parse_systems(run_systems);
      opt.out_dir_ = run_out.empty() ? default_out_dir() : std::filesystem::path{run_out};
      cmd_run(opt, std::cout);
    } else if (sweep->parsed()) {
      auto opt = sweep_options{};
      opt.params_ = sweep_flags.resolve();
      opt.seeds_ = parse_seeds(sweep_seeds);
      opt.systems_ = parse_systems(sweep_systems);
      opt.out_dir_ = sweep_out.empty() ? default_out_dir() : std::filesystem::path{sweep_out};
      opt.jobs_ = sweep_jobs;
      cmd_sweep(opt, std::cout);
    }
  } catch (usage_error const& e) {
    std::cerr << "usage error: " << e.what() << '\n' << app.help();
    return 2;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace carpool::cli
