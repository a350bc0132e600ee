// Command-line front end for the autonomous transfer hub network toolkit.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "athn/capacity.hpp"
#include "athn/errors.hpp"
#include "athn/report.hpp"
#include "athn/route_solver.hpp"

namespace {

struct CommonOpts {
  athn::Scenario scenario;
  athn::GeneratorConfig generator;
  std::string instance_path;
  std::string engine = "heuristic";
  bool no_redundant_bounds = false;
  bool no_relocation_pinning = false;
  double time_limit_sec = 1800.0;
};

std::string default_out_root() {
  if (const char* env = std::getenv("ATHN_OUT")) return env;
  return "out";
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
  athn::Params& p = opts.scenario.params;
  cmd->add_option("--alpha", p.alpha, "Autonomous middle-mile cost factor");
  cmd->add_option("--beta", p.beta, "Empty share of implied first/last miles");
  cmd->add_option("--gamma", p.gamma, "Autonomous-mile discount for hub assignment");
  cmd->add_option("--delta-min", p.delta_minutes, "Pickup flexibility (minutes)");
  cmd->add_option("--sigma-min", p.sigma_minutes, "Loading/unloading duration (minutes)");
  cmd->add_option("--trucks", p.num_trucks, "Truck fleet size K");
  cmd->add_option("--hubs", p.num_hubs, "Number of hubs");
  cmd->add_option("--horizon-min", p.horizon_minutes, "Planning horizon (minutes)");
  cmd->add_option("--speed-mph", p.speed_mph, "Average drive speed");
  cmd->add_option("--seed", opts.scenario.seed, "Random seed");
  cmd->add_option("--time-limit-sec", opts.time_limit_sec,
                  "Solver limit (deterministic node budget for the scheduler)");
  cmd->add_option("--engine", opts.engine, "Route engine: exact|heuristic")
      ->check(CLI::IsMember({"exact", "heuristic"}));
  cmd->add_flag("--no-redundant-bounds", opts.no_redundant_bounds,
                "Drop the derived RELOCATE/PARK domain bounds");
  cmd->add_flag("--no-relocation-pinning", opts.no_relocation_pinning, "Drop pinning of relocation to unload end");
  cmd->add_option("--out", opts.scenario.out_dir, "Output directory");
  cmd->add_option("--instance", opts.instance_path, "Read instance JSON instead of generating");
  cmd->add_option("--loads", opts.generator.num_loads, "Generated load count");
  cmd->add_option("--regions", opts.generator.num_regions, "Generated demand regions");
  cmd->add_option("--region-spread", opts.generator.region_spread_miles,
                  "Gaussian spread around region centers (miles)");
}

athn::Scenario finalize(CommonOpts& opts) {
  athn::Scenario& s = opts.scenario;
  opts.generator.horizon_minutes = s.params.horizon_minutes;
  if (!opts.instance_path.empty())
    s.instance_path = opts.instance_path;
  else
    s.generator = opts.generator;
  s.engine = opts.engine == "exact" ? athn::RouteEngine::Exact : athn::RouteEngine::Heuristic;
  s.capacity_options.use_redundant_bounds = !opts.no_redundant_bounds;
  s.capacity_options.use_relocation_pinning = !opts.no_relocation_pinning;
  s.route_time_limit_sec = opts.time_limit_sec;
  s.cp_time_limit_sec = opts.time_limit_sec;
  return s;
}

athn::Instance make_instance(const athn::Scenario& s) {
  if (s.instance_path) return athn::read_instance(*s.instance_path);
  return athn::generate_synthetic(*s.generator, s.params, s.seed);
}

std::vector<long> parse_values(const std::string& csv) {
  std::vector<long> values;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string tok = csv.substr(pos, comma == std::string::npos ? csv.npos : comma - pos);
    if (!tok.empty()) values.push_back(std::stol(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (values.empty()) throw athn::ConfigError("no values given");
  return values;
}

int run_guarded(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const athn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const athn::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const athn::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Autonomous transfer hub network planner"};
  app.require_subcommand(1);

  CommonOpts opts;
  opts.scenario.out_dir = default_out_root();

  auto* c_generate = app.add_subcommand("generate", "Write a synthetic instance JSON");
  auto* c_hubs = app.add_subcommand("hubs", "Place hubs by k-means and write hubs.csv");
  auto* c_routes = app.add_subcommand("routes", "Solve route selection and write routes.csv");
  auto* c_schedule =
      app.add_subcommand("schedule", "Expand routes into job sequences (initial schedule)");
  auto* c_capacity =
      app.add_subcommand("capacity", "Minimize summed peak hub capacity by shifting jobs");
  auto* c_lower = app.add_subcommand("lowerbound", "Prove a lower bound on total capacity");
  auto* c_run = app.add_subcommand("run", "Full pipeline with CSV artifacts");
  auto* c_sweep = app.add_subcommand("sweep", "Sensitivity sweep over one parameter");
  auto* c_ablation = app.add_subcommand("ablation", "Scheduler option ablation per fleet size");

  for (CLI::App* cmd : {c_generate, c_hubs, c_routes, c_schedule, c_capacity, c_lower, c_run,
                        c_sweep, c_ablation})
    add_common(cmd, opts);

  std::string axis = "sigma";
  std::string values_csv;
  bool fixed_routes = false;
  c_sweep->add_option("--axis", axis, "sigma|delta|trucks")
      ->check(CLI::IsMember({"sigma", "delta", "trucks"}));
  c_sweep->add_option("--values", values_csv, "Comma-separated axis values")->required();
  c_sweep->add_flag("--fixed-routes", fixed_routes,
                    "Reuse the baseline routes at every sweep point");

  std::string trucks_csv;
  c_ablation->add_option("--truck-counts", trucks_csv, "Comma-separated fleet sizes")
      ->required();

  CLI11_PARSE(app, argc, argv);

  return run_guarded([&] {
    athn::Scenario scenario = finalize(opts);

    if (c_generate->parsed()) {
      const athn::Instance instance = make_instance(scenario);
      const std::filesystem::path path =
          std::filesystem::path(scenario.out_dir) / "instance.json";
      std::filesystem::create_directories(path.parent_path());
      athn::write_instance(instance, path);
      std::cout << "wrote " << path.string() << " (" << instance.loads.size() << " loads)\n";
      return;
    }

    if (c_hubs->parsed()) {
      const athn::Instance instance = make_instance(scenario);
      instance.validate();
      const auto hubs =
          athn::kmeans_hubs(instance, instance.params.num_hubs, instance.seed);
      const std::filesystem::path path = std::filesystem::path(scenario.out_dir) / "hubs.csv";
      std::filesystem::create_directories(path.parent_path());
      std::ofstream out(path);
      out << "hub,x,y\n";
      for (const athn::Hub& hub : hubs)
        out << hub.id << "," << hub.location.x << "," << hub.location.y << "\n";
      std::cout << "wrote " << path.string() << " (" << hubs.size() << " hubs)\n";
      return;
    }

    if (c_sweep->parsed()) {
      scenario.resolve_routes_in_sweep = !fixed_routes;
      const athn::SweepAxis ax = axis == "sigma"   ? athn::SweepAxis::Sigma
                                 : axis == "delta" ? athn::SweepAxis::Delta
                                                   : athn::SweepAxis::Trucks;
      const auto rows = athn::sweep(scenario, ax, parse_values(values_csv));
      int failed = 0;
      for (const auto& row : rows) failed += row.failed ? 1 : 0;
      std::cout << "sweep: " << rows.size() << " points, " << failed << " failed; wrote "
                << (std::filesystem::path(scenario.out_dir) / "sweep.csv").string() << "\n";
      return;
    }

    if (c_ablation->parsed()) {
      std::vector<int> trucks;
      for (long v : parse_values(trucks_csv)) trucks.push_back(static_cast<int>(v));
      const auto cells = athn::ablation(scenario, trucks);
      std::cout << "ablation: " << cells.size() << " cells; wrote "
                << (std::filesystem::path(scenario.out_dir) / "ablation.csv").string() << "\n";
      return;
    }

    // remaining commands run (a prefix of) the pipeline
    const athn::RunReport report = athn::run_pipeline(scenario);
    if (c_routes->parsed()) {
      std::cout << "objective_miles=" << report.objective_miles
                << " gap=" << report.route_gap << " routes=" << report.routes_used
                << " covered=" << report.tasks_covered << "\n";
    } else if (c_schedule->parsed()) {
      std::cout << "total_before=" << report.total_before << " (see schedule.csv)\n";
    } else if (c_lower->parsed()) {
      std::cout << "lower_bound=" << report.bound << "\n";
    } else {  // capacity, run
      std::cout << "total_before=" << report.total_before
                << " total_after=" << report.total_after << " bound=" << report.bound
                << " proven=" << (report.cp_proven_optimal ? 1 : 0)
                << " reduction_pct=" << report.reduction_pct
                << " load_fraction_shifted=" << report.load_fraction_shifted << "\n";
    }
    std::cout << "artifacts in " << scenario.out_dir << "\n";
  });
}
