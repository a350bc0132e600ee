#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "athn/capacity.hpp"
#include "athn/instance.hpp"

namespace athn {

struct LaborModel {
  double annual_wage_per_shift = 57557.0;  // dollars
  int shifts_per_day = 3;
};

/// Annual labor cost of keeping `capacity_units` loading/unloading slots
/// staffed around the clock.
double labor_cost(long capacity_units, const LaborModel& model = {});

enum class RouteEngine { Exact, Heuristic };

struct Scenario {
  std::optional<std::string> instance_path;      // exactly one of these two
  std::optional<GeneratorConfig> generator;
  Params params;
  std::uint64_t seed = 0;
  RouteEngine engine = RouteEngine::Heuristic;
  CapacityOptions capacity_options;
  std::string out_dir = "out";
  double route_time_limit_sec = 3.0 * 3600.0;
  double cp_time_limit_sec = 1800.0;
  bool resolve_routes_in_sweep = true;  // false = fixed-routes mode
  LaborModel labor;
  bool dump_graph = false;
};

struct RunReport {
  Instance instance;
  std::vector<Hub> hubs;
  double objective_miles = 0.0;
  double route_gap = 0.0;
  int routes_used = 0;
  int tasks_covered = 0;
  long total_before = 0;
  long total_after = 0;
  long bound = 0;
  bool cp_proven_optimal = false;
  double reduction_pct = 0.0;  // meaningful only when total_before > 0
  double load_fraction_shifted = 0.0;
  long max_shift_minutes = 0;
  std::vector<int> cap_before;
  std::vector<int> cap_after;
  std::vector<int> cap_lower;
  ShiftReport shifts;
};

/// generate/read -> hubs -> tasks -> graph -> route solve -> earliest start
/// -> expand -> minimize capacity -> lower bound -> CSV artifacts.
/// Deterministic for a fixed seed. Stage failures propagate with the stage name.
RunReport run_pipeline(const Scenario& scenario);

enum class SweepAxis { Sigma, Delta, Trucks };

struct SweepRow {
  long axis_value = 0;
  long total_before = 0;
  long total_after = 0;
  long bound = 0;
  double reduction_pct = 0.0;
  int tasks_covered = 0;
  bool proven = false;  // capacity search closed at this point
  double cp_seconds = 0.0;
  bool failed = false;
  std::string error;
};

/// One pipeline run per value; per-point failures are recorded and the sweep
/// continues. Writes sweep.csv under the scenario's output directory.
std::vector<SweepRow> sweep(const Scenario& scenario, SweepAxis axis,
                            const std::vector<long>& values);

struct AblationCell {
  int trucks = 0;
  bool redundant_bounds = false;
  bool redundant_constraints = false;  // relocation pinning
  long total_after = 0;
  long nodes = 0;
  double seconds = 0.0;
  double speedup_vs_baseline = 1.0;
};

/// Table-2-style harness: minimize_capacity under all four option
/// combinations per truck count. Throws if the optima disagree.
std::vector<AblationCell> ablation(const Scenario& scenario,
                                   const std::vector<int>& truck_counts);

}  // namespace athn
