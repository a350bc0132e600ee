#pragma once

#include <vector>

#include "athn/job_model.hpp"

namespace athn {

struct CapacityOptions {
  bool use_redundant_bounds = true;  // derived RELOCATE/PARK domains
  bool use_relocation_pinning = true;       // relocation starts when unloading ends
};

/// Shift-scheduling problem over expanded routes: move job start times within
/// their domains, preserving each route's sequence, to minimize the summed
/// per-hub peak of concurrent LOAD/UNLOAD jobs.
struct CapacityProblem {
  std::vector<JobSequence> sequences;
  std::vector<std::vector<long>> initial_starts;  // per sequence, per job
  int num_hubs = 0;
  CapacityOptions options;
};

struct CapacitySolution {
  std::vector<std::vector<long>> starts;
  std::vector<int> hub_capacity;
  long total = 0;
  bool proven_optimal = false;
  long bound = 0;           // best proven lower bound on total
  long nodes_explored = 0;  // search effort, for the ablation harness
};

struct ShiftReport {
  std::vector<long> shifts;  // |after - before| per LOAD/UNLOAD job, route order
  std::vector<long> load_shifts;
  std::vector<long> unload_shifts;
  double load_fraction_shifted = 0.0;
};

/// Expands the plan's routes, computes domains, and maps the plan's start
/// times to the earliest-consistent job schedule (the "before" baseline).
CapacityProblem make_capacity_problem(const RoutePlan& plan, const TaskGraph& graph,
                                      const CapacityOptions& options);

/// Per-hub peak of concurrent LOAD/UNLOAD intervals [S, S+duration), via a
/// sweep line over interval endpoints. When verify is set, first checks
/// sequence order, fixed durations, and domains, throwing VerificationError
/// naming the violated constraint. Independent checker for this module.
std::vector<int> measure_capacity(const std::vector<JobSequence>& sequences,
                                  const std::vector<std::vector<long>>& starts,
                                  int num_hubs, bool verify = true);

/// Branch-and-bound over per-task LOAD starts (DRIVE/UNLOAD follow affinely,
/// PARK absorbs slack) with chain precedence along each route, warm-started
/// from the initial schedule. The time limit is enforced as a deterministic
/// node budget so equal-seed runs are bit-reproducible.
CapacitySolution minimize_capacity(const CapacityProblem& problem,
                                   double time_limit_sec = 1800.0);

/// Returns a copy with relocation pinning enabled (relocation immediately after
/// unloading); the optimal total is unchanged.
CapacityProblem apply_relocation_pinning(const CapacityProblem& problem);

/// Capacity optimum with every task treated as its own single-task route
/// (windows unchanged, chains dropped): a valid lower bound on the total.
/// When that relaxation's search does not close, the relaxation's proven
/// bound is returned instead of its incumbent.
long lower_bound(const CapacityProblem& problem, double time_limit_sec = 1800.0);

/// Exhaustive minute-grid search over task LOAD starts, respecting chains.
/// Guard: at most 10 tasks and window widths of at most ~8 hours; otherwise
/// throws OracleRefusedError.
CapacitySolution brute_force_optimum(const CapacityProblem& problem);

/// Absolute shifts for LOAD/UNLOAD jobs between two feasible schedules, plus
/// the fraction of LOAD jobs with a nonzero shift.
ShiftReport shift_report(const std::vector<std::vector<long>>& before,
                         const std::vector<std::vector<long>>& after,
                         const std::vector<JobSequence>& sequences);

}  // namespace athn
