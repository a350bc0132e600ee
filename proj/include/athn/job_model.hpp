#pragma once

#include <string>
#include <vector>

#include "athn/route_solver.hpp"
#include "athn/task_graph.hpp"

namespace athn {

enum class JobType { Load, Drive, Unload, Relocate, Park };

std::string to_string(JobType t);

/// One atomic segment of a route. PARK has flexible duration (kFlexible).
struct Job {
  static constexpr int kFlexible = -1;
  static constexpr int kNone = -1;

  int route = 0;
  int index = 0;  // position >= 1 within the route's job list
  JobType type = JobType::Park;
  int duration = kFlexible;  // minutes; kFlexible for PARK
  int task = kNone;          // LOAD/DRIVE/UNLOAD only
  int hub = kNone;           // LOAD/UNLOAD/PARK only
  long dom_lo = 0;
  long dom_hi = 0;

  bool fixed_duration() const { return duration != kFlexible; }
  int fixed_duration_or_zero() const { return fixed_duration() ? duration : 0; }
};

/// Per-route job expansion: LOAD,PARK,DRIVE,PARK,UNLOAD per task with
/// PARK,RELOCATE,PARK between consecutive tasks (8m-3 jobs for m tasks).
struct JobSequence {
  int route = 0;
  std::vector<Job> jobs;

  int task_count() const { return (static_cast<int>(jobs.size()) + 3) / 8; }
};

/// Expands one route into the repeating job pattern. RELOCATE is present with
/// duration zero when consecutive tasks share a hub. Throws on an empty route.
JobSequence expand_route(const std::vector<int>& route_tasks, int route_id,
                         const TaskGraph& graph);

/// Fills start-time domains. LOAD: [p-Delta, p+Delta]; DRIVE/UNLOAD: the
/// translated domain dom(j-2) + duration(j-2). With use_redundant_bounds,
/// RELOCATE and PARK get the derived bounds; otherwise [0, horizon_end].
/// Throws InfeasibleExpansionError on an empty domain.
void compute_domains(JobSequence& sequence, const TaskGraph& graph,
                     bool use_redundant_bounds, long horizon_end);

/// Generous latest start for flexible jobs when redundant bounds are off.
long default_horizon_end(const TaskGraph& graph);

/// Job start times for a fixed route schedule: LOAD at the task's x_t and
/// everything downstream at the earliest consistent time (the "before" baseline).
std::vector<long> initial_job_starts(const JobSequence& sequence, const RoutePlan& plan);

/// Expansion of every route in the plan, with domains.
std::vector<JobSequence> expand_plan(const RoutePlan& plan, const TaskGraph& graph,
                                     bool use_redundant_bounds);

}  // namespace athn
