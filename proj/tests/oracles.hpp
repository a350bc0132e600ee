#pragma once

#include <vector>

#include "athn/capacity.hpp"
#include "athn/route_solver.hpp"
#include "athn/task_graph.hpp"

// Independent reference implementations used only by the tests. They share
// the production code's inputs but none of its search or sweep machinery.
namespace oracle {

/// Exhaustive enumeration of every partition of a task subset into at most
/// max_routes ordered chains (uncovered tasks served directly). Feasibility
/// is checked by an independent forward pass over the time windows.
double best_route_objective(const athn::TaskGraph& graph, int max_routes,
                            std::vector<std::vector<int>>* best_routes = nullptr);

/// Per-hub peak concurrency recomputed by counting occupancy minute by
/// minute on an explicit grid (no sweep line).
std::vector<int> minute_count_peaks(const std::vector<athn::JobSequence>& sequences,
                                    const std::vector<std::vector<long>>& starts,
                                    int num_hubs);

/// Optimum of the richer job-level model where UNLOAD may start later than
/// the drive's arrival (a PARK absorbs the wait). Enumerates (load, unload)
/// start pairs per task; tiny instances only (throws std::runtime_error when
/// the grid exceeds ~2e8 points).
long full_job_level_optimum(const athn::CapacityProblem& problem);

}  // namespace oracle
