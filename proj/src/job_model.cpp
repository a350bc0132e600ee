#include "athn/job_model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "athn/errors.hpp"

namespace athn {

std::string to_string(JobType t) {
  switch (t) {
    case JobType::Load: return "LOAD";
    case JobType::Drive: return "DRIVE";
    case JobType::Unload: return "UNLOAD";
    case JobType::Relocate: return "RELOCATE";
    case JobType::Park: return "PARK";
  }
  return "?";
}

JobSequence expand_route(const std::vector<int>& route_tasks, int route_id,
                         const TaskGraph& graph) {
  if (route_tasks.empty())
    throw std::invalid_argument("expand_route: route must be nonempty");

  const int sigma = graph.params.sigma_minutes;
  JobSequence seq;
  seq.route = route_id;
  seq.jobs.reserve(8 * route_tasks.size() - 3);

  auto add = [&](JobType type, int duration, int task, int hub) {
    Job job;
    job.route = route_id;
    job.index = static_cast<int>(seq.jobs.size()) + 1;
    job.type = type;
    job.duration = duration;
    job.task = task;
    job.hub = hub;
    seq.jobs.push_back(job);
  };

  for (std::size_t i = 0; i < route_tasks.size(); ++i) {
    const int t = route_tasks[i];
    const Task& task = graph.tasks[static_cast<std::size_t>(t)];
    if (i > 0) {
      const int prev = route_tasks[i - 1];
      const int prev_dest = graph.tasks[static_cast<std::size_t>(prev)].dest_hub;
      add(JobType::Park, Job::kFlexible, Job::kNone, prev_dest);
      add(JobType::Relocate, graph.relocate_minutes(prev, t), Job::kNone, Job::kNone);
      add(JobType::Park, Job::kFlexible, Job::kNone, task.origin_hub);
    }
    add(JobType::Load, sigma, t, task.origin_hub);
    add(JobType::Park, Job::kFlexible, Job::kNone, task.origin_hub);
    add(JobType::Drive, graph.drive_minutes[static_cast<std::size_t>(t)], t, Job::kNone);
    add(JobType::Park, Job::kFlexible, Job::kNone, task.dest_hub);
    add(JobType::Unload, sigma, t, task.dest_hub);
  }
  return seq;
}

void compute_domains(JobSequence& sequence, const TaskGraph& graph,
                     bool use_redundant_bounds, long horizon_end) {
  auto& jobs = sequence.jobs;
  const long delta = graph.params.delta_minutes;

  long horizon_lo = 0;  // trivial domains must include pre-zero LOAD windows
  for (Job& job : jobs) {
    if (job.type == JobType::Load) {
      const long p = graph.tasks[static_cast<std::size_t>(job.task)].pickup_minute;
      job.dom_lo = p - delta;
      job.dom_hi = p + delta;
      horizon_lo = std::min(horizon_lo, job.dom_lo);
    }
  }
  // translated domains: dom(j) = dom(j-2) + duration(j-2) for DRIVE/UNLOAD
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    Job& job = jobs[j];
    if (job.type == JobType::Drive || job.type == JobType::Unload) {
      const Job& base = jobs[j - 2];
      job.dom_lo = base.dom_lo + base.duration;
      job.dom_hi = base.dom_hi + base.duration;
    }
  }
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    Job& job = jobs[j];
    if (job.type == JobType::Relocate) {
      if (use_redundant_bounds) {
        // can start once unloading completes; must be in time for the next load
        job.dom_lo = jobs[j - 2].dom_lo + jobs[j - 2].duration;
        job.dom_hi = jobs[j + 2].dom_hi - job.duration;
      } else {
        job.dom_lo = horizon_lo;
        job.dom_hi = horizon_end;
      }
    }
  }
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    Job& job = jobs[j];
    if (job.type == JobType::Park) {
      if (use_redundant_bounds) {
        job.dom_lo = jobs[j - 1].dom_lo + jobs[j - 1].fixed_duration_or_zero();
        job.dom_hi = jobs[j + 1].dom_hi;
      } else {
        job.dom_lo = horizon_lo;
        job.dom_hi = horizon_end;
      }
    }
  }
  for (const Job& job : jobs) {
    if (job.dom_lo > job.dom_hi)
      throw InfeasibleExpansionError(
          "empty domain for job " + std::to_string(job.index) + " (" + to_string(job.type) +
          ") on route " + std::to_string(sequence.route));
  }
}

long default_horizon_end(const TaskGraph& graph) {
  long max_span = 0;
  for (int t = 0; t < graph.num_tasks(); ++t)
    max_span = std::max<long>(max_span, graph.sink_tau[static_cast<std::size_t>(t)]);
  return graph.params.horizon_minutes + 2L * graph.params.delta_minutes + max_span;
}

std::vector<long> initial_job_starts(const JobSequence& sequence, const RoutePlan& plan) {
  const auto& jobs = sequence.jobs;
  std::vector<long> starts(jobs.size(), 0);
  long clock = 0;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const Job& job = jobs[j];
    if (job.type == JobType::Load)
      clock = plan.start[static_cast<std::size_t>(job.task)];
    starts[j] = clock;
    clock += job.fixed_duration_or_zero();
  }
  return starts;
}

std::vector<JobSequence> expand_plan(const RoutePlan& plan, const TaskGraph& graph,
                                     bool use_redundant_bounds) {
  std::vector<JobSequence> sequences;
  sequences.reserve(plan.routes.size());
  const long horizon_end = default_horizon_end(graph);
  for (std::size_t r = 0; r < plan.routes.size(); ++r) {
    JobSequence seq = expand_route(plan.routes[r], static_cast<int>(r), graph);
    compute_domains(seq, graph, use_redundant_bounds, horizon_end);
    sequences.push_back(std::move(seq));
  }
  return sequences;
}

}  // namespace athn
