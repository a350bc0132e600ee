#include "athn/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>

#include "athn/errors.hpp"
#include "athn/route_solver.hpp"

namespace athn {

namespace {

std::string fmt(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

double elapsed_sec(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

std::ofstream open_csv(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  return out;
}

template <typename Fn>
auto stage(const std::string& name, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;  // caller misconfiguration, not a pipeline-stage failure
  } catch (const std::exception& e) {
    throw std::runtime_error("stage " + name + ": " + e.what());
  }
}

Instance load_or_generate(const Scenario& scenario) {
  if (scenario.instance_path.has_value() == scenario.generator.has_value())
    throw ConfigError("scenario needs exactly one of instance_path or generator");
  if (scenario.instance_path) return read_instance(*scenario.instance_path);
  return generate_synthetic(*scenario.generator, scenario.params, scenario.seed);
}

// Per-hub lower bound from compulsory parts: every LOAD/UNLOAD whose latest
// start precedes its earliest end occupies the hub on [dom_hi, dom_lo + dur).
// Any hub with at least one positive-duration job needs at least one unit.
std::vector<int> per_hub_lower(const std::vector<JobSequence>& sequences, int num_hubs) {
  std::vector<std::vector<std::pair<long, int>>> events(static_cast<std::size_t>(num_hubs));
  std::vector<int> lower(static_cast<std::size_t>(num_hubs), 0);
  for (const JobSequence& seq : sequences) {
    for (const Job& job : seq.jobs) {
      if ((job.type != JobType::Load && job.type != JobType::Unload) || job.duration <= 0)
        continue;
      const auto h = static_cast<std::size_t>(job.hub);
      lower[h] = std::max(lower[h], 1);
      if (job.dom_hi < job.dom_lo + job.duration) {
        events[h].emplace_back(job.dom_hi, +1);
        events[h].emplace_back(job.dom_lo + job.duration, -1);
      }
    }
  }
  for (int h = 0; h < num_hubs; ++h) {
    auto& ev = events[static_cast<std::size_t>(h)];
    std::sort(ev.begin(), ev.end());
    int level = 0;
    for (const auto& [time, delta] : ev) {
      level += delta;
      lower[static_cast<std::size_t>(h)] = std::max(lower[static_cast<std::size_t>(h)], level);
    }
  }
  return lower;
}

void write_artifacts(const Scenario& scenario, const RunReport& report,
                     const CapacityProblem& problem, const CapacitySolution& sol,
                     const TaskGraph& graph, const RoutePlan& plan) {
  const std::filesystem::path dir = scenario.out_dir;

  {
    auto out = open_csv(dir, "summary.csv");
    out << "key,value\n";
    out << "objective_miles," << fmt(report.objective_miles) << "\n";
    out << "route_gap," << fmt(report.route_gap) << "\n";
    out << "routes_used," << report.routes_used << "\n";
    out << "tasks_covered," << report.tasks_covered << "\n";
    out << "tasks_total," << graph.num_tasks() << "\n";
    out << "total_before," << report.total_before << "\n";
    out << "total_after," << report.total_after << "\n";
    out << "bound," << report.bound << "\n";
    out << "cp_proven_optimal," << (report.cp_proven_optimal ? 1 : 0) << "\n";
    out << "reduction_pct," << fmt(report.reduction_pct) << "\n";
    out << "load_fraction_shifted," << fmt(report.load_fraction_shifted) << "\n";
    out << "max_shift_minutes," << report.max_shift_minutes << "\n";
    out << "labor_cost_before," << fmt(labor_cost(report.total_before, scenario.labor)) << "\n";
    out << "labor_cost_after," << fmt(labor_cost(report.total_after, scenario.labor)) << "\n";
    out << "labor_savings,"
        << fmt(labor_cost(report.total_before - report.total_after, scenario.labor)) << "\n";
  }

  {
    auto out = open_csv(dir, "capacity_map.csv");
    out << "hub,x,y,capacity_before,capacity_after,capacity_lower\n";
    for (std::size_t h = 0; h < report.hubs.size(); ++h) {
      out << report.hubs[h].id << "," << fmt(report.hubs[h].location.x) << ","
          << fmt(report.hubs[h].location.y) << "," << report.cap_before[h] << ","
          << report.cap_after[h] << "," << report.cap_lower[h] << "\n";
    }
  }

  {
    auto out = open_csv(dir, "routes.csv");
    out << "route,position,task,load,origin_hub,dest_hub,pickup_minute,start_minute\n";
    for (std::size_t r = 0; r < plan.routes.size(); ++r) {
      for (std::size_t pos = 0; pos < plan.routes[r].size(); ++pos) {
        const int t = plan.routes[r][pos];
        const Task& task = graph.tasks[static_cast<std::size_t>(t)];
        out << r << "," << pos << "," << t << "," << task.load << "," << task.origin_hub
            << "," << task.dest_hub << "," << task.pickup_minute << ","
            << plan.start[static_cast<std::size_t>(t)] << "\n";
      }
    }
  }

  {
    auto out = open_csv(dir, "tasks.csv");
    out << "task,load,origin_hub,dest_hub,pickup_minute,covered,direct_miles\n";
    std::vector<char> covered(static_cast<std::size_t>(graph.num_tasks()), 0);
    for (const auto& route : plan.routes)
      for (int t : route) covered[static_cast<std::size_t>(t)] = 1;
    for (int t = 0; t < graph.num_tasks(); ++t) {
      const Task& task = graph.tasks[static_cast<std::size_t>(t)];
      out << t << "," << task.load << "," << task.origin_hub << "," << task.dest_hub << ","
          << task.pickup_minute << "," << int(covered[static_cast<std::size_t>(t)]) << ","
          << fmt(graph.direct[static_cast<std::size_t>(t)]) << "\n";
    }
  }

  {
    auto out = open_csv(dir, "schedule.csv");
    out << "route,index,type,hub,duration,dom_lo,dom_hi,start_before,start_after\n";
    for (std::size_t s = 0; s < problem.sequences.size(); ++s) {
      const auto& jobs = problem.sequences[s].jobs;
      for (std::size_t j = 0; j < jobs.size(); ++j) {
        const Job& job = jobs[j];
        out << problem.sequences[s].route << "," << job.index << "," << to_string(job.type)
            << "," << (job.hub == Job::kNone ? -1 : job.hub) << ","
            << (job.fixed_duration() ? job.duration : -1) << "," << job.dom_lo << ","
            << job.dom_hi << "," << problem.initial_starts[s][j] << "," << sol.starts[s][j]
            << "\n";
      }
    }
  }

  {
    auto out = open_csv(dir, "shift_histogram.csv");
    out << "bin_lo_minutes,bin_hi_minutes,loads,unloads\n";
    long max_shift = 0;
    for (long v : report.shifts.shifts) max_shift = std::max(max_shift, v);
    const long bins = max_shift / 10 + 1;
    std::vector<long> load_bins(static_cast<std::size_t>(bins), 0);
    std::vector<long> unload_bins(static_cast<std::size_t>(bins), 0);
    for (long v : report.shifts.load_shifts) ++load_bins[static_cast<std::size_t>(v / 10)];
    for (long v : report.shifts.unload_shifts)
      ++unload_bins[static_cast<std::size_t>(v / 10)];
    for (long b = 0; b < bins; ++b)
      out << b * 10 << "," << (b + 1) * 10 << "," << load_bins[static_cast<std::size_t>(b)]
          << "," << unload_bins[static_cast<std::size_t>(b)] << "\n";
  }

  if (scenario.dump_graph) {
    auto out = open_csv(dir, "graph.csv");
    out << "from,to,tau_minutes,cost_miles\n";
    for (const Arc& arc : graph.arcs)
      out << arc.from << "," << arc.to << "," << arc.tau << "," << fmt(arc.cost) << "\n";
  }
}

struct PipelineState {
  Instance instance;
  std::vector<Hub> hubs;
  TaskGraph graph;
  RoutePlan plan;
};

PipelineState front_half(const Scenario& scenario) {
  PipelineState st;
  st.instance = stage("instance", [&] { return load_or_generate(scenario); });
  stage("validate", [&] {
    st.instance.validate();
    return 0;
  });
  st.hubs = stage("hubs", [&] {
    return kmeans_hubs(st.instance, st.instance.params.num_hubs, st.instance.seed);
  });
  st.graph = stage("graph", [&] {
    return build_graph(build_tasks(st.instance, st.hubs), st.hubs, st.instance);
  });
  st.plan = stage("routes", [&] {
    RoutePlan plan = scenario.engine == RouteEngine::Exact
                         ? solve_exact(st.graph, st.instance.params.num_trucks,
                                       scenario.route_time_limit_sec)
                         : solve_heuristic(st.graph, st.instance.params.num_trucks);
    return earliest_start(plan, st.graph);
  });
  return st;
}

RunReport back_half(const Scenario& scenario, PipelineState& st, double* cp_seconds,
                    long* cp_nodes, bool write_files) {
  RunReport report;
  report.instance = st.instance;
  report.hubs = st.hubs;
  report.objective_miles = st.plan.objective;
  report.route_gap = st.plan.gap;
  report.routes_used = static_cast<int>(st.plan.routes.size());
  report.tasks_covered = st.plan.covered_count();

  const CapacityProblem problem = stage("expand", [&] {
    return make_capacity_problem(st.plan, st.graph, scenario.capacity_options);
  });
  report.cap_before = stage("measure", [&] {
    return measure_capacity(problem.sequences, problem.initial_starts, problem.num_hubs);
  });
  report.total_before =
      std::accumulate(report.cap_before.begin(), report.cap_before.end(), 0L);

  const auto t0 = std::chrono::steady_clock::now();
  const CapacitySolution sol =
      stage("capacity", [&] { return minimize_capacity(problem, scenario.cp_time_limit_sec); });
  if (cp_seconds) *cp_seconds = elapsed_sec(t0);
  if (cp_nodes) *cp_nodes = sol.nodes_explored;

  report.cap_after = sol.hub_capacity;
  report.total_after = sol.total;
  report.cp_proven_optimal = sol.proven_optimal;
  report.bound = stage("lowerbound", [&] { return lower_bound(problem, scenario.cp_time_limit_sec); });
  report.cap_lower = per_hub_lower(problem.sequences, problem.num_hubs);
  report.shifts = stage("shifts", [&] {
    return shift_report(problem.initial_starts, sol.starts, problem.sequences);
  });
  report.load_fraction_shifted = report.shifts.load_fraction_shifted;
  for (long v : report.shifts.shifts)
    report.max_shift_minutes = std::max(report.max_shift_minutes, v);
  if (report.total_before > 0)
    report.reduction_pct = 100.0 *
                           static_cast<double>(report.total_before - report.total_after) /
                           static_cast<double>(report.total_before);

  if (write_files) {
    stage("report", [&] {
      write_artifacts(scenario, report, problem, sol, st.graph, st.plan);
      if (scenario.generator)
        write_instance(st.instance, std::filesystem::path(scenario.out_dir) / "instance.json");
      return 0;
    });
  }
  return report;
}

}  // namespace

double labor_cost(long capacity_units, const LaborModel& model) {
  return static_cast<double>(capacity_units) * model.shifts_per_day * model.annual_wage_per_shift;
}

RunReport run_pipeline(const Scenario& scenario) {
  PipelineState st = front_half(scenario);
  return back_half(scenario, st, nullptr, nullptr, /*write_files=*/true);
}

std::vector<SweepRow> sweep(const Scenario& scenario, SweepAxis axis,
                            const std::vector<long>& values) {
  std::vector<SweepRow> rows;

  // fixed-routes mode reuses the baseline plan's route structure per point
  std::optional<PipelineState> baseline;
  const bool fixed_routes = !scenario.resolve_routes_in_sweep && axis != SweepAxis::Trucks;
  if (fixed_routes) baseline.emplace(front_half(scenario));

  for (long value : values) {
    SweepRow row;
    row.axis_value = value;
    try {
      Scenario point = scenario;
      point.out_dir = (std::filesystem::path(scenario.out_dir) /
                       ("point_" + std::to_string(value)))
                          .string();
      switch (axis) {
        case SweepAxis::Sigma:
          point.params.sigma_minutes = static_cast<int>(value);
          break;
        case SweepAxis::Delta:
          point.params.delta_minutes = static_cast<int>(value);
          break;
        case SweepAxis::Trucks:
          point.params.num_trucks = static_cast<int>(value);
          break;
      }
      PipelineState st;
      if (fixed_routes) {
        st.instance = baseline->instance;
        st.instance.params = point.params;
        st.hubs = baseline->hubs;
        st.graph = stage("graph", [&] {
          return build_graph(build_tasks(st.instance, st.hubs), st.hubs, st.instance);
        });
        RoutePlan plan;
        plan.routes = baseline->plan.routes;
        plan.start.assign(static_cast<std::size_t>(st.graph.num_tasks()),
                          RoutePlan::kUncovered);
        st.plan = stage("routes", [&] {
          RoutePlan fixed = earliest_start(plan, st.graph);
          fixed.objective = objective_value(fixed, st.graph);
          return fixed;
        });
      } else {
        st = front_half(point);
      }
      const RunReport report =
          back_half(point, st, &row.cp_seconds, nullptr, /*write_files=*/false);
      row.total_before = report.total_before;
      row.total_after = report.total_after;
      row.bound = report.bound;
      row.reduction_pct = report.reduction_pct;
      row.tasks_covered = report.tasks_covered;
      row.proven = report.cp_proven_optimal;
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
    rows.push_back(row);
  }

  auto out = open_csv(scenario.out_dir, "sweep.csv");
  const char* axis_name = axis == SweepAxis::Sigma   ? "sigma_minutes"
                          : axis == SweepAxis::Delta ? "delta_minutes"
                                                     : "num_trucks";
  out << axis_name
      << ",total_before,total_after,bound,reduction_pct,tasks_covered,proven,cp_seconds,failed,error\n";
  for (const SweepRow& row : rows) {
    std::string error = row.error;
    std::replace(error.begin(), error.end(), ',', ';');
    out << row.axis_value << "," << row.total_before << "," << row.total_after << ","
        << row.bound << "," << fmt(row.reduction_pct) << "," << row.tasks_covered << ","
        << (row.proven ? 1 : 0) << "," << fmt(row.cp_seconds) << "," << (row.failed ? 1 : 0) << "," << error << "\n";
  }
  return rows;
}

std::vector<AblationCell> ablation(const Scenario& scenario,
                                   const std::vector<int>& truck_counts) {
  std::vector<AblationCell> cells;
  for (int trucks : truck_counts) {
    Scenario point = scenario;
    point.params.num_trucks = trucks;
    PipelineState st = front_half(point);

    struct Combo {
      bool bounds, pin;
    };
    const Combo combos[4] = {{false, false}, {true, false}, {false, true}, {true, true}};
    double baseline_seconds = 0.0;
    std::vector<AblationCell> group;
    bool all_proven = true;
    for (const Combo& combo : combos) {
      CapacityOptions options;
      options.use_redundant_bounds = combo.bounds;
      options.use_relocation_pinning = combo.pin;
      const CapacityProblem problem = make_capacity_problem(st.plan, st.graph, options);
      const auto t0 = std::chrono::steady_clock::now();
      const CapacitySolution sol = minimize_capacity(problem, point.cp_time_limit_sec);
      AblationCell cell;
      cell.trucks = trucks;
      cell.redundant_bounds = combo.bounds;
      cell.redundant_constraints = combo.pin;
      cell.total_after = sol.total;
      cell.nodes = sol.nodes_explored;
      cell.seconds = elapsed_sec(t0);
      if (!combo.bounds && !combo.pin) baseline_seconds = cell.seconds;
      cell.speedup_vs_baseline =
          cell.seconds > 0.0 ? baseline_seconds / cell.seconds : 1.0;
      all_proven = all_proven && sol.proven_optimal;
      group.push_back(cell);
    }
    if (all_proven) {
      for (const AblationCell& cell : group)
        if (cell.total_after != group.front().total_after)
          throw VerificationError(
              "ablation: proven optima disagree across option combinations at K=" +
              std::to_string(trucks));
    }
    cells.insert(cells.end(), group.begin(), group.end());
  }

  auto out = open_csv(scenario.out_dir, "ablation.csv");
  out << "trucks,redundant_bounds,redundant_constraints,total_after,nodes,seconds,"
         "speedup_vs_baseline\n";
  for (const AblationCell& cell : cells)
    out << cell.trucks << "," << (cell.redundant_bounds ? 1 : 0) << ","
        << (cell.redundant_constraints ? 1 : 0) << "," << cell.total_after << ","
        << cell.nodes << "," << fmt(cell.seconds) << "," << fmt(cell.speedup_vs_baseline)
        << "\n";
  return cells;
}

}  // namespace athn
