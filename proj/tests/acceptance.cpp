// Acceptance suite: end-to-end checks of the optimizer against independent
// oracles, accounting reference points, scale/timing targets, and
// reproducibility. Prints one PASS/FAIL line per criterion and exits nonzero
// if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "athn/capacity.hpp"
#include "athn/report.hpp"
#include "athn/route_solver.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace athn;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void verdict(int number, const std::string& name, bool ok, const std::string& detail) {
  std::printf("criterion %2d [%s] %s%s%s\n", number, ok ? "PASS" : "FAIL",
              name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return in.good() || in.eof() ? out.str() : std::string("<unreadable>");
}

long total_of(const std::vector<int>& caps) {
  return std::accumulate(caps.begin(), caps.end(), 0L);
}

// small random capacity problem routed by the heuristic
CapacityProblem capacity_case(std::uint64_t seed, int loads, int hubs, int trucks,
                              int delta, long horizon) {
  const Instance instance = helpers::random_small(seed, loads, hubs, horizon);
  Instance patched = instance;
  patched.params.delta_minutes = delta;
  const auto hub_sites = kmeans_hubs(patched, hubs, seed);
  const TaskGraph g = build_graph(build_tasks(patched, hub_sites), hub_sites, patched);
  const RoutePlan plan = solve_heuristic(g, trucks);
  return make_capacity_problem(plan, g, CapacityOptions{});
}

// Exact route optimum vs the exhaustive route enumerator, zero tolerance.
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  int mismatches = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const int n = 4 + static_cast<int>(seed % 3);     // 4..6 tasks
    const int hubs = 2 + static_cast<int>(seed % 2);  // 2..3 hubs
    const int k = 1 + static_cast<int>(seed % 3);     // trucks 1..3
    const TaskGraph g = helpers::random_small_graph(seed, n, hubs);
    const double oracle_best = oracle::best_route_objective(g, k);
    const RoutePlan plan = solve_exact(g, k);
    if (plan.objective != oracle_best || plan.gap != 0.0) ++mismatches;
  }
  const double secs = seconds_since(t0);
  char detail[128];
  std::snprintf(detail, sizeof(detail), "50 instances, %d mismatches, %.1fs",
                mismatches, secs);
  verdict(1, "exact routing equals the exhaustive enumerator (tolerance 0)",
          mismatches == 0 && secs < 120.0, detail);
}

// Capacity minimization vs the minute-grid brute force.
void criterion_2() {
  const auto t0 = std::chrono::steady_clock::now();
  int mismatches = 0, unproven = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int loads = 4 + static_cast<int>(seed % 5);   // 4..8 tasks
    const int delta = (seed % 3 == 0) ? 120 : 60;       // delta <= 120
    const CapacityProblem problem =
        capacity_case(seed, loads, 2 + static_cast<int>(seed % 2), 3, delta, 720);
    const CapacitySolution fast = minimize_capacity(problem, 60.0);
    if (!fast.proven_optimal) ++unproven;
    const CapacitySolution brute = brute_force_optimum(problem);
    if (fast.total != brute.total) ++mismatches;
  }
  const double secs = seconds_since(t0);
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "30 instances, %d mismatches, %d unproven, %.1fs", mismatches,
                unproven, secs);
  verdict(2, "capacity optimum equals the minute-grid brute force",
          mismatches == 0 && unproven == 0 && secs < 300.0, detail);
}

// lower bound <= optimized total <= baseline total on every solved instance.
void criterion_3() {
  int violations = 0, runs = 0;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const CapacityProblem problem = capacity_case(seed, 12, 3, 4, 60, 1440);
    const long before = total_of(
        measure_capacity(problem.sequences, problem.initial_starts, problem.num_hubs));
    const CapacitySolution sol = minimize_capacity(problem, 30.0);
    const long lb = lower_bound(problem, 30.0);
    ++runs;
    if (!(lb <= sol.total && sol.total <= before && sol.bound <= sol.total))
      ++violations;
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail), "%d runs, %d violations", runs, violations);
  verdict(3, "bound <= optimized total <= baseline total on every run",
          violations == 0, detail);
}

// The redundant domain bounds and the relocation pinning rule must not change
// the optimum, in any combination.
void criterion_4() {
  int disagreements = 0, unproven = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const TaskGraph g = helpers::random_small_graph(seed, 6, 3, 720);
    const RoutePlan plan = solve_heuristic(g, 3);
    long reference = -1;
    for (const bool bounds : {false, true}) {
      for (const bool pin : {false, true}) {
        CapacityOptions options;
        options.use_redundant_bounds = bounds;
        options.use_relocation_pinning = pin;
        const CapacitySolution sol =
            minimize_capacity(make_capacity_problem(plan, g, options), 60.0);
        if (!sol.proven_optimal) ++unproven;
        if (reference < 0) reference = sol.total;
        else if (sol.total != reference) ++disagreements;
      }
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail), "10 instances x 4 combos, %d disagreements",
                disagreements);
  verdict(4, "redundant bounds and pinning leave the optimum unchanged",
          disagreements == 0 && unproven == 0, detail);
}

// Capacity optimization must not disturb the routing objective.
void criterion_5() {
  int changed = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const TaskGraph g = helpers::random_small_graph(seed, 15, 3, 1440);
    const RoutePlan plan = solve_heuristic(g, 4);
    const double before = objective_value(plan, g);
    const CapacityProblem problem = make_capacity_problem(plan, g, CapacityOptions{});
    (void)minimize_capacity(problem, 30.0);
    if (objective_value(plan, g) != before) ++changed;  // bitwise
  }
  verdict(5, "route objective is bit-identical after capacity optimization",
          changed == 0, changed ? "objective drifted" : "10 instances");
}

void criterion_6() {
  const double one = labor_cost(1);
  const double big = labor_cost(88);
  char detail[96];
  std::snprintf(detail, sizeof(detail), "cost(1)=%.0f cost(88)=%.0f", one, big);
  verdict(6, "labor accounting hits the reference points",
          one == 172671.0 && std::abs(big - 15200000.0) <= 50000.0, detail);
}

Scenario flagship_scenario(const std::string& out_dir) {
  Scenario s;
  GeneratorConfig gen;
  gen.num_loads = 2000;
  s.generator = gen;
  s.params.num_hubs = 50;
  s.params.num_trucks = 100;
  s.seed = 42;
  s.engine = RouteEngine::Heuristic;
  s.out_dir = out_dir;
  s.cp_time_limit_sec = 120.0;
  return s;
}

// Full-scale run: 2000 loads, 50 hubs, 100 trucks, within the wall-clock
// budget, with a real capacity reduction and bounded shifts.
RunReport criterion_7(const fs::path& out_root) {
  const auto t0 = std::chrono::steady_clock::now();
  const Scenario s = flagship_scenario((out_root / "a").string());
  const RunReport r = run_pipeline(s);
  const double secs = seconds_since(t0);
  const long max_shift = 2L * s.params.delta_minutes;
  const bool ok = secs < 1800.0 && r.total_before > 0 &&
                  r.total_after < r.total_before && r.max_shift_minutes <= max_shift;
  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "%.0fs, capacity %ld -> %ld (-%.1f%%), max shift %ld min, "
                "%.2f%% of loadings rescheduled",
                secs, r.total_before, r.total_after, r.reduction_pct,
                r.max_shift_minutes, 100.0 * r.load_fraction_shifted);
  verdict(7, "2000-load / 50-hub / 100-truck run inside 30 minutes", ok, detail);
  return r;
}

// Wider windows can only help: fixed routes, non-increasing proven optima.
void criterion_8() {
  int violations = 0, unproven = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Scenario s;
    GeneratorConfig gen;
    gen.num_loads = 12;
    gen.num_regions = 2;
    gen.region_spread_miles = 40.0;
    gen.horizon_minutes = 1440;
    gen.bounding_box_x_miles = 400.0;
    gen.bounding_box_y_miles = 300.0;
    s.generator = gen;
    s.params = helpers::small_params();
    s.params.num_hubs = 3;
    s.params.num_trucks = 4;
    s.params.delta_minutes = 0;  // routes solved with pinned windows
    s.seed = seed;
    s.out_dir = "/tmp/athn_acceptance_c8_" + std::to_string(seed);
    s.resolve_routes_in_sweep = false;
    s.cp_time_limit_sec = 60.0;
    const auto rows = sweep(s, SweepAxis::Delta, {0, 30, 60, 120});
    long previous = -1;
    for (const SweepRow& row : rows) {
      if (row.failed || !row.proven) ++unproven;
      if (previous >= 0 && row.total_after > previous) ++violations;
      previous = row.total_after;
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail), "10 seeds x 4 deltas, %d violations, %d unproven",
                violations, unproven);
  verdict(8, "capacity optimum is non-increasing in the shift window",
          violations == 0 && unproven == 0, detail);
}

// Re-running the flagship scenario must reproduce every artifact byte for byte.
void criterion_9(const fs::path& out_root) {
  const Scenario s = flagship_scenario((out_root / "b").string());
  (void)run_pipeline(s);
  std::string first_diff;
  for (const char* name :
       {"summary.csv", "capacity_map.csv", "routes.csv", "tasks.csv",
        "schedule.csv", "shift_histogram.csv", "instance.json"}) {
    if (slurp(out_root / "a" / name) != slurp(out_root / "b" / name)) {
      first_diff = name;
      break;
    }
  }
  verdict(9, "repeated runs produce byte-identical artifacts", first_diff.empty(),
          first_diff.empty() ? "7 artifacts compared" : "differs: " + first_diff);
}

// Ablation harness over truck counts; all option combinations must agree.
void criterion_10() {
  Scenario s;
  GeneratorConfig gen;
  gen.num_loads = 200;
  s.generator = gen;
  s.params.num_hubs = 8;
  s.seed = 11;
  s.out_dir = "/tmp/athn_acceptance_c10";
  s.cp_time_limit_sec = 60.0;
  bool ok = true;
  std::string detail;
  try {
    const auto cells = ablation(s, {10, 20, 30});
    ok = cells.size() == 12;
    std::ostringstream out;
    for (std::size_t i = 0; i + 3 < cells.size(); i += 4) {
      for (int j = 1; j < 4; ++j)
        if (cells[i + j].total_after != cells[i].total_after) ok = false;
      const AblationCell& full = cells[i + 3];  // both options on
      out << "K=" << full.trucks << " speedup " << std::fixed
          << std::setprecision(2) << full.speedup_vs_baseline << "x; ";
    }
    detail = out.str();
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  verdict(10, "ablation cells agree across option combinations", ok, detail);
}

}  // namespace

int main() {
  const fs::path out_root = "/tmp/athn_acceptance_flagship";
  fs::remove_all(out_root);

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  (void)criterion_7(out_root);
  criterion_8();
  criterion_9(out_root);
  criterion_10();

  std::printf("%s\n", g_failures == 0 ? "ALL CRITERIA PASSED"
                                      : "SOME CRITERIA FAILED");
  return g_failures == 0 ? 0 : 1;
}
