#include "athn/route_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "athn/errors.hpp"

namespace athn {

namespace {

constexpr double kEps = 1e-9;  // pruning slack: never cut a leaf the bound
                               // arithmetic might have rounded past the incumbent

int window_lo(const TaskGraph& g, int t) {
  return g.tasks[static_cast<std::size_t>(t)].pickup_minute - g.params.delta_minutes;
}

int window_hi(const TaskGraph& g, int t) {
  return g.tasks[static_cast<std::size_t>(t)].pickup_minute + g.params.delta_minutes;
}

}  // namespace

int RoutePlan::covered_count() const {
  int covered = 0;
  for (const auto& route : routes) covered += static_cast<int>(route.size());
  return covered;
}

bool chain_feasible(const std::vector<int>& route, const TaskGraph& graph,
                    std::vector<int>* out_starts) {
  if (route.empty()) return true;
  int x = window_lo(graph, route.front());
  if (out_starts) {
    out_starts->clear();
    out_starts->push_back(x);
  }
  for (std::size_t i = 1; i < route.size(); ++i) {
    const Succ* arc = graph.find_succ(route[i - 1], route[i]);
    if (!arc) return false;
    x = std::max(window_lo(graph, route[i]), x + arc->tau);
    if (x > window_hi(graph, route[i])) return false;
    if (out_starts) out_starts->push_back(x);
  }
  return true;
}

double objective_value(const RoutePlan& plan, const TaskGraph& graph) {
  double objective = graph.sum_direct();
  for (const auto& route : plan.routes) {
    for (std::size_t i = 0; i + 1 < route.size(); ++i) {
      const Succ* arc = graph.find_succ(route[i], route[i + 1]);
      if (!arc)
        throw VerificationError("objective_value: route uses a pruned or missing arc");
      objective += arc->cost;
    }
    if (!route.empty())
      objective += graph.sink_cost[static_cast<std::size_t>(route.back())];
  }
  return objective;
}

RoutePlan earliest_start(const RoutePlan& plan, const TaskGraph& graph) {
  RoutePlan out = plan;
  out.start.assign(static_cast<std::size_t>(graph.num_tasks()), RoutePlan::kUncovered);
  std::vector<int> starts;
  for (const auto& route : out.routes) {
    if (!chain_feasible(route, graph, &starts))
      throw VerificationError("earliest_start: infeasible route");
    for (std::size_t i = 0; i < route.size(); ++i)
      out.start[static_cast<std::size_t>(route[i])] = starts[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
/// Exact search: depth-first branch-and-bound over route construction.
// ---------------------------------------------------------------------------

namespace {

struct ExactSearch {
  const TaskGraph& g;
  int max_routes;
  std::chrono::steady_clock::time_point deadline;

  std::vector<double> min_out;       // min(0, cheapest out-arc) per task
  std::vector<double> must_min_out;  // cheapest out-arc per task (sink included)
  std::vector<char> covered;
  std::vector<std::vector<int>> routes;

  double accrued = 0.0;  // sum d + arc costs committed so far
  double tail_lb = 0.0;  // sum of min_out over uncovered tasks
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::vector<int>> best_routes;
  long nodes = 0;
  bool timed_out = false;

  ExactSearch(const TaskGraph& graph, int k, double time_limit_sec)
      : g(graph),
        max_routes(k),
        deadline(std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                     std::chrono::duration<double>(time_limit_sec))) {
    const int n = g.num_tasks();
    min_out.resize(static_cast<std::size_t>(n));
    must_min_out.resize(static_cast<std::size_t>(n));
    covered.assign(static_cast<std::size_t>(n), 0);
    for (int t = 0; t < n; ++t) {
      const auto ti = static_cast<std::size_t>(t);
      double cheapest = g.sink_cost[ti];
      for (const Succ& s : g.succs[ti]) cheapest = std::min(cheapest, s.cost);
      must_min_out[ti] = cheapest;
      min_out[ti] = std::min(0.0, cheapest);
      tail_lb += min_out[ti];
    }
    accrued = g.sum_direct();
  }

  bool out_of_time() {
    if ((nodes & 1023) == 0 && std::chrono::steady_clock::now() > deadline)
      timed_out = true;
    return timed_out;
  }

  // No route is open: record the leaf (remaining tasks go direct), then try
  // opening a new route. Route first-tasks ascend to break vehicle symmetry.
  void branch_closed(int min_first_task) {
    ++nodes;
    if (out_of_time()) return;
    if (accrued < best) {
      best = accrued;
      best_routes = routes;
    }
    if (static_cast<int>(routes.size()) >= max_routes) return;
    for (int t = min_first_task; t < g.num_tasks(); ++t) {
      const auto ti = static_cast<std::size_t>(t);
      if (covered[ti]) continue;
      if (accrued + (tail_lb - min_out[ti]) + must_min_out[ti] >= best + kEps) continue;
      const double saved_tail = tail_lb;
      covered[ti] = 1;
      tail_lb -= min_out[ti];
      routes.push_back({t});
      branch_open(t, window_lo(g, t), t + 1);
      routes.pop_back();
      tail_lb = saved_tail;
      covered[ti] = 0;
    }
  }

  // A route is open ending at `last`, which starts no earlier than x_last.
  void branch_open(int last, int x_last, int min_first_task) {
    ++nodes;
    if (out_of_time()) return;
    const auto li = static_cast<std::size_t>(last);

    // close the route
    {
      const double saved = accrued;
      accrued += g.sink_cost[li];
      if (accrued + tail_lb < best + kEps) branch_closed(min_first_task);
      accrued = saved;
    }

    for (const Succ& s : g.succs[li]) {
      const auto ui = static_cast<std::size_t>(s.task);
      if (covered[ui]) continue;
      const int e = std::max(window_lo(g, s.task), x_last + s.tau);
      if (e > window_hi(g, s.task)) continue;
      const double saved_accrued = accrued;
      const double saved_tail = tail_lb;
      const double next_accrued = accrued + s.cost;
      const double next_tail = tail_lb - min_out[ui];
      if (next_accrued + next_tail + must_min_out[ui] >= best + kEps) continue;
      covered[ui] = 1;
      tail_lb = next_tail;
      accrued = next_accrued;
      routes.back().push_back(s.task);
      branch_open(s.task, e, min_first_task);
      routes.back().pop_back();
      accrued = saved_accrued;
      tail_lb = saved_tail;
      covered[ui] = 0;
    }
  }
};

}  // namespace

RoutePlan solve_exact(const TaskGraph& graph, int num_trucks, double time_limit_sec) {
  ExactSearch search(graph, num_trucks, time_limit_sec);
  const double root_lb = search.accrued + search.tail_lb;
  search.branch_closed(0);

  RoutePlan plan;
  plan.routes = search.best_routes;
  plan.objective = search.best;
  if (search.timed_out && search.best > root_lb + kEps)
    plan.gap = (search.best - root_lb) / std::max(std::abs(search.best), 1e-9);
  plan = earliest_start(plan, graph);
  return plan;
}

// ---------------------------------------------------------------------------
// Heuristic: cheapest insertion, then relocate/swap improvement.
// ---------------------------------------------------------------------------

namespace {

struct HeuristicState {
  const TaskGraph& g;
  int max_routes;
  std::vector<std::vector<int>> routes;
  std::vector<std::vector<int>> earliest;  // per route, per position
  std::vector<std::vector<int>> latest;    // latest feasible start per position
  std::vector<char> covered;

  explicit HeuristicState(const TaskGraph& graph, int k)
      : g(graph), max_routes(k), covered(static_cast<std::size_t>(graph.num_tasks()), 0) {}

  void refresh(std::size_t r) {
    const auto& route = routes[r];
    auto& e = earliest[r];
    auto& l = latest[r];
    e.resize(route.size());
    l.resize(route.size());
    for (std::size_t i = 0; i < route.size(); ++i) {
      const int lo = window_lo(g, route[i]);
      e[i] = (i == 0) ? lo
                      : std::max(lo, e[i - 1] + g.find_succ(route[i - 1], route[i])->tau);
    }
    for (std::size_t i = route.size(); i-- > 0;) {
      const int hi = window_hi(g, route[i]);
      l[i] = (i + 1 == route.size())
                 ? hi
                 : std::min(hi, l[i + 1] - g.find_succ(route[i], route[i + 1])->tau);
    }
  }

  double route_cost(const std::vector<int>& route) const {
    double cost = 0.0;
    for (std::size_t i = 0; i + 1 < route.size(); ++i) {
      const Succ* arc = g.find_succ(route[i], route[i + 1]);
      if (!arc) return std::numeric_limits<double>::infinity();
      cost += arc->cost;
    }
    if (!route.empty()) cost += g.sink_cost[static_cast<std::size_t>(route.back())];
    return cost;
  }

  // Marginal cost of inserting task u into route r at position pos, or +inf
  // when an arc is missing or the time windows break.
  double insertion_delta(int u, std::size_t r, std::size_t pos) const {
    const auto& route = routes[r];
    const auto ui = static_cast<std::size_t>(u);
    double delta = 0.0;
    int e_u = window_lo(g, u);
    if (pos > 0) {
      const int prev = route[pos - 1];
      const Succ* in_arc = g.find_succ(prev, u);
      if (!in_arc) return std::numeric_limits<double>::infinity();
      delta += in_arc->cost;
      e_u = std::max(e_u, earliest[r][pos - 1] + in_arc->tau);
    }
    if (e_u > window_hi(g, u)) return std::numeric_limits<double>::infinity();
    if (pos < route.size()) {
      const int next = route[pos];
      const Succ* out_arc = g.find_succ(u, next);
      if (!out_arc) return std::numeric_limits<double>::infinity();
      if (e_u + out_arc->tau > latest[r][pos]) return std::numeric_limits<double>::infinity();
      delta += out_arc->cost;
      if (pos > 0) {
        delta -= g.find_succ(route[pos - 1], next)->cost;
      }
    } else {
      delta += g.sink_cost[ui];
      if (pos > 0) delta -= g.sink_cost[static_cast<std::size_t>(route[pos - 1])];
    }
    return delta;
  }
};

struct BestPos {
  double delta = std::numeric_limits<double>::infinity();
  int pos = -1;
};

}  // namespace

RoutePlan solve_heuristic(const TaskGraph& graph, int num_trucks) {
  const int n = graph.num_tasks();
  HeuristicState st(graph, num_trucks);

  // --- cheapest-insertion construction ---
  // best[u][r]: best insertion of u into route r; refreshed when r changes.
  std::vector<std::vector<BestPos>> best(static_cast<std::size_t>(n));

  auto recompute_column = [&](std::size_t r) {
    for (int u = 0; u < n; ++u) {
      const auto ui = static_cast<std::size_t>(u);
      if (st.covered[ui]) continue;
      BestPos bp;
      for (std::size_t pos = 0; pos <= st.routes[r].size(); ++pos) {
        const double d = st.insertion_delta(u, r, pos);
        if (d < bp.delta) {
          bp.delta = d;
          bp.pos = static_cast<int>(pos);
        }
      }
      best[ui][r] = bp;
    }
  };

  for (;;) {
    double best_delta = -1e-12;  // only strictly improving insertions
    int best_task = -1;
    int best_route = -1;  // -1 below means "open a new route"
    int best_pos = 0;
    bool best_new = false;
    for (int u = 0; u < n; ++u) {
      const auto ui = static_cast<std::size_t>(u);
      if (st.covered[ui]) continue;
      for (std::size_t r = 0; r < st.routes.size(); ++r) {
        const BestPos& bp = best[ui][r];
        if (bp.delta < best_delta) {
          best_delta = bp.delta;
          best_task = u;
          best_route = static_cast<int>(r);
          best_pos = bp.pos;
          best_new = false;
        }
      }
      if (static_cast<int>(st.routes.size()) < num_trucks) {
        const double d = graph.sink_cost[ui];
        if (d < best_delta) {
          best_delta = d;
          best_task = u;
          best_new = true;
        }
      }
    }
    if (best_task < 0) break;

    std::size_t r;
    if (best_new) {
      st.routes.push_back({best_task});
      st.earliest.emplace_back();
      st.latest.emplace_back();
      r = st.routes.size() - 1;
      for (auto& row : best) row.emplace_back();
    } else {
      r = static_cast<std::size_t>(best_route);
      st.routes[r].insert(st.routes[r].begin() + best_pos, best_task);
    }
    st.covered[static_cast<std::size_t>(best_task)] = 1;
    st.refresh(r);
    recompute_column(r);
  }

  // --- relocate/swap improvement, best move per pass ---
  auto try_candidate = [&](const std::vector<int>& route) -> double {
    if (!chain_feasible(route, graph)) return std::numeric_limits<double>::infinity();
    return st.route_cost(route);
  };

  constexpr int kMaxPasses = 200;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    double best_delta = -1e-9;
    std::vector<int> new_r1, new_r2;
    std::size_t arg_r1 = 0, arg_r2 = 0;
    bool arg_new_route = false;
    int arg_new_task = -1;

    for (std::size_t r1 = 0; r1 < st.routes.size(); ++r1) {
      const double cost_r1 = st.route_cost(st.routes[r1]);
      for (std::size_t i = 0; i < st.routes[r1].size(); ++i) {
        const int u = st.routes[r1][i];
        std::vector<int> without = st.routes[r1];
        without.erase(without.begin() + static_cast<long>(i));
        const double cost_without = try_candidate(without);
        if (!std::isfinite(cost_without)) continue;
        const double removal = cost_without - cost_r1;

        // relocate into other routes
        for (std::size_t r2 = 0; r2 < st.routes.size(); ++r2) {
          if (r2 == r1) continue;
          const double cost_r2 = st.route_cost(st.routes[r2]);
          for (std::size_t pos = 0; pos <= st.routes[r2].size(); ++pos) {
            std::vector<int> with = st.routes[r2];
            with.insert(with.begin() + static_cast<long>(pos), u);
            const double cost_with = try_candidate(with);
            if (!std::isfinite(cost_with)) continue;
            const double delta = removal + (cost_with - cost_r2);
            if (delta < best_delta) {
              best_delta = delta;
              arg_r1 = r1;
              arg_r2 = r2;
              new_r1 = without;
              new_r2 = with;
              arg_new_route = false;
              arg_new_task = -1;
            }
          }
        }
        // relocate within the same route
        for (std::size_t pos = 0; pos + 1 <= without.size(); ++pos) {
          std::vector<int> with = without;
          with.insert(with.begin() + static_cast<long>(pos), u);
          if (with == st.routes[r1]) continue;
          const double cost_with = try_candidate(with);
          if (!std::isfinite(cost_with)) continue;
          const double delta = cost_with - cost_r1;
          if (delta < best_delta) {
            best_delta = delta;
            arg_r1 = r1;
            arg_r2 = r1;
            new_r1 = with;
            new_r2 = with;
            arg_new_route = false;
            arg_new_task = -1;
          }
        }
        // relocate to a fresh route
        if (st.routes[r1].size() > 1 &&
            static_cast<int>(st.routes.size()) < num_trucks) {
          const double delta =
              removal + graph.sink_cost[static_cast<std::size_t>(u)];
          if (delta < best_delta) {
            best_delta = delta;
            arg_r1 = r1;
            new_r1 = without;
            arg_new_route = true;
            arg_new_task = u;
          }
        }
      }
    }

    // swaps between routes
    for (std::size_t r1 = 0; r1 < st.routes.size(); ++r1) {
      const double cost_r1 = st.route_cost(st.routes[r1]);
      for (std::size_t r2 = r1 + 1; r2 < st.routes.size(); ++r2) {
        const double cost_r2 = st.route_cost(st.routes[r2]);
        for (std::size_t i = 0; i < st.routes[r1].size(); ++i) {
          for (std::size_t j = 0; j < st.routes[r2].size(); ++j) {
            std::vector<int> a = st.routes[r1];
            std::vector<int> b = st.routes[r2];
            std::swap(a[i], b[j]);
            const double ca = try_candidate(a);
            if (!std::isfinite(ca)) continue;
            const double cb = try_candidate(b);
            if (!std::isfinite(cb)) continue;
            const double delta = (ca - cost_r1) + (cb - cost_r2);
            if (delta < best_delta) {
              best_delta = delta;
              arg_r1 = r1;
              arg_r2 = r2;
              new_r1 = a;
              new_r2 = b;
              arg_new_route = false;
              arg_new_task = -1;
            }
          }
        }
      }
    }

    if (new_r1.empty() && new_r2.empty() && !arg_new_route) break;
    if (arg_new_route) {
      st.routes[arg_r1] = new_r1;
      st.routes.push_back({arg_new_task});
      st.earliest.emplace_back();
      st.latest.emplace_back();
      st.refresh(st.routes.size() - 1);
    } else if (arg_r1 == arg_r2) {
      st.routes[arg_r1] = new_r1;
    } else {
      st.routes[arg_r1] = new_r1;
      st.routes[arg_r2] = new_r2;
    }
    // drop emptied routes
    for (std::size_t r = st.routes.size(); r-- > 0;) {
      if (st.routes[r].empty()) {
        st.routes.erase(st.routes.begin() + static_cast<long>(r));
        st.earliest.erase(st.earliest.begin() + static_cast<long>(r));
        st.latest.erase(st.latest.begin() + static_cast<long>(r));
      }
    }
    for (std::size_t r = 0; r < st.routes.size(); ++r) st.refresh(r);
  }

  RoutePlan plan;
  plan.routes = st.routes;
  plan = earliest_start(plan, graph);
  plan.objective = objective_value(plan, graph);

  double root_lb = graph.sum_direct();
  for (int t = 0; t < n; ++t) {
    const auto ti = static_cast<std::size_t>(t);
    double cheapest = graph.sink_cost[ti];
    for (const Succ& s : graph.succs[ti]) cheapest = std::min(cheapest, s.cost);
    root_lb += std::min(0.0, cheapest);
  }
  plan.gap = (plan.objective > root_lb + kEps)
                 ? (plan.objective - root_lb) / std::max(std::abs(plan.objective), 1e-9)
                 : 0.0;
  return plan;
}

}  // namespace athn
