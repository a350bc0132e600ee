#include "athn/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "athn/errors.hpp"

namespace athn {

namespace {

// Deterministic substitute for a wall-clock limit: equal-seed runs explore
// the same nodes bit for bit even when the search does not close.
constexpr long kNodesPerSecond = 20000;

// -------------------------------------------------------------------------
// Reduced model: one decision per task (its LOAD start). DRIVE and UNLOAD
// follow at fixed offsets, PARK jobs absorb slack, and consecutive tasks on
// a route are chained by the arc time tau.
// -------------------------------------------------------------------------

struct RTask {
  int seq = 0;
  int block = 0;
  int load_job = 0;      // index into sequence.jobs
  long lo0 = 0, hi0 = 0;  // root LOAD domain
  int load_hub = 0, unload_hub = 0;
  int load_dur = 0, unload_dur = 0;
  long unload_offset = 0;  // S_unload = S_load + unload_offset
  long tau_next = 0;       // S_load(next) >= S_load + tau_next
  int next = -1, prev = -1;
};

struct HubItem {
  int rtask = 0;
  bool unload = false;

  long offset(const std::vector<RTask>& rt) const {
    return unload ? rt[static_cast<std::size_t>(rtask)].unload_offset : 0;
  }
  int dur(const std::vector<RTask>& rt) const {
    const RTask& r = rt[static_cast<std::size_t>(rtask)];
    return unload ? r.unload_dur : r.load_dur;
  }
};

struct Reduced {
  std::vector<RTask> rtasks;
  std::vector<std::vector<int>> per_seq;          // rtask ids per sequence
  std::vector<std::vector<HubItem>> hub_items;     // indexed by hub id
  std::vector<int> hubs_in_use;                    // hubs with at least one item
};

Reduced extract_reduced(const CapacityProblem& problem) {
  Reduced red;
  red.hub_items.resize(static_cast<std::size_t>(problem.num_hubs));
  red.per_seq.resize(problem.sequences.size());
  for (std::size_t s = 0; s < problem.sequences.size(); ++s) {
    const auto& jobs = problem.sequences[s].jobs;
    const int m = problem.sequences[s].task_count();
    for (int b = 0; b < m; ++b) {
      const std::size_t base = static_cast<std::size_t>(8 * b);
      RTask r;
      r.seq = static_cast<int>(s);
      r.block = b;
      r.load_job = static_cast<int>(base);
      r.lo0 = jobs[base].dom_lo;
      r.hi0 = jobs[base].dom_hi;
      r.load_hub = jobs[base].hub;
      r.unload_hub = jobs[base + 4].hub;
      r.load_dur = jobs[base].duration;
      r.unload_dur = jobs[base + 4].duration;
      r.unload_offset = jobs[base].duration + jobs[base + 2].duration;
      if (b + 1 < m)
        r.tau_next = r.unload_offset + jobs[base + 4].duration + jobs[base + 6].duration;
      const int id = static_cast<int>(red.rtasks.size());
      if (b > 0) {
        red.rtasks.back().next = id;
        r.prev = id - 1;
      }
      red.rtasks.push_back(r);
      red.per_seq[s].push_back(id);
    }
  }
  for (std::size_t i = 0; i < red.rtasks.size(); ++i) {
    const RTask& r = red.rtasks[i];
    red.hub_items[static_cast<std::size_t>(r.load_hub)].push_back(
        {static_cast<int>(i), false});
    red.hub_items[static_cast<std::size_t>(r.unload_hub)].push_back(
        {static_cast<int>(i), true});
  }
  for (int h = 0; h < problem.num_hubs; ++h)
    if (!red.hub_items[static_cast<std::size_t>(h)].empty()) red.hubs_in_use.push_back(h);
  return red;
}

// Peak concurrent count of half-open intervals, via endpoint sweep.
int sweep_peak(std::vector<std::pair<long, int>>& events) {
  std::sort(events.begin(), events.end());
  int level = 0, peak = 0;
  for (const auto& [time, delta] : events) {
    level += delta;
    peak = std::max(peak, level);
  }
  return peak;
}

// Peak at one hub for a fully assigned schedule x (LOAD starts per rtask).
int hub_peak_at(const Reduced& red, int hub, const std::vector<long>& x,
                std::vector<std::pair<long, int>>& scratch) {
  scratch.clear();
  for (const HubItem& item : red.hub_items[static_cast<std::size_t>(hub)]) {
    const int dur = item.dur(red.rtasks);
    if (dur <= 0) continue;
    const long start = x[static_cast<std::size_t>(item.rtask)] + item.offset(red.rtasks);
    scratch.emplace_back(start, +1);
    scratch.emplace_back(start + dur, -1);
  }
  return sweep_peak(scratch);
}

// Peak of the compulsory parts [hi, lo+dur) under the current domains; equals
// the true peak once every start at the hub is fixed.
int mandatory_peak(const Reduced& red, int hub, const std::vector<long>& lo,
                   const std::vector<long>& hi, std::vector<std::pair<long, int>>& scratch) {
  scratch.clear();
  for (const HubItem& item : red.hub_items[static_cast<std::size_t>(hub)]) {
    const int dur = item.dur(red.rtasks);
    if (dur <= 0) continue;
    const long off = item.offset(red.rtasks);
    const long a = hi[static_cast<std::size_t>(item.rtask)] + off;       // latest start
    const long b = lo[static_cast<std::size_t>(item.rtask)] + off + dur;  // earliest end
    if (a < b) {
      scratch.emplace_back(a, +1);
      scratch.emplace_back(b, -1);
    }
  }
  return sweep_peak(scratch);
}

// Interval energy bound: any window that fully contains an item's placement
// span must absorb its whole duration.
int energy_bound(const Reduced& red, int hub, const std::vector<long>& lo,
                 const std::vector<long>& hi) {
  struct Span {
    long a, b;
    long dur;
  };
  std::vector<Span> spans;
  for (const HubItem& item : red.hub_items[static_cast<std::size_t>(hub)]) {
    const int dur = item.dur(red.rtasks);
    if (dur <= 0) continue;
    const long off = item.offset(red.rtasks);
    spans.push_back({lo[static_cast<std::size_t>(item.rtask)] + off,
                     hi[static_cast<std::size_t>(item.rtask)] + off + dur, dur});
  }
  if (spans.empty()) return 0;
  int bound = 1;
  std::sort(spans.begin(), spans.end(), [](const Span& x, const Span& y) { return x.a < y.a; });
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const long a = spans[i].a;
    // spans starting at or after a, ordered by right end
    std::vector<std::pair<long, long>> ends;  // (b, dur)
    for (std::size_t j = i; j < spans.size(); ++j)
      if (spans[j].a >= a) ends.emplace_back(spans[j].b, spans[j].dur);
    std::sort(ends.begin(), ends.end());
    long energy = 0;
    for (const auto& [b, dur] : ends) {
      energy += dur;
      if (b > a)
        bound = std::max(bound, static_cast<int>((energy + (b - a) - 1) / (b - a)));
    }
  }
  return bound;
}

// Builds the full job schedule implied by LOAD starts: fixed jobs follow at
// their offsets, relocation starts when unloading ends, and the PARK before
// the next LOAD absorbs the remaining slack.
std::vector<long> starts_from_loads(const JobSequence& seq,
                                    const std::vector<int>& block_rtasks,
                                    const std::vector<long>& x) {
  std::vector<long> starts(seq.jobs.size(), 0);
  long clock = 0;
  std::size_t block = 0;
  for (std::size_t j = 0; j < seq.jobs.size(); ++j) {
    const Job& job = seq.jobs[j];
    if (job.type == JobType::Load) {
      clock = x[static_cast<std::size_t>(block_rtasks[block])];
      ++block;
    }
    starts[j] = clock;
    clock += job.fixed_duration_or_zero();
  }
  return starts;
}

// ---------------------------------------------------------------------------
// Branch-and-bound over one hub-connected component.
// ---------------------------------------------------------------------------

class ComponentSearch {
 public:
  ComponentSearch(const CapacityProblem& problem, const Reduced& red,
                  std::vector<long>& lo, std::vector<long>& hi, std::vector<long>& x_best,
                  const std::vector<int>& members, const std::vector<int>& hubs,
                  long& nodes_left)
      : problem_(problem),
        red_(red),
        lo_(lo),
        hi_(hi),
        x_best_(x_best),
        members_(members),
        hubs_(hubs),
        nodes_left_(nodes_left) {
    mand_.assign(static_cast<std::size_t>(problem_.num_hubs), 0);
    floor_.assign(static_cast<std::size_t>(problem_.num_hubs), 0);
    for (int h : hubs_) {
      mand_[static_cast<std::size_t>(h)] = mandatory_peak(red_, h, lo_, hi_, scratch_);
      floor_[static_cast<std::size_t>(h)] = energy_bound(red_, h, lo_, hi_);
    }
    root_lb_ = 0;
    for (int h : hubs_)
      root_lb_ += std::max(mand_[static_cast<std::size_t>(h)],
                           floor_[static_cast<std::size_t>(h)]);
    best_total_ = 0;
    for (int h : hubs_) best_total_ += hub_peak_at(red_, h, x_best_, scratch_);
    rebuild_branch_order();
  }

  long root_lb() const { return root_lb_; }
  long best_total() const { return best_total_; }
  bool closed() const { return !out_of_budget_; }
  long nodes_used() const { return nodes_used_; }

  void run() { dfs(); }

 private:
  long lb_total() const {
    long lb = 0;
    for (int h : hubs_)
      lb += std::max(mand_[static_cast<std::size_t>(h)], floor_[static_cast<std::size_t>(h)]);
    return lb;
  }

  void rebuild_branch_order() {
    std::vector<int> peak(static_cast<std::size_t>(problem_.num_hubs), 0);
    for (int h : hubs_)
      peak[static_cast<std::size_t>(h)] = hub_peak_at(red_, h, x_best_, scratch_);
    branch_order_ = members_;
    std::stable_sort(branch_order_.begin(), branch_order_.end(), [&](int a, int b) {
      const RTask& ra = red_.rtasks[static_cast<std::size_t>(a)];
      const RTask& rb = red_.rtasks[static_cast<std::size_t>(b)];
      const int sa = std::max(peak[static_cast<std::size_t>(ra.load_hub)],
                              peak[static_cast<std::size_t>(ra.unload_hub)]);
      const int sb = std::max(peak[static_cast<std::size_t>(rb.load_hub)],
                              peak[static_cast<std::size_t>(rb.unload_hub)]);
      if (sa != sb) return sa > sb;  // max-conflict first
      return a < b;
    });
  }

  // Chain bounds propagation from rtask i; records undo info. The job-level
  // refresh honors the redundant bounds and the relocation pinning when enabled.
  bool propagate(int i, std::vector<std::pair<int, std::pair<long, long>>>& undo,
                 std::vector<int>& touched) {
    touched.push_back(i);
    for (int j = i; red_.rtasks[static_cast<std::size_t>(j)].next >= 0;) {
      const RTask& r = red_.rtasks[static_cast<std::size_t>(j)];
      const int k = r.next;
      const auto kj = static_cast<std::size_t>(k);
      const long nl = lo_[static_cast<std::size_t>(j)] + r.tau_next;
      if (nl <= lo_[kj]) break;
      undo.emplace_back(k, std::make_pair(lo_[kj], hi_[kj]));
      lo_[kj] = nl;
      if (lo_[kj] > hi_[kj]) return false;
      touched.push_back(k);
      j = k;
    }
    for (int j = i; red_.rtasks[static_cast<std::size_t>(j)].prev >= 0;) {
      const int k = red_.rtasks[static_cast<std::size_t>(j)].prev;
      const auto kj = static_cast<std::size_t>(k);
      const RTask& rk = red_.rtasks[kj];
      const long nh = hi_[static_cast<std::size_t>(j)] - rk.tau_next;
      if (nh >= hi_[kj]) break;
      undo.emplace_back(k, std::make_pair(lo_[kj], hi_[kj]));
      hi_[kj] = nh;
      if (lo_[kj] > hi_[kj]) return false;
      touched.push_back(k);
      j = k;
    }
    return job_level_refresh(red_.rtasks[static_cast<std::size_t>(i)].seq);
  }

  // Recomputes implied earliest job starts along the touched route and checks
  // them against the stored domains. With redundant bounds off the stored
  // PARK and RELOCATE domains are the trivial [0, horizon_end]; with
  // pinning on the PARK before each RELOCATE is pinned and skipped.
  bool job_level_refresh(int seq) {
    const auto& jobs = problem_.sequences[static_cast<std::size_t>(seq)].jobs;
    const auto& blocks = red_.per_seq[static_cast<std::size_t>(seq)];
    const bool pin = problem_.options.use_relocation_pinning;
    long clock_lo = 0;
    std::size_t block = 0;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      const Job& job = jobs[j];
      if (job.type == JobType::Load) {
        clock_lo = lo_[static_cast<std::size_t>(blocks[block])];
        ++block;
      }
      const bool pinned = job.type == JobType::Park && pin && j + 1 < jobs.size() &&
                          jobs[j + 1].type == JobType::Relocate;
      if (!pinned && clock_lo > job.dom_hi) return false;
      clock_lo += job.fixed_duration_or_zero();
    }
    return true;
  }

  bool refresh_hubs(const std::vector<int>& touched,
                    std::vector<std::pair<int, int>>& hub_undo) {
    std::vector<int> hubs;
    for (int t : touched) {
      const RTask& r = red_.rtasks[static_cast<std::size_t>(t)];
      hubs.push_back(r.load_hub);
      hubs.push_back(r.unload_hub);
    }
    std::sort(hubs.begin(), hubs.end());
    hubs.erase(std::unique(hubs.begin(), hubs.end()), hubs.end());
    for (int h : hubs) {
      const auto hidx = static_cast<std::size_t>(h);
      const int peak = mandatory_peak(red_, h, lo_, hi_, scratch_);
      if (peak != mand_[hidx]) {
        hub_undo.emplace_back(h, mand_[hidx]);
        mand_[hidx] = peak;
      }
    }
    return true;
  }

  void dfs() {
    if (out_of_budget_) return;
    if (lb_total() >= best_total_) return;

    int branch = -1;
    for (int candidate : branch_order_) {
      const auto ci = static_cast<std::size_t>(candidate);
      if (lo_[ci] != hi_[ci]) {
        branch = candidate;
        break;
      }
    }
    if (branch < 0) {
      // leaf: every LOAD fixed, mandatory peaks are the true peaks
      long total = 0;
      for (int h : hubs_) total += mand_[static_cast<std::size_t>(h)];
      if (total < best_total_) {
        best_total_ = total;
        for (int m : members_) x_best_[static_cast<std::size_t>(m)] = lo_[static_cast<std::size_t>(m)];
        rebuild_branch_order();
      }
      return;
    }

    const auto bi = static_cast<std::size_t>(branch);
    const long save_lo = lo_[bi];
    const long save_hi = hi_[bi];
    const long center = std::clamp(x_best_[bi], save_lo, save_hi);

    std::vector<long> values;
    values.reserve(static_cast<std::size_t>(save_hi - save_lo + 1));
    values.push_back(center);
    for (long d = 1; center - d >= save_lo || center + d <= save_hi; ++d) {
      if (center - d >= save_lo) values.push_back(center - d);
      if (center + d <= save_hi) values.push_back(center + d);
    }

    for (long v : values) {
      if (--nodes_left_ < 0) {
        out_of_budget_ = true;
        break;
      }
      ++nodes_used_;
      std::vector<std::pair<int, std::pair<long, long>>> undo;
      std::vector<std::pair<int, int>> hub_undo;
      std::vector<int> touched;
      lo_[bi] = hi_[bi] = v;
      if (propagate(branch, undo, touched) && refresh_hubs(touched, hub_undo)) {
        dfs();
      }
      for (auto it = hub_undo.rbegin(); it != hub_undo.rend(); ++it)
        mand_[static_cast<std::size_t>(it->first)] = it->second;
      for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
        lo_[static_cast<std::size_t>(it->first)] = it->second.first;
        hi_[static_cast<std::size_t>(it->first)] = it->second.second;
      }
      lo_[bi] = save_lo;
      hi_[bi] = save_hi;
      if (out_of_budget_) break;
    }
  }

  const CapacityProblem& problem_;
  const Reduced& red_;
  std::vector<long>& lo_;
  std::vector<long>& hi_;
  std::vector<long>& x_best_;
  const std::vector<int>& members_;
  const std::vector<int>& hubs_;
  long& nodes_left_;

  std::vector<int> branch_order_;
  std::vector<int> mand_;
  std::vector<int> floor_;
  std::vector<std::pair<long, int>> scratch_;
  long root_lb_ = 0;
  long best_total_ = 0;
  long nodes_used_ = 0;
  bool out_of_budget_ = false;
};

// Hub-exclusive connected components: two tasks are connected when they share
// a route or have a LOAD/UNLOAD at the same hub, so component totals add.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

// Deterministic greedy descent: move one LOAD at a time to the value that
// most reduces the summed peak of its two hubs.
void greedy_descent(const Reduced& red, std::vector<long>& x, int max_passes = 30) {
  std::vector<std::pair<long, int>> scratch;
  for (int pass = 0; pass < max_passes; ++pass) {
    bool improved = false;
    for (std::size_t i = 0; i < red.rtasks.size(); ++i) {
      const RTask& r = red.rtasks[i];
      long lo = r.lo0;
      long hi = r.hi0;
      if (r.prev >= 0)
        lo = std::max(lo, x[static_cast<std::size_t>(r.prev)] +
                              red.rtasks[static_cast<std::size_t>(r.prev)].tau_next);
      if (r.next >= 0)
        hi = std::min(hi, x[static_cast<std::size_t>(r.next)] - r.tau_next);
      if (lo >= hi) continue;

      const long current = x[i];
      auto eval = [&](long v) {
        x[i] = v;
        int sum = hub_peak_at(red, r.load_hub, x, scratch);
        if (r.unload_hub != r.load_hub) sum += hub_peak_at(red, r.unload_hub, x, scratch);
        return sum;
      };
      int best_sum = eval(current);
      long best_v = current;
      for (long v = lo; v <= hi; ++v) {
        if (v == current) continue;
        const int sum = eval(v);
        if (sum < best_sum) {
          best_sum = sum;
          best_v = v;
        }
      }
      x[i] = best_v;
      if (best_v != current) improved = true;
    }
    if (!improved) break;
  }
}

std::vector<long> initial_load_starts(const CapacityProblem& problem, const Reduced& red) {
  std::vector<long> x(red.rtasks.size(), 0);
  for (std::size_t i = 0; i < red.rtasks.size(); ++i) {
    const RTask& r = red.rtasks[i];
    x[i] = problem.initial_starts[static_cast<std::size_t>(r.seq)]
                                 [static_cast<std::size_t>(r.load_job)];
  }
  return x;
}

CapacitySolution solution_from_loads(const CapacityProblem& problem, const Reduced& red,
                                     const std::vector<long>& x) {
  CapacitySolution sol;
  sol.starts.resize(problem.sequences.size());
  for (std::size_t s = 0; s < problem.sequences.size(); ++s)
    sol.starts[s] = starts_from_loads(problem.sequences[s], red.per_seq[s], x);
  sol.hub_capacity = measure_capacity(problem.sequences, sol.starts, problem.num_hubs);
  sol.total = std::accumulate(sol.hub_capacity.begin(), sol.hub_capacity.end(), 0L);
  return sol;
}

}  // namespace

// ---------------------------------------------------------------------------

CapacityProblem make_capacity_problem(const RoutePlan& plan, const TaskGraph& graph,
                                      const CapacityOptions& options) {
  CapacityProblem problem;
  problem.num_hubs = static_cast<int>(graph.hubs.size());
  problem.options = options;
  problem.sequences = expand_plan(plan, graph, options.use_redundant_bounds);
  problem.initial_starts.reserve(problem.sequences.size());
  for (const JobSequence& seq : problem.sequences)
    problem.initial_starts.push_back(initial_job_starts(seq, plan));
  return problem;
}

std::vector<int> measure_capacity(const std::vector<JobSequence>& sequences,
                                  const std::vector<std::vector<long>>& starts,
                                  int num_hubs, bool verify) {
  if (verify) {
    if (starts.size() != sequences.size())
      throw VerificationError("measure_capacity: schedule/sequence count mismatch");
    for (std::size_t s = 0; s < sequences.size(); ++s) {
      const auto& jobs = sequences[s].jobs;
      const auto& S = starts[s];
      if (S.size() != jobs.size())
        throw VerificationError("measure_capacity: schedule length mismatch on route " +
                                std::to_string(sequences[s].route));
      for (std::size_t j = 0; j < jobs.size(); ++j) {
        const Job& job = jobs[j];
        if (S[j] < job.dom_lo || S[j] > job.dom_hi)
          throw VerificationError("domain violated by job " + std::to_string(job.index) +
                                  " (" + to_string(job.type) + ") on route " +
                                  std::to_string(sequences[s].route));
        if (j + 1 < jobs.size()) {
          if (job.fixed_duration()) {
            if (S[j + 1] != S[j] + job.duration)
              throw VerificationError("duration violated after job " +
                                      std::to_string(job.index) + " (" + to_string(job.type) +
                                      ") on route " + std::to_string(sequences[s].route));
          } else if (S[j + 1] < S[j]) {
            throw VerificationError("sequence order violated after job " +
                                    std::to_string(job.index) + " on route " +
                                    std::to_string(sequences[s].route));
          }
        }
      }
    }
  }

  std::vector<std::vector<std::pair<long, int>>> events(static_cast<std::size_t>(num_hubs));
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    const auto& jobs = sequences[s].jobs;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      const Job& job = jobs[j];
      if ((job.type != JobType::Load && job.type != JobType::Unload) || job.duration <= 0)
        continue;
      auto& ev = events[static_cast<std::size_t>(job.hub)];
      ev.emplace_back(starts[s][j], +1);
      ev.emplace_back(starts[s][j] + job.duration, -1);
    }
  }
  std::vector<int> capacity(static_cast<std::size_t>(num_hubs), 0);
  for (int h = 0; h < num_hubs; ++h)
    capacity[static_cast<std::size_t>(h)] = sweep_peak(events[static_cast<std::size_t>(h)]);
  return capacity;
}

CapacitySolution minimize_capacity(const CapacityProblem& problem, double time_limit_sec) {
  const Reduced red = extract_reduced(problem);
  const std::size_t n = red.rtasks.size();

  CapacitySolution empty_ok;
  if (n == 0) {
    empty_ok.starts.resize(problem.sequences.size());
    empty_ok.hub_capacity.assign(static_cast<std::size_t>(problem.num_hubs), 0);
    empty_ok.proven_optimal = true;
    return empty_ok;
  }

  // warm start and feasibility check of the initial schedule
  std::vector<long> x = initial_load_starts(problem, red);
  for (std::size_t i = 0; i < n; ++i) {
    const RTask& r = red.rtasks[i];
    if (x[i] < r.lo0 || x[i] > r.hi0)
      throw VerificationError("minimize_capacity: initial schedule outside domains");
    if (r.next >= 0 && x[static_cast<std::size_t>(r.next)] < x[i] + r.tau_next)
      throw VerificationError("minimize_capacity: initial schedule violates chain");
  }

  greedy_descent(red, x);

  std::vector<long> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = red.rtasks[i].lo0;
    hi[i] = red.rtasks[i].hi0;
  }
  // root chain propagation
  for (std::size_t i = 0; i < n; ++i) {
    const RTask& r = red.rtasks[i];
    if (r.next >= 0)
      lo[static_cast<std::size_t>(r.next)] =
          std::max(lo[static_cast<std::size_t>(r.next)], lo[i] + r.tau_next);
  }
  for (std::size_t i = n; i-- > 0;) {
    const RTask& r = red.rtasks[i];
    if (r.next >= 0)
      hi[i] = std::min(hi[i], hi[static_cast<std::size_t>(r.next)] - r.tau_next);
    if (lo[i] > hi[i])
      throw VerificationError("minimize_capacity: inconsistent chain domains");
  }

  // hub-exclusive components
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i)
    if (red.rtasks[i].next >= 0) uf.unite(static_cast<int>(i), red.rtasks[i].next);
  for (const auto& items : red.hub_items)
    for (std::size_t k = 1; k < items.size(); ++k) uf.unite(items[0].rtask, items[k].rtask);

  std::vector<int> roots;
  std::vector<std::vector<int>> comp_members(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int root = uf.find(static_cast<int>(i));
    if (comp_members[static_cast<std::size_t>(root)].empty()) roots.push_back(root);
    comp_members[static_cast<std::size_t>(root)].push_back(static_cast<int>(i));
  }
  std::vector<std::vector<int>> comp_hubs(n);
  for (int h : red.hubs_in_use) {
    const int root = uf.find(red.hub_items[static_cast<std::size_t>(h)][0].rtask);
    comp_hubs[static_cast<std::size_t>(root)].push_back(h);
  }

  long nodes_left =
      std::max<long>(1000, static_cast<long>(time_limit_sec * kNodesPerSecond));

  CapacitySolution sol;
  sol.proven_optimal = true;
  long total_bound = 0;
  long nodes_used = 0;
  std::vector<long> x_best = x;
  for (int root : roots) {
    ComponentSearch search(problem, red, lo, hi, x_best,
                           comp_members[static_cast<std::size_t>(root)],
                           comp_hubs[static_cast<std::size_t>(root)], nodes_left);
    search.run();
    nodes_used += search.nodes_used();
    if (search.closed()) {
      total_bound += search.best_total();
    } else {
      sol.proven_optimal = false;
      total_bound += search.root_lb();
    }
  }

  CapacitySolution result = solution_from_loads(problem, red, x_best);
  result.proven_optimal = sol.proven_optimal;
  result.bound = sol.proven_optimal ? result.total : std::min(total_bound, result.total);
  result.nodes_explored = nodes_used;
  return result;
}

CapacityProblem apply_relocation_pinning(const CapacityProblem& problem) {
  CapacityProblem pinned = problem;
  pinned.options.use_relocation_pinning = true;
  return pinned;
}

long lower_bound(const CapacityProblem& problem, double time_limit_sec) {
  CapacityProblem relaxed;
  relaxed.num_hubs = problem.num_hubs;
  relaxed.options = problem.options;
  int route_id = 0;
  for (std::size_t s = 0; s < problem.sequences.size(); ++s) {
    const auto& jobs = problem.sequences[s].jobs;
    const int m = problem.sequences[s].task_count();
    for (int b = 0; b < m; ++b) {
      JobSequence single;
      single.route = route_id++;
      std::vector<long> init;
      for (int k = 0; k < 5; ++k) {
        Job job = jobs[static_cast<std::size_t>(8 * b + k)];
        job.route = single.route;
        job.index = k + 1;
        single.jobs.push_back(job);
        init.push_back(problem.initial_starts[s][static_cast<std::size_t>(8 * b + k)]);
      }
      relaxed.sequences.push_back(std::move(single));
      relaxed.initial_starts.push_back(std::move(init));
    }
  }
  const CapacitySolution sol = minimize_capacity(relaxed, time_limit_sec);
  return sol.proven_optimal ? sol.total : sol.bound;
}

CapacitySolution brute_force_optimum(const CapacityProblem& problem) {
  const Reduced red = extract_reduced(problem);
  const std::size_t n = red.rtasks.size();
  if (n > 10) throw OracleRefusedError("brute_force_optimum: more than 10 tasks");
  for (const RTask& r : red.rtasks)
    if (r.hi0 - r.lo0 > 480)
      throw OracleRefusedError("brute_force_optimum: start window wider than 8 hours");

  if (n == 0) {
    CapacitySolution sol;
    sol.starts.resize(problem.sequences.size());
    sol.hub_capacity.assign(static_cast<std::size_t>(problem.num_hubs), 0);
    sol.proven_optimal = true;
    return sol;
  }

  // per-hub minute-count grid: independent of the solver's sweep line
  long t_min = std::numeric_limits<long>::max();
  long t_max = std::numeric_limits<long>::min();
  for (std::size_t i = 0; i < n; ++i) {
    const RTask& r = red.rtasks[i];
    t_min = std::min(t_min, r.lo0);
    t_max = std::max(t_max, r.hi0 + r.unload_offset + r.unload_dur);
  }
  const std::size_t span = static_cast<std::size_t>(std::max<long>(1, t_max - t_min));
  std::vector<std::vector<int>> count(static_cast<std::size_t>(problem.num_hubs),
                                      std::vector<int>(span, 0));
  std::vector<int> peak(static_cast<std::size_t>(problem.num_hubs), 0);
  std::vector<char> hub_used(static_cast<std::size_t>(problem.num_hubs), 0);
  for (const RTask& r : red.rtasks) {
    if (r.load_dur > 0) hub_used[static_cast<std::size_t>(r.load_hub)] = 1;
    if (r.unload_dur > 0) hub_used[static_cast<std::size_t>(r.unload_hub)] = 1;
  }

  std::vector<long> x(n, 0), x_best;
  const std::vector<long> x_init = initial_load_starts(problem, red);
  long best = std::numeric_limits<long>::max();

  auto add_interval = [&](int hub, long start, int dur, int sign) {
    auto& grid = count[static_cast<std::size_t>(hub)];
    for (long t = start; t < start + dur; ++t) {
      grid[static_cast<std::size_t>(t - t_min)] += sign;
      if (sign > 0)
        peak[static_cast<std::size_t>(hub)] =
            std::max(peak[static_cast<std::size_t>(hub)], grid[static_cast<std::size_t>(t - t_min)]);
    }
  };

  // completion bound: current peaks, plus one unit for every used hub that
  // has not reached one yet
  auto bound = [&]() {
    long lb = 0;
    for (int h = 0; h < problem.num_hubs; ++h) {
      const auto hidx = static_cast<std::size_t>(h);
      lb += std::max<long>(peak[hidx], hub_used[hidx] ? 1 : 0);
    }
    return lb;
  };

  // depth-first over tasks in route order; grid counting with explicit undo
  auto dfs = [&](auto&& self, std::size_t depth) -> void {
    if (bound() >= best) return;
    if (depth == n) {
      long total = 0;
      for (int p : peak) total += p;
      if (total < best) {
        best = total;
        x_best = x;
      }
      return;
    }
    const RTask& r = red.rtasks[depth];
    long lo = r.lo0;
    if (r.prev >= 0)
      lo = std::max(lo, x[static_cast<std::size_t>(r.prev)] +
                            red.rtasks[static_cast<std::size_t>(r.prev)].tau_next);
    for (long v = lo; v <= r.hi0; ++v) {
      x[depth] = v;
      const std::vector<int> saved_peak = peak;
      if (r.load_dur > 0) add_interval(r.load_hub, v, r.load_dur, +1);
      if (r.unload_dur > 0) add_interval(r.unload_hub, v + r.unload_offset, r.unload_dur, +1);
      self(self, depth + 1);
      if (r.unload_dur > 0) add_interval(r.unload_hub, v + r.unload_offset, r.unload_dur, -1);
      if (r.load_dur > 0) add_interval(r.load_hub, v, r.load_dur, -1);
      peak = saved_peak;
    }
  };

  // seed with the initial schedule so the search only keeps strict improvements
  {
    const std::vector<int> caps =
        measure_capacity(problem.sequences,
                         [&] {
                           std::vector<std::vector<long>> init;
                           init.reserve(problem.sequences.size());
                           for (std::size_t s = 0; s < problem.sequences.size(); ++s)
                             init.push_back(starts_from_loads(problem.sequences[s],
                                                              red.per_seq[s], x_init));
                           return init;
                         }(),
                         problem.num_hubs);
    best = std::accumulate(caps.begin(), caps.end(), 0L);
    x_best = x_init;
  }

  dfs(dfs, 0);

  CapacitySolution sol = solution_from_loads(problem, red, x_best);
  sol.proven_optimal = true;
  sol.bound = sol.total;
  return sol;
}

ShiftReport shift_report(const std::vector<std::vector<long>>& before,
                         const std::vector<std::vector<long>>& after,
                         const std::vector<JobSequence>& sequences) {
  ShiftReport report;
  long loads = 0, loads_shifted = 0;
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    const auto& jobs = sequences[s].jobs;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      const Job& job = jobs[j];
      if (job.type != JobType::Load && job.type != JobType::Unload) continue;
      const long shift = std::abs(after[s][j] - before[s][j]);
      report.shifts.push_back(shift);
      if (job.type == JobType::Load) {
        report.load_shifts.push_back(shift);
        ++loads;
        if (shift != 0) ++loads_shifted;
      } else {
        report.unload_shifts.push_back(shift);
      }
    }
  }
  report.load_fraction_shifted =
      loads > 0 ? static_cast<double>(loads_shifted) / static_cast<double>(loads) : 0.0;
  return report;
}

}  // namespace athn
