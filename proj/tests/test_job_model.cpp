#include <vector>

#include "athn/errors.hpp"
#include "athn/job_model.hpp"
#include "athn/route_solver.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace athn;

namespace {

// Frozen fixture (see test_task_graph.cpp): task 0 h0->h1 p=600, task 1
// h1->h0 p=900; sigma=30, delta=60, drive=80, relocation 0 minutes.
TaskGraph chained_graph() {
  const Instance instance = helpers::hand_instance(
      {Load{0, {0, 0}, {100, 0}, 600}, Load{0, {80, 0}, {20, 0}, 900}});
  return helpers::graph_with_hubs(instance, {{10, 0}, {90, 0}});
}

}  // namespace

TEST_CASE("expand: single task gives the 5-job pattern") {
  const TaskGraph g = chained_graph();
  const JobSequence seq = expand_route({0}, 0, g);
  REQUIRE(seq.jobs.size() == 5);
  CHECK(seq.task_count() == 1);
  const JobType want[5] = {JobType::Load, JobType::Park, JobType::Drive, JobType::Park,
                           JobType::Unload};
  for (int j = 0; j < 5; ++j) CHECK(seq.jobs[static_cast<std::size_t>(j)].type == want[j]);
  CHECK(seq.jobs[0].duration == 30);
  CHECK(seq.jobs[0].hub == 0);
  CHECK(seq.jobs[0].task == 0);
  CHECK(!seq.jobs[1].fixed_duration());
  CHECK(seq.jobs[2].duration == 80);
  CHECK(seq.jobs[4].duration == 30);
  CHECK(seq.jobs[4].hub == 1);
}

TEST_CASE("expand: m tasks give 8m-3 jobs with PARK,RELOCATE,PARK separators") {
  const TaskGraph g = chained_graph();
  const JobSequence seq = expand_route({0, 1}, 0, g);
  REQUIRE(seq.jobs.size() == 13);
  CHECK(seq.task_count() == 2);
  CHECK(seq.jobs[5].type == JobType::Park);
  CHECK(seq.jobs[5].hub == 1);  // parked at task 0's destination hub
  CHECK(seq.jobs[6].type == JobType::Relocate);
  CHECK(seq.jobs[6].duration == 0);  // same hub, zero drive
  CHECK(seq.jobs[7].type == JobType::Park);
  CHECK(seq.jobs[7].hub == 1);  // task 1 loads at hub 1
  CHECK(seq.jobs[8].type == JobType::Load);
  CHECK(seq.jobs[8].task == 1);
  for (std::size_t j = 0; j < seq.jobs.size(); ++j)
    CHECK(seq.jobs[j].index == static_cast<int>(j) + 1);
}

TEST_CASE("domains: LOAD window, translated DRIVE/UNLOAD, derived RELOCATE/PARK") {
  const TaskGraph g = chained_graph();
  JobSequence seq = expand_route({0, 1}, 0, g);
  compute_domains(seq, g, /*use_redundant_bounds=*/true, default_horizon_end(g));

  CHECK(seq.jobs[0].dom_lo == 540);   // LOAD 0: [600-60, 600+60]
  CHECK(seq.jobs[0].dom_hi == 660);
  CHECK(seq.jobs[2].dom_lo == 570);   // DRIVE 0: +sigma
  CHECK(seq.jobs[2].dom_hi == 690);
  CHECK(seq.jobs[4].dom_lo == 650);   // UNLOAD 0: +sigma+drive
  CHECK(seq.jobs[4].dom_hi == 770);
  CHECK(seq.jobs[8].dom_lo == 840);   // LOAD 1
  CHECK(seq.jobs[8].dom_hi == 960);
  CHECK(seq.jobs[12].dom_lo == 950);  // UNLOAD 1
  CHECK(seq.jobs[12].dom_hi == 1070);

  // RELOCATE: after unload 0 completes, in time for load 1 (duration 0)
  CHECK(seq.jobs[6].dom_lo == 680);
  CHECK(seq.jobs[6].dom_hi == 960);
  // PARK between unload 0 and the relocation
  CHECK(seq.jobs[5].dom_lo == 680);
  CHECK(seq.jobs[5].dom_hi == 960);
  // PARK after loading starts once the load completes, before the drive's hi
  CHECK(seq.jobs[1].dom_lo == 570);
  CHECK(seq.jobs[1].dom_hi == 690);
}

TEST_CASE("domains: redundant bounds off gives trivial PARK/RELOCATE windows") {
  const TaskGraph g = chained_graph();
  JobSequence seq = expand_route({0, 1}, 0, g);
  const long end = default_horizon_end(g);
  CHECK(end == 1440 + 120 + 140);  // horizon + 2*delta + max sink_tau
  compute_domains(seq, g, /*use_redundant_bounds=*/false, end);
  for (const Job& job : seq.jobs) {
    if (job.type == JobType::Park || job.type == JobType::Relocate) {
      CHECK(job.dom_lo == 0);
      CHECK(job.dom_hi == end);
    }
  }
  // fixed jobs keep their real windows either way
  CHECK(seq.jobs[0].dom_lo == 540);
  CHECK(seq.jobs[12].dom_hi == 1070);
}

TEST_CASE("domains: trivial windows still admit pre-zero LOAD starts") {
  // release 30 with delta 60 puts the LOAD window at [-30, 90]
  const Instance instance = helpers::hand_instance({Load{0, {0, 0}, {100, 0}, 30}});
  const TaskGraph g = helpers::graph_with_hubs(instance, {{10, 0}, {90, 0}});
  JobSequence seq = expand_route({0}, 0, g);
  compute_domains(seq, g, /*use_redundant_bounds=*/false, default_horizon_end(g));
  CHECK(seq.jobs[0].dom_lo == -30);
  CHECK(seq.jobs[1].dom_lo <= -30);  // PARK may start when the early LOAD ends
}

TEST_CASE("domains: an impossible chain throws with the offending job") {
  // force lo > hi on the relocation by moving task 1's window far too early:
  // earliest unload end 680 > latest load-1 start 60+60=120
  const Instance instance = helpers::hand_instance(
      {Load{0, {0, 0}, {100, 0}, 600}, Load{0, {80, 0}, {20, 0}, 60}});
  const TaskGraph g = helpers::graph_with_hubs(instance, {{10, 0}, {90, 0}});
  JobSequence seq = expand_route({0, 1}, 0, g);
  CHECK_THROWS_AS(compute_domains(seq, g, true, default_horizon_end(g)),
                  InfeasibleExpansionError);
}

TEST_CASE("initial starts: earliest plan maps to the frozen schedule") {
  const TaskGraph g = chained_graph();
  RoutePlan plan;
  plan.routes = {{0, 1}};
  plan = earliest_start(plan, g);
  const auto sequences = expand_plan(plan, g, true);
  REQUIRE(sequences.size() == 1);
  const auto starts = initial_job_starts(sequences[0], plan);
  const std::vector<long> want = {540, 570, 570, 650, 650, 680, 680,
                                  680, 840, 870, 870, 950, 950};
  CHECK(starts == want);
}
