#include <algorithm>
#include <cmath>

#include "athn/network.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace athn;

TEST_CASE("kmeans: two well-separated clusters produce their means") {
  // four loads whose endpoints form two tight clusters near (0,0) and (100,100)
  Instance instance = helpers::hand_instance({
      Load{0, {0, 0}, {2, 0}, 100},
      Load{0, {0, 2}, {2, 2}, 200},
      Load{0, {100, 100}, {102, 100}, 300},
      Load{0, {100, 102}, {102, 102}, 400},
  });
  auto hubs = kmeans_hubs(instance, 2, 3);
  REQUIRE(hubs.size() == 2);
  std::sort(hubs.begin(), hubs.end(),
            [](const Hub& a, const Hub& b) { return a.location.x < b.location.x; });
  CHECK(hubs[0].location.x == doctest::Approx(1.0));
  CHECK(hubs[0].location.y == doctest::Approx(1.0));
  CHECK(hubs[1].location.x == doctest::Approx(101.0));
  CHECK(hubs[1].location.y == doctest::Approx(101.0));
}

TEST_CASE("kmeans: deterministic for a fixed seed; objective trace non-increasing") {
  const Instance instance = helpers::random_small(21, 60, 4);
  std::vector<double> trace;
  const auto a = kmeans_hubs(instance, 5, 9, 100, 1e-6, &trace);
  const auto b = kmeans_hubs(instance, 5, 9);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].location.x == b[i].location.x);
    CHECK(a[i].location.y == b[i].location.y);
  }
  REQUIRE(!trace.empty());
  for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] <= trace[i - 1] + 1e-9);
}

TEST_CASE("kmeans: hub ids are contiguous and centroids stay in the data's hull box") {
  const Instance instance = helpers::random_small(4, 40, 3);
  double max_x = 0, max_y = 0;
  for (const Load& load : instance.loads) {
    max_x = std::max({max_x, load.origin.x, load.destination.x});
    max_y = std::max({max_y, load.origin.y, load.destination.y});
  }
  const auto hubs = kmeans_hubs(instance, 3, 4);
  REQUIRE(hubs.size() == 3);
  for (std::size_t i = 0; i < hubs.size(); ++i) {
    CHECK(hubs[i].id == static_cast<int>(i));
    CHECK(hubs[i].location.x >= 0.0);
    CHECK(hubs[i].location.x <= max_x);
    CHECK(hubs[i].location.y >= 0.0);
    CHECK(hubs[i].location.y <= max_y);
  }
}

TEST_CASE("assign_hubs: discounted-middle objective, hand-checked") {
  // o=(1,0), d=(9,0); hubs at (0,0) and (10,0); gamma=0.4:
  //   (h0,h1): 1 + 0.6*10 + 1 = 8   <- best
  //   (h0,h0): 1 + 0 + 9 = 10,  (h1,h1): 9 + 0 + 1 = 10,  (h1,h0): 24
  const auto hubs = helpers::hubs_at({{0, 0}, {10, 0}});
  const Load load{0, {1, 0}, {9, 0}, 0};
  CHECK(assign_hubs(load, hubs, 0.4) == std::pair<int, int>{0, 1});
  // with no discount the detour through two hubs is not worth it; ties on the
  // remaining options break toward the lowest hub ids
  CHECK(assign_hubs(load, hubs, 0.0) == std::pair<int, int>{0, 0});
}

TEST_CASE("assign_hubs: exact ties break to lowest (h+, h-)") {
  // perfectly symmetric: both hubs equidistant from both endpoints
  const auto hubs = helpers::hubs_at({{5, 5}, {5, -5}});
  const Load load{0, {0, 0}, {10, 0}, 0};
  CHECK(assign_hubs(load, hubs, 0.5) == std::pair<int, int>{0, 0});
}

TEST_CASE("build_tasks: one task per load, pickup = release, hubs assigned") {
  Instance instance = helpers::hand_instance({
      Load{0, {1, 0}, {9, 0}, 700},
      Load{0, {9, 0}, {1, 0}, 250},
  });
  const auto hubs = helpers::hubs_at({{0, 0}, {10, 0}});
  const auto tasks = build_tasks(instance, hubs);
  REQUIRE(tasks.size() == 2);
  CHECK(tasks[0].id == 0);
  CHECK(tasks[0].load == 0);
  CHECK(tasks[0].pickup_minute == 700);
  CHECK(tasks[0].origin_hub == 0);
  CHECK(tasks[0].dest_hub == 1);
  CHECK(tasks[1].id == 1);
  CHECK(tasks[1].pickup_minute == 250);
  CHECK(tasks[1].origin_hub == 1);
  CHECK(tasks[1].dest_hub == 0);
}
