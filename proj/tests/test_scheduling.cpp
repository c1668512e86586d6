#include <random>
#include <stdexcept>

#include "doctest.h"
#include "mmd2d/baselines.hpp"
#include "mmd2d/ct_scheduler.hpp"
#include "mmd2d/exact_solver.hpp"
#include "mmd2d/fixture.hpp"
#include "support.hpp"

using namespace mmd2d;

TEST_CASE("hop weight") {
  CHECK(hop_weight(6, 3) == 2);
  CHECK(hop_weight(6, 2) == 3);
  CHECK(hop_weight(0, 2) == 0);
  CHECK(hop_weight(7, 3) == 3);
  CHECK_THROWS_AS(hop_weight(6, 0), std::invalid_argument);
  CHECK_THROWS_AS(hop_weight(-1, 1), std::invalid_argument);
}

TEST_CASE("fixture schedule") {
  const auto fx = load_fixture("paper-6ue");
  SchedulerStats stats;
  const auto sched =
      schedule_concurrent(fx.expected_paths, fx.rates, fx.demand, adjacency_only(), &stats);
  CHECK(sched.total_slots() == 8);
  REQUIRE(sched.pairings.size() == 3);
  CHECK(sched == fx.expected_schedule);
  CHECK(stats.operations > 0);
  CHECK(validate_schedule(sched, fx.expected_paths, fx.demand, fx.rates).ok());
}

TEST_CASE("single hop") {
  const auto t = Topology::labels_only(2, 1);
  const auto rates = RateMatrix::from_rows({{0, 1}, {3, 0}});
  const PathSet paths(1, 2, {{1, 0}});
  const auto sched = schedule_concurrent(paths, rates, 6, adjacency_only());
  REQUIRE(sched.pairings.size() == 1);
  CHECK(sched.pairings[0].slots == 2);
  CHECK_THROWS_AS(schedule_concurrent(paths, rates, 0, adjacency_only()), std::invalid_argument);
}

TEST_CASE("a hop rejected on its own is an error") {
  const auto fx = load_fixture("paper-6ue");
  const FeasibilityFn never = [](std::span<const Link>) { return false; };
  CHECK_THROWS_AS(schedule_concurrent(fx.expected_paths, fx.rates, 6, never),
                  std::invalid_argument);
  CHECK_THROWS_AS(fdmach_schedule(fx.expected_paths, fx.rates, 6, never),
                  std::invalid_argument);
}

TEST_CASE("validation catches constructed violations") {
  const auto fx = load_fixture("paper-6ue");
  const auto& paths = fx.expected_paths;
  CHECK(validate_schedule(fx.expected_schedule, paths, 6, fx.rates).ok());

  // swap UE1->UE4 and UE4->UE5 across pairings
  Schedule swapped = fx.expected_schedule;
  swapped.pairings[1].links[0] = Link{3, 4};
  swapped.pairings[2].links[2] = Link{0, 3};
  auto r = validate_schedule(swapped, paths, 6, fx.rates);
  CHECK_FALSE(r.precedence);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.violations.empty());

  // delta - 1 on the pairing whose max-weight hop needs 3 slots
  Schedule short_sched = fx.expected_schedule;
  short_sched.pairings[1].slots -= 1;
  r = validate_schedule(short_sched, paths, 6, fx.rates);
  CHECK_FALSE(r.demand_completion);
  CHECK(r.precedence);

  Schedule dup = fx.expected_schedule;
  dup.pairings.push_back(Pairing{{Link{6, 2}}, 3});
  CHECK_FALSE(validate_schedule(dup, paths, 6, fx.rates).coverage_once);

  Schedule missing = fx.expected_schedule;
  missing.pairings.pop_back();
  CHECK_FALSE(validate_schedule(missing, paths, 6, fx.rates).coverage_once);

  Schedule stranger = fx.expected_schedule;
  stranger.pairings[0].links.push_back(Link{2, 5});
  CHECK_FALSE(validate_schedule(stranger, paths, 6, fx.rates).coverage_once);

  Schedule clash = fx.expected_schedule;
  clash.pairings[2].links.push_back(Link{6, 0});
  CHECK_FALSE(validate_schedule(clash, paths, 6, fx.rates).matching);
}

TEST_CASE("serial baseline") {
  const auto fx = load_fixture("paper-6ue");
  const auto s = sbts_schedule(fx.rates, fx.topo, 6);
  CHECK(s.total_slots() == 25);
  REQUIRE(s.pairings.size() == 6);
  for (int u = 0; u < 6; ++u) {
    CHECK(s.pairings[u].links == std::vector<Link>{{6, u}});
  }
  CHECK(validate_schedule(s, star_paths(fx.topo), 6, fx.rates).ok());
  CHECK(sbts_schedule(fx.rates, fx.topo, 0).pairings.empty());
  CHECK_THROWS_AS(sbts_schedule(fx.rates, fx.topo, -1), std::invalid_argument);
}

TEST_CASE("frontier coloring baseline") {
  const auto fx = load_fixture("paper-6ue");
  std::uint64_t ops = 0;
  const auto s = fdmach_schedule(fx.expected_paths, fx.rates, 6, adjacency_only(), &ops);
  CHECK(s.total_slots() >= 8);
  CHECK(validate_schedule(s, fx.expected_paths, 6, fx.rates).ok());
  CHECK(ops > 0);
  // heaviest AP hop goes first
  CHECK(s.pairings.front().links == std::vector<Link>{{6, 2}});
  CHECK(s.total_slots() == 11);

  const PathSet single(6, 7, {{6, 0, 3, 4, 1, 5, 2}});
  CHECK(fdmach_schedule(single, fx.rates, 6, adjacency_only()) ==
        schedule_concurrent(single, fx.rates, 6, adjacency_only()));
}

TEST_CASE("property: scheduler outputs are valid and never beat the optimum") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const int d = 1 + static_cast<int>(seed % 9);
    const auto inst = testsupport::random_instance(n, seed, 1 + static_cast<int>(seed % 4));
    const auto feasible = adjacency_only();
    const auto pcds = schedule_concurrent(inst.paths, inst.rates, d, feasible);
    const auto fdm = fdmach_schedule(inst.paths, inst.rates, d, feasible);
    const auto ex = solve_exact(inst.paths, inst.rates, d, feasible);
    CHECK(validate_schedule(pcds, inst.paths, d, inst.rates).ok());
    CHECK(validate_schedule(fdm, inst.paths, d, inst.rates).ok());
    CHECK(validate_schedule(ex.schedule, inst.paths, d, inst.rates).ok());
    REQUIRE(ex.proven_optimal);
    CHECK(pcds.total_slots() >= ex.objective);
    CHECK(fdm.total_slots() >= ex.objective);
    const int half = inst.topo.size() / 2;
    for (const auto& p : pcds.pairings) {
      CHECK(static_cast<int>(p.links.size()) <= half);
      CHECK(feasible(p.links));
      int w = 0;
      for (const auto& l : p.links) {
        w = std::max(w, hop_weight(d, inst.rates(l.tx, l.rx)));
      }
      CHECK(p.slots == w);
    }
  }
}

TEST_CASE("property: sinr mode schedules satisfy every link threshold") {
  RadioParams radio;
  radio.mui_factor = 0.3;
  radio.sinr_thresholds = {{1, 10.0}, {2, 40.0}, {3, 90.0}};
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto inst = testsupport::random_instance(8, seed, 4);
    const auto feasible =
        make_feasibility(InterferenceMode::Sinr, radio, inst.rates, inst.topo);
    // skip cells where a lone hop already fails
    bool lone_ok = true;
    for (const auto& l : inst.paths.links()) {
      const std::vector<Link> one{l};
      lone_ok = lone_ok && feasible(one);
    }
    if (!lone_ok) {
      continue;
    }
    for (const auto& s : {schedule_concurrent(inst.paths, inst.rates, 5, feasible),
                          fdmach_schedule(inst.paths, inst.rates, 5, feasible)}) {
      CHECK(validate_schedule(s, inst.paths, 5, inst.rates).ok());
      for (const auto& p : s.pairings) {
        CHECK(pairing_feasible(radio, p.links, inst.rates, inst.topo, InterferenceMode::Sinr));
      }
    }
  }
}

TEST_CASE("property: operation count grows at most cubically") {
  for (int n : {5, 10, 20, 40}) {
    const auto inst = testsupport::random_instance(n, 9, n);
    SchedulerStats stats;
    schedule_concurrent(inst.paths, inst.rates, 10, adjacency_only(), &stats);
    CHECK(stats.operations <= static_cast<std::uint64_t>(2 * (n + 1) * (n + 1) * (n + 1)));
  }
}
