#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "mmd2d/ct_scheduler.hpp"
#include "mmd2d/exact_solver.hpp"
#include "mmd2d/fixture.hpp"
#include "mmd2d/milp.hpp"
#include "support.hpp"

using namespace mmd2d;

namespace {

MilpInstance fixture_instance(int d, int k = 3) {
  const auto fx = load_fixture("paper-6ue");
  return build_milp(fx.expected_paths, fx.rates, d, RadioParams{}, fx.topo, k,
                    InterferenceMode::Off);
}

bool satisfied(const Constraint& c, const std::vector<double>& x) {
  double lhs = 0.0;
  for (const auto& t : c.terms) {
    lhs += t.coef * x[t.var];
  }
  switch (c.sense) {
    case Sense::LessEq: return lhs <= c.rhs + 1e-9;
    case Sense::GreaterEq: return lhs >= c.rhs - 1e-9;
    case Sense::Equal: return std::abs(lhs - c.rhs) <= 1e-9;
  }
  return false;
}

}  // namespace

TEST_CASE("variable count") {
  // delta (3) + a (18) + xi (18) + omega over 15 pairs (45)
  CHECK(milp_variable_count(6, 3) == 84);
  const auto inst = fixture_instance(6);
  CHECK(static_cast<int>(inst.variables.size()) == 84);
  CHECK(inst.layout.variable_count() == 84);
  CHECK(inst.t_bar == 3);  // heaviest path hop: ceil(6 / 2)
  CHECK(inst.count(Family::Coverage) == 6);
  CHECK(inst.count(Family::Demand) == 6);
  CHECK(inst.count(Family::RltXi) == 4 * 18);
  CHECK(inst.count(Family::RltOmega) == 4 * 45);
  CHECK(inst.count(Family::Sinr) == 0);
  CHECK(inst.warnings.empty());
}

TEST_CASE("fixture schedule is a feasible point with objective 8") {
  const auto fx = load_fixture("paper-6ue");
  const auto inst = fixture_instance(6);
  const auto x = point_from_schedule(inst, fx.expected_schedule);
  const auto check = check_point(inst, x);
  CHECK(check.ok());
  CHECK(check.objective == doctest::Approx(8.0));

  auto broken = x;
  broken[inst.layout.delta(1)] = 2.0;  // one slot short for UE1->UE4
  CHECK_FALSE(check_point(inst, broken).ok());

  auto bad_xi = x;
  bad_xi[inst.layout.xi(2, 0)] = 2.0;  // UE3 not active in pairing 0
  const auto r = check_point(inst, bad_xi);
  CHECK_FALSE(r.ok());

  auto frac = x;
  frac[inst.layout.a(0, 0)] = 0.5;
  CHECK_FALSE(check_point(inst, frac).ok());

  auto frac_delta = x;
  frac_delta[inst.layout.delta(0)] = 2.5;
  CHECK_FALSE(check_point(inst, frac_delta).ok());
}

TEST_CASE("too few pairings warns and too long a schedule is rejected") {
  const auto fx = load_fixture("paper-6ue");
  const auto inst = fixture_instance(6, 2);
  CHECK_FALSE(inst.warnings.empty());
  CHECK_THROWS_AS(point_from_schedule(inst, fx.expected_schedule), std::invalid_argument);
  CHECK(default_pairing_bound(fx.expected_paths) == 9);
}

TEST_CASE("empty demand") {
  const auto fx = load_fixture("paper-6ue");
  const auto inst = fixture_instance(0);
  CHECK(inst.count(Family::Demand) == 0);
  const auto sol = solve_exact(fx.expected_paths, fx.rates, 0, adjacency_only());
  CHECK(sol.objective == 0);
  CHECK(sol.proven_optimal);
  const auto x = point_from_schedule(inst, sol.schedule);
  const auto check = check_point(inst, x);
  CHECK(check.ok());
  CHECK(check.objective == 0.0);
  const auto text = export_lp(inst);
  const auto model = parse_lp(text);
  CHECK(model.constraints.size() == inst.constraints.size());
  CHECK(text.find("demand_") == std::string::npos);
}

TEST_CASE("sinr rows need geometry") {
  const auto fx = load_fixture("paper-6ue");
  CHECK_THROWS_AS(build_milp(fx.expected_paths, fx.rates, 6, RadioParams{}, fx.topo, 3,
                             InterferenceMode::Sinr),
                  std::invalid_argument);
  const auto inst = testsupport::random_instance(5, 3, 3);
  const auto m = build_milp(inst.paths, inst.rates, 4, RadioParams{}, inst.topo, 4,
                            InterferenceMode::Sinr);
  CHECK(m.count(Family::Sinr) == 5 * 4);
  const auto sched = schedule_concurrent(inst.paths, inst.rates, 4, adjacency_only());
  if (static_cast<int>(sched.pairings.size()) <= 4) {
    CHECK(check_point(m, point_from_schedule(m, sched)).ok());
  }
}

TEST_CASE("lp export round trip") {
  const auto fx = load_fixture("paper-6ue");
  const auto inst = fixture_instance(6);
  const auto text = export_lp(inst);
  CHECK(text.rfind("\\", 0) == 0);
  const auto model = parse_lp(text);
  CHECK(model.minimize);
  CHECK(model.variables.size() == inst.variables.size());
  CHECK(model.constraints.size() == inst.constraints.size());
  CHECK(model.objective.size() == inst.objective.size());
  int binaries = 0;
  for (const auto& v : model.variables) {
    binaries += v.kind == VarKind::Binary ? 1 : 0;
  }
  CHECK(binaries == 18);  // omega stays continuous
  for (int k = 0; k < 3; ++k) {
    CHECK(model.variables[*model.find("delta_" + std::to_string(k))].kind == VarKind::Integer);
  }

  // the fixture point, renamed into the parsed model, satisfies every row
  const auto x = point_from_schedule(inst, fx.expected_schedule);
  std::vector<double> y(model.variables.size(), 0.0);
  for (std::size_t i = 0; i < inst.variables.size(); ++i) {
    const auto idx = model.find(inst.variables[i].name);
    REQUIRE(idx.has_value());
    y[*idx] = x[i];
    CHECK(model.variables[*idx].lower == inst.variables[i].lower);
    CHECK(model.variables[*idx].upper == inst.variables[i].upper);
  }
  for (std::size_t c = 0; c < model.constraints.size(); ++c) {
    CHECK(model.constraints[c].name == inst.constraints[c].name);
    CHECK(model.constraints[c].sense == inst.constraints[c].sense);
    CHECK(model.constraints[c].rhs == inst.constraints[c].rhs);
    CHECK(satisfied(model.constraints[c], y));
  }
}

TEST_CASE("lp parser errors") {
  CHECK_THROWS_AS(parse_lp("Subject To\n c1: x + >= 2\nEnd\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_lp("Minimize\n obj: x\nSubject To\n c1: x 2\nEnd\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_lp("Bounds\n 0 <= \nEnd\n"), std::runtime_error);
  const auto m = parse_lp(
      "Maximize\n obj: 2 x - y\nSubject To\n c1: x + y <= 4\n c2: -x + 3 y >= -1\n"
      "Bounds\n x free\n 0 <= y <= 3\nGenerals\nBinaries\n y\nEnd\n");
  CHECK_FALSE(m.minimize);
  REQUIRE(m.constraints.size() == 2);
  CHECK(m.constraints[1].rhs == -1.0);
  CHECK(m.constraints[1].terms[0].coef == -1.0);
  const auto y = m.find("y");
  REQUIRE(y.has_value());
  CHECK(m.variables[*y].kind == VarKind::Binary);
}

TEST_CASE("exact solver on the fixture") {
  const auto fx = load_fixture("paper-6ue");
  const auto sol = solve_exact(fx.expected_paths, fx.rates, 6, adjacency_only());
  CHECK(sol.objective == 8);
  CHECK(sol.proven_optimal);
  CHECK(sol.schedule.total_slots() == 8);
  CHECK(sol.schedule.pairings.size() == 3);
  CHECK(validate_schedule(sol.schedule, fx.expected_paths, 6, fx.rates).ok());
}

TEST_CASE("exact solver edge cases") {
  const auto t = Topology::labels_only(2, 1);
  const auto rates = RateMatrix::from_rows({{0, 1}, {2, 0}});
  const PathSet one(1, 2, {{1, 0}});
  CHECK(solve_exact(one, rates, 7, adjacency_only()).objective == hop_weight(7, 2));

  const auto big = testsupport::random_instance(9, 1, 4);
  CHECK_THROWS_AS(solve_exact(big.paths, big.rates, 3, adjacency_only()), std::invalid_argument);

  ExactOptions tiny;
  tiny.node_limit = 1;
  const auto inst = testsupport::random_instance(6, 4, 3);
  const auto capped = solve_exact(inst.paths, inst.rates, 5, adjacency_only(), tiny);
  CHECK(validate_schedule(capped.schedule, inst.paths, 5, inst.rates).ok());
  CHECK(capped.schedule.total_slots() == capped.objective);
}

TEST_CASE("property: exact solver matches exhaustive enumeration") {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const int d = 2 + static_cast<int>(seed % 7);
    const auto inst = testsupport::random_instance(6, 1000 + seed, 1 + static_cast<int>(seed % 3));
    const auto sol = solve_exact(inst.paths, inst.rates, d, adjacency_only());
    testsupport::BruteForce oracle(inst.paths, inst.rates, d, adjacency_only());
    REQUIRE(sol.proven_optimal);
    CHECK(sol.objective == oracle.solve());
    CHECK(sol.schedule.total_slots() == sol.objective);
  }
}

TEST_CASE("property: exact solutions are integral points of the linearization") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const int d = 2 + static_cast<int>(seed % 7);
    const auto inst = testsupport::random_instance(5, 2000 + seed, 3);
    const auto sol = solve_exact(inst.paths, inst.rates, d, adjacency_only());
    const int k = std::max<int>(sol.schedule.pairings.size(), default_pairing_bound(inst.paths));
    const auto m = build_milp(inst.paths, inst.rates, d, RadioParams{}, inst.topo, k,
                              InterferenceMode::Off);
    const auto x = point_from_schedule(m, sol.schedule);
    const auto check = check_point(m, x);
    CHECK(check.ok());
    CHECK(check.objective == doctest::Approx(sol.objective));
    const auto& L = m.layout;
    for (int kk = 0; kk < k; ++kk) {
      const auto delta = static_cast<long long>(x[L.delta(kk)]);
      for (int u = 0; u < L.n(); ++u) {
        const auto a = static_cast<long long>(x[L.a(u, kk)]);
        CHECK(static_cast<long long>(x[L.xi(u, kk)]) == delta * a);
        for (int v = u + 1; v < L.n(); ++v) {
          const auto b = static_cast<long long>(x[L.a(v, kk)]);
          CHECK(static_cast<long long>(x[L.omega(u, v, kk)]) == a * b);
        }
      }
    }
  }
}
