#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mmd2d/radio.hpp"
#include "mmd2d/rate_matrix.hpp"
#include "mmd2d/topology.hpp"
#include "support.hpp"

using namespace mmd2d;

namespace {

RadioParams unit_params() {
  RadioParams p;
  p.k0 = 1.0;
  p.tx_power_mw = 1.0;
  p.path_loss_exp = 2.0;
  p.mui_factor = 1.0;
  return p;
}

Topology line_cell(std::vector<Point> pts) {
  std::vector<Node> nodes;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    nodes.push_back({i, pts[i], i == static_cast<int>(pts.size()) - 1});
  }
  return Topology(std::move(nodes));
}

}  // namespace

TEST_CASE("topology validation") {
  CHECK_THROWS_AS(Topology({{0, Point{1, 1}, false}}), std::invalid_argument);
  CHECK_THROWS_AS(Topology({{0, Point{1, 1}, false}, {1, Point{2, 2}, false}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Topology({{0, Point{1, 1}, true}, {1, Point{2, 2}, true}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Topology({{0, Point{1, 1}, true}, {2, Point{2, 2}, false}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Topology({{0, Point{1, 1}, true}, {1, Point{12, 2}, false}}),
                  std::invalid_argument);

  Topology t({{1, Point{0, 0}, false}, {0, Point{3, 4}, true}});
  CHECK(t.ap() == 0);
  CHECK(t.ues() == std::vector<NodeId>{1});
  CHECK(t.distance(0, 1) == doctest::Approx(5.0));
  CHECK(t.label(0) == "AP");
  CHECK(t.label(1) == "UE1");
}

TEST_CASE("label-only cells reject geometry") {
  auto t = Topology::labels_only(7, 6);
  CHECK_FALSE(t.has_positions());
  CHECK(t.n_ues() == 6);
  CHECK_THROWS_AS(t.distance(0, 1), std::logic_error);
}

TEST_CASE("random cell puts the AP last and in the center") {
  auto t = Topology::random_uniform(10, Area{}, 7);
  CHECK(t.size() == 11);
  CHECK(t.ap() == 10);
  CHECK(t.node(10).position->x == 5.0);
  CHECK(t.node(10).position->y == 5.0);
  auto again = Topology::random_uniform(10, Area{}, 7);
  for (int i = 0; i < 10; ++i) {
    CHECK(t.node(i).position->x == again.node(i).position->x);
    CHECK(t.node(i).position->y == again.node(i).position->y);
  }
}

TEST_CASE("received power") {
  const auto p = unit_params();
  const auto t = line_cell({{0, 0}, {1, 0}, {2, 0}});
  CHECK(received_power(p, {2, 1}, t) == doctest::Approx(1.0));
  CHECK(received_power(p, {2, 0}, t) == doctest::Approx(0.25));

  const auto t5 = line_cell({{0, 0}, {3, 4}});
  // 1.5831e-7 * 1000 * 5^-2.17
  CHECK(received_power(RadioParams{}, {1, 0}, t5) == doctest::Approx(4.8166316988212655e-06));

  const auto same = line_cell({{1, 1}, {1, 1}});
  CHECK_THROWS_AS(received_power(p, {1, 0}, same), std::domain_error);
}

TEST_CASE("interference power") {
  auto p = unit_params();
  // victim 0->1; interferers transmit from 2 (1 m from 1) and 4 (2 m from 1)
  const auto t = line_cell({{5, 5}, {5, 6}, {5, 7}, {9, 9}, {5, 8}, {1, 1}, {0, 0}});
  const Link victim{0, 1};
  const std::vector<Link> conc{{2, 3}, {4, 5}};
  CHECK(interference_power(p, victim, {}, t) == 0.0);
  CHECK(interference_power(p, victim, conc, t) == doctest::Approx(1.25));
  p.mui_factor = 0.0;
  CHECK(interference_power(p, victim, conc, t) == 0.0);

  const std::vector<Link> adjacent{{1, 3}};
  CHECK_THROWS_AS(interference_power(p, victim, adjacent, t), std::invalid_argument);
}

TEST_CASE("sinr") {
  const RadioParams p;
  const auto t = line_cell({{1, 1}, {3, 1}, {1, 8}, {4, 8}, {8, 2}, {8, 5}, {5, 5}});
  const std::vector<Link> links{{0, 1}, {2, 3}, {4, 5}};
  CHECK(sinr(p, links[0], {}, t) ==
        doctest::Approx(received_power(p, links[0], t) / (3.981e-18 * 2.16e9)));

  // term-by-term evaluation done offline
  const double expected[] = {462.4278134617031, 293.70964252268317, 324.2433373451075};
  for (int i = 0; i < 3; ++i) {
    std::vector<Link> others;
    for (int j = 0; j < 3; ++j) {
      if (j != i) {
        others.push_back(links[j]);
      }
    }
    CHECK(sinr(p, links[i], others, t) == doctest::Approx(expected[i]).epsilon(1e-9));
  }

  RadioParams quiet;
  quiet.mui_factor = 0.0;
  CHECK(sinr(quiet, links[0], std::vector<Link>{links[1], links[2]}, t) ==
        doctest::Approx(sinr(quiet, links[0], {}, t)));
}

TEST_CASE("pairing feasibility") {
  const RadioParams p;
  const auto t = line_cell({{1, 1}, {3, 1}, {1, 8}, {4, 8}, {8, 2}, {8, 5}, {5, 5}});
  const auto rates = rate_matrix_from_topology(t, DistanceRateMap::defaults_for(t.area()));
  const std::vector<Link> shared{{0, 1}, {1, 2}};
  CHECK_FALSE(pairing_feasible(p, shared, rates, t, InterferenceMode::Off));
  CHECK_FALSE(pairing_feasible(p, shared, rates, t, InterferenceMode::Sinr));
  const std::vector<Link> one{{6, 0}};
  CHECK(pairing_feasible(p, one, rates, t, InterferenceMode::Sinr));

  // tight thresholds: per-link oracle decides
  RadioParams strict;
  strict.sinr_thresholds = {{1, 300.0}, {2, 300.0}, {3, 300.0}};
  const std::vector<Link> three{{0, 1}, {2, 3}, {4, 5}};
  bool oracle = true;
  for (int i = 0; i < 3; ++i) {
    std::vector<Link> others;
    for (int j = 0; j < 3; ++j) {
      if (j != i) {
        others.push_back(three[j]);
      }
    }
    oracle = oracle && sinr(strict, three[i], others, t) >=
                           strict.gamma(rates(three[i].tx, three[i].rx));
  }
  CHECK(pairing_feasible(strict, three, rates, t, InterferenceMode::Sinr) == oracle);
  CHECK(pairing_feasible(strict, three, rates, t, InterferenceMode::Off));
}

TEST_CASE("radio params validation") {
  RadioParams p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.gamma(2) == 16.0);
  CHECK_THROWS_AS(p.gamma(4), std::out_of_range);
  p.sinr_thresholds = {{1, 10.0}, {2, 5.0}};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  RadioParams q;
  q.mui_factor = -0.1;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  RadioParams r;
  r.bandwidth_hz = 0.0;
  CHECK_THROWS_AS(r.validate(), std::invalid_argument);
}

TEST_CASE("sinr feasibility closure needs positions") {
  const auto t = Topology::labels_only(3, 2);
  RateMatrix rates(3);
  CHECK_THROWS(make_feasibility(InterferenceMode::Sinr, RadioParams{}, rates, t));
  const auto off = make_feasibility(InterferenceMode::Off, RadioParams{}, rates, t);
  const std::vector<Link> ok{{2, 0}};
  const std::vector<Link> bad{{2, 0}, {0, 1}};
  CHECK(off(ok));
  CHECK_FALSE(off(bad));
}

TEST_CASE("rate matrix") {
  CHECK_THROWS_AS(RateMatrix::from_rows({{0, 1}, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(RateMatrix::from_rows({{1, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(RateMatrix::from_rows({{0, -1}, {1, 0}}), std::invalid_argument);
  auto m = RateMatrix::from_rows({{0, 2}, {3, 0}});
  CHECK(m(0, 1) == 2);
  CHECK(m(1, 0) == 3);
  CHECK(m.rows() == std::vector<std::vector<int>>{{0, 2}, {3, 0}});

  const auto map = DistanceRateMap::defaults_for(Area{});
  CHECK(map.rates == std::vector<int>{3, 2, 1});
  CHECK(map.rate_for(0.5) == 3);
  CHECK(map.rate_for(7.0) == 2);
  CHECK(map.rate_for(13.0) == 1);
  CHECK(map.rate_for(100.0) == 1);

  DistanceRateMap bad{{2.0, 1.0}, {3, 2}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  DistanceRateMap bad_rates{{1.0, 2.0}, {2, 2}};
  CHECK_THROWS_AS(bad_rates.validate(), std::invalid_argument);
}

TEST_CASE("rate matrix from an 11-node cell matches independent banding") {
  const auto t = Topology::random_uniform(10, Area{}, 3);
  const auto rates = rate_matrix_from_topology(t, DistanceRateMap::defaults_for(t.area()));
  const double band = std::sqrt(200.0) / 3.0;
  for (int i = 0; i < t.size(); ++i) {
    for (int j = 0; j < t.size(); ++j) {
      if (i == j) {
        CHECK(rates(i, j) == 0);
        continue;
      }
      const auto a = *t.node(i).position;
      const auto b = *t.node(j).position;
      const double l = std::hypot(a.x - b.x, a.y - b.y);
      const int expected = l < band ? 3 : (l < 2 * band ? 2 : 1);
      CHECK(rates(i, j) == expected);
    }
  }
}

TEST_CASE("link helpers") {
  CHECK(Link{0, 1}.adjacent(Link{1, 2}));
  CHECK_FALSE(Link{0, 1}.adjacent(Link{2, 3}));
  const std::vector<Link> m{{0, 1}, {2, 3}};
  const std::vector<Link> nm{{0, 1}, {2, 0}};
  CHECK(is_matching(m));
  CHECK_FALSE(is_matching(nm));
  CHECK(to_string(Link{6, 0}) == "6->0");
}

// Properties over random geometry.

TEST_CASE("property: received power strictly decreases with distance") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 6.0);
  const RadioParams p;
  for (int i = 0; i < 300; ++i) {
    const double a = u(rng);
    const double b = a + u(rng);
    const auto ta = line_cell({{0, 0}, {a, 0}});
    const auto tb = line_cell({{0, 0}, {std::min(b, 10.0), 0}});
    if (b > 10.0) {
      continue;
    }
    CHECK(received_power(p, {1, 0}, ta) > received_power(p, {1, 0}, tb));
  }
}

TEST_CASE("property: interference is additive and sinr degrades with more links") {
  std::mt19937_64 rng(12);
  const RadioParams p;
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = testsupport::scattered(9, rng);
    const Link victim{0, 1};
    const std::vector<Link> a{{2, 3}};
    const std::vector<Link> b{{4, 5}, {6, 7}};
    std::vector<Link> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    const double sum = interference_power(p, victim, a, t) + interference_power(p, victim, b, t);
    CHECK(interference_power(p, victim, ab, t) == doctest::Approx(sum).epsilon(1e-12));
    CHECK(sinr(p, victim, ab, t) <= sinr(p, victim, a, t));
    CHECK(sinr(p, victim, a, t) <= sinr(p, victim, {}, t));
  }
}

TEST_CASE("property: feasibility is antitone in the pairing") {
  std::mt19937_64 rng(13);
  RadioParams p;
  p.mui_factor = 0.5;  // make interference bind sometimes
  p.sinr_thresholds = {{1, 20.0}, {2, 80.0}, {3, 200.0}};
  int infeasible_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto t = testsupport::scattered(9, rng);
    const auto rates = rate_matrix_from_topology(t, DistanceRateMap::defaults_for(t.area()));
    const std::vector<Link> big{{0, 1}, {2, 3}, {4, 5}, {6, 7}};
    const bool whole = pairing_feasible(p, big, rates, t, InterferenceMode::Sinr);
    infeasible_seen += whole ? 0 : 1;
    if (!whole) {
      continue;
    }
    for (std::uint32_t mask = 1; mask < 16; ++mask) {
      std::vector<Link> sub;
      for (int i = 0; i < 4; ++i) {
        if (mask & (1u << i)) {
          sub.push_back(big[i]);
        }
      }
      CHECK(pairing_feasible(p, sub, rates, t, InterferenceMode::Sinr));
    }
  }
  CHECK(infeasible_seen > 0);
}

TEST_CASE("property: interference off ignores geometry") {
  std::mt19937_64 rng(14);
  RadioParams p;
  p.sinr_thresholds = {{1, 1e12}, {2, 1e12}, {3, 1e12}};
  for (int trial = 0; trial < 100; ++trial) {
    const auto t1 = testsupport::scattered(7, rng);
    const auto t2 = testsupport::scattered(7, rng);
    const auto rates = rate_matrix_from_topology(t1, DistanceRateMap::defaults_for(t1.area()));
    const std::vector<Link> m{{0, 1}, {2, 3}, {6, 5}};
    const std::vector<Link> nm{{0, 1}, {1, 3}};
    CHECK(pairing_feasible(p, m, rates, t1, InterferenceMode::Off) ==
          pairing_feasible(p, m, rates, t2, InterferenceMode::Off));
    CHECK(pairing_feasible(p, m, rates, t1, InterferenceMode::Off));
    CHECK_FALSE(pairing_feasible(p, nm, rates, t2, InterferenceMode::Off));
  }
}
