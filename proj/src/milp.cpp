#include "mmd2d/milp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mmd2d {

const char* family_name(Family f) {
  switch (f) {
    case Family::Coverage: return "coverage";
    case Family::Demand: return "demand";
    case Family::Precedence: return "precedence";
    case Family::Adjacency: return "adjacency";
    case Family::RltXi: return "rlt_xi";
    case Family::RltOmega: return "rlt_omega";
    case Family::Sinr: return "sinr";
  }
  return "unknown";
}

int MilpLayout::omega(int u, int v, int k) const {
  if (!(u < v)) {
    throw std::invalid_argument("omega index needs u < v");
  }
  const int pair = u * n() - u * (u + 1) / 2 + (v - u - 1);
  return pairings + 2 * n() * pairings + pair * pairings + k;
}

int MilpLayout::variable_count() const { return milp_variable_count(n(), pairings); }

int milp_variable_count(int n_ues, int pairings) {
  return pairings * (1 + 2 * n_ues + n_ues * (n_ues - 1) / 2);
}

int default_pairing_bound(const PathSet& paths) {
  return paths.max_hop_count() + static_cast<int>(paths.receivers().size());
}

std::size_t MilpInstance::count(Family f) const {
  return static_cast<std::size_t>(std::count_if(
      constraints.begin(), constraints.end(), [f](const Constraint& c) { return c.family == f; }));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string idx(int i) { return std::to_string(i); }

}  // namespace

MilpInstance build_milp(const PathSet& paths, const RateMatrix& rates, int d,
                        const RadioParams& params, const Topology& topo, int pairings,
                        InterferenceMode interference) {
  if (pairings < 1) {
    throw std::invalid_argument("pairing bound K must be positive");
  }
  if (d < 0) {
    throw std::invalid_argument("demand must be nonnegative");
  }
  if (interference == InterferenceMode::Sinr && !topo.has_positions()) {
    throw std::invalid_argument("SINR constraints need node positions");
  }

  MilpInstance inst;
  inst.demand = d;
  auto& lay = inst.layout;
  lay.ues = paths.receivers();
  lay.pairings = pairings;
  const int n = lay.n();
  const int K = pairings;
  std::vector<int> position(paths.n_nodes(), -1);
  for (int i = 0; i < n; ++i) {
    position[lay.ues[i]] = i;
    lay.source.push_back(paths.source_of(lay.ues[i]));
  }
  auto rate_of = [&](int u) { return rates(lay.source[u], lay.ues[u]); };
  for (int u = 0; u < n; ++u) {
    inst.t_bar = std::max(inst.t_bar, hop_weight(d, rate_of(u)));
  }
  if (K < paths.max_hop_count()) {
    inst.warnings.push_back("K = " + idx(K) + " is below the longest path (" +
                            idx(paths.max_hop_count()) + " hops): instance is infeasible");
  }

  inst.variables.resize(lay.variable_count());
  const double tb = inst.t_bar;
  for (int k = 0; k < K; ++k) {
    inst.variables[lay.delta(k)] = {"delta_" + idx(k), VarKind::Integer, 0.0, tb};
    for (int u = 0; u < n; ++u) {
      const std::string uk = idx(lay.ues[u]) + "_" + idx(k);
      inst.variables[lay.a(u, k)] = {"a_" + uk, VarKind::Binary, 0.0, 1.0};
      inst.variables[lay.xi(u, k)] = {"xi_" + uk, VarKind::Continuous, 0.0, kInf};
      for (int v = u + 1; v < n; ++v) {
        inst.variables[lay.omega(u, v, k)] = {
            "w_" + idx(lay.ues[u]) + "_" + idx(lay.ues[v]) + "_" + idx(k), VarKind::Continuous,
            0.0, kInf};
      }
    }
  }
  for (int k = 0; k < K; ++k) {
    inst.objective.push_back({lay.delta(k), 1.0});
  }

  auto add = [&](std::string name, Family family, std::vector<Term> terms, Sense sense,
                 double rhs) {
    inst.constraints.push_back({std::move(name), family, std::move(terms), sense, rhs});
  };

  for (int u = 0; u < n; ++u) {
    std::vector<Term> terms;
    for (int k = 0; k < K; ++k) {
      terms.push_back({lay.a(u, k), 1.0});
    }
    add("cover_" + idx(lay.ues[u]), Family::Coverage, std::move(terms), Sense::Equal, 1.0);
  }

  if (d > 0) {
    for (int u = 0; u < n; ++u) {
      std::vector<Term> terms;
      for (int k = 0; k < K; ++k) {
        terms.push_back({lay.xi(u, k), static_cast<double>(rate_of(u))});
      }
      add("demand_" + idx(lay.ues[u]), Family::Demand, std::move(terms), Sense::GreaterEq, d);
    }
  }

  for (int u = 0; u < n; ++u) {
    const NodeId s = lay.source[u];
    if (s == paths.ap()) {
      continue;
    }
    const int su = position[s];
    for (int kt = 0; kt < K; ++kt) {
      std::vector<Term> terms;
      for (int k = 0; k <= kt; ++k) {
        terms.push_back({lay.a(su, k), 1.0});
        terms.push_back({lay.a(u, k), -1.0});
      }
      add("prec_" + idx(lay.ues[u]) + "_" + idx(kt), Family::Precedence, std::move(terms),
          Sense::GreaterEq, 0.0);
    }
  }

  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const Link lu{lay.source[u], lay.ues[u]};
      const Link lv{lay.source[v], lay.ues[v]};
      if (!lu.adjacent(lv)) {
        continue;
      }
      for (int k = 0; k < K; ++k) {
        add("adj_" + idx(lay.ues[u]) + "_" + idx(lay.ues[v]) + "_" + idx(k), Family::Adjacency,
            {{lay.a(u, k), 1.0}, {lay.a(v, k), 1.0}}, Sense::LessEq, 1.0);
      }
    }
  }

  for (int u = 0; u < n; ++u) {
    for (int k = 0; k < K; ++k) {
      const std::string uk = idx(lay.ues[u]) + "_" + idx(k);
      const int x = lay.xi(u, k);
      const int a = lay.a(u, k);
      const int dk = lay.delta(k);
      add("rxi0_" + uk, Family::RltXi, {{x, 1.0}}, Sense::GreaterEq, 0.0);
      add("rxi1_" + uk, Family::RltXi, {{dk, 1.0}, {x, -1.0}}, Sense::GreaterEq, 0.0);
      add("rxi2_" + uk, Family::RltXi, {{a, tb}, {x, -1.0}}, Sense::GreaterEq, 0.0);
      add("rxi3_" + uk, Family::RltXi, {{dk, -1.0}, {a, -tb}, {x, 1.0}}, Sense::GreaterEq, -tb);
    }
  }

  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      for (int k = 0; k < K; ++k) {
        const std::string uvk = idx(lay.ues[u]) + "_" + idx(lay.ues[v]) + "_" + idx(k);
        const int w = lay.omega(u, v, k);
        const int au = lay.a(u, k);
        const int av = lay.a(v, k);
        add("rw0_" + uvk, Family::RltOmega, {{w, 1.0}}, Sense::GreaterEq, 0.0);
        add("rw1_" + uvk, Family::RltOmega, {{au, 1.0}, {w, -1.0}}, Sense::GreaterEq, 0.0);
        add("rw2_" + uvk, Family::RltOmega, {{av, 1.0}, {w, -1.0}}, Sense::GreaterEq, 0.0);
        add("rw3_" + uvk, Family::RltOmega, {{au, -1.0}, {av, -1.0}, {w, 1.0}},
            Sense::GreaterEq, -1.0);
      }
    }
  }

  if (interference == InterferenceMode::Sinr) {
    // Row scaled by 1 / (N0 W): (SNR - gamma) a_u >= gamma rho sum_v (I_v / N0 W) omega_uv.
    const double noise = params.noise_mw();
    for (int u = 0; u < n; ++u) {
      const Link lu{lay.source[u], lay.ues[u]};
      const double gamma_min = params.gamma(rate_of(u));
      const double snr = received_power(params, lu, topo) / noise;
      for (int k = 0; k < K; ++k) {
        std::vector<Term> terms{{lay.a(u, k), snr - gamma_min}};
        for (int v = 0; v < n; ++v) {
          const Link lv{lay.source[v], lay.ues[v]};
          if (v == u || lv.adjacent(lu)) {
            continue;  // adjacent links never share a pairing
          }
          const double interferer = received_power(params, Link{lv.tx, lu.rx}, topo) / noise;
          const int w = u < v ? lay.omega(u, v, k) : lay.omega(v, u, k);
          terms.push_back({w, -gamma_min * params.mui_factor * interferer});
        }
        add("sinr_" + idx(lay.ues[u]) + "_" + idx(k), Family::Sinr, std::move(terms),
            Sense::GreaterEq, 0.0);
      }
    }
  }
  return inst;
}

std::vector<double> point_from_schedule(const MilpInstance& inst, const Schedule& sched) {
  const auto& lay = inst.layout;
  if (static_cast<int>(sched.pairings.size()) > lay.pairings) {
    throw std::invalid_argument("schedule has more pairings than the instance allows");
  }
  std::vector<double> x(inst.variables.size(), 0.0);
  std::vector<std::vector<int>> a(lay.n(), std::vector<int>(lay.pairings, 0));
  for (std::size_t k = 0; k < sched.pairings.size(); ++k) {
    const auto& pairing = sched.pairings[k];
    x[lay.delta(static_cast<int>(k))] = pairing.slots;
    for (const auto& link : pairing.links) {
      auto it = std::find(lay.ues.begin(), lay.ues.end(), link.rx);
      if (it == lay.ues.end() || lay.source[it - lay.ues.begin()] != link.tx) {
        throw std::invalid_argument("link " + to_string(link) + " is not a path hop");
      }
      a[it - lay.ues.begin()][k] = 1;
    }
  }
  for (int k = 0; k < lay.pairings; ++k) {
    const auto delta = static_cast<long long>(x[lay.delta(k)]);
    for (int u = 0; u < lay.n(); ++u) {
      x[lay.a(u, k)] = a[u][k];
      x[lay.xi(u, k)] = static_cast<double>(delta * a[u][k]);
      for (int v = u + 1; v < lay.n(); ++v) {
        x[lay.omega(u, v, k)] = a[u][k] * a[v][k];
      }
    }
  }
  return x;
}

PointCheck check_point(const MilpInstance& inst, std::span<const double> x, double tol) {
  PointCheck out;
  if (x.size() != inst.variables.size()) {
    throw std::invalid_argument("point has the wrong dimension");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& var = inst.variables[i];
    if (x[i] < var.lower - tol || x[i] > var.upper + tol) {
      out.violated.push_back("bound:" + var.name);
    }
    if (var.kind != VarKind::Continuous && std::abs(x[i] - std::round(x[i])) > tol) {
      out.violated.push_back("integrality:" + var.name);
    }
  }
  for (const auto& row : inst.constraints) {
    double lhs = 0.0;
    for (const auto& t : row.terms) {
      lhs += t.coef * x[t.var];
    }
    const double scale = std::max(1.0, std::abs(row.rhs));
    bool ok = true;
    switch (row.sense) {
      case Sense::LessEq: ok = lhs <= row.rhs + tol * scale; break;
      case Sense::GreaterEq: ok = lhs >= row.rhs - tol * scale; break;
      case Sense::Equal: ok = std::abs(lhs - row.rhs) <= tol * scale; break;
    }
    if (!ok) {
      out.violated.push_back(row.name);
    }
  }
  for (const auto& t : inst.objective) {
    out.objective += t.coef * x[t.var];
  }
  return out;
}

}  // namespace mmd2d
