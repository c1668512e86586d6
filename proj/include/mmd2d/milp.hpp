#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mmd2d/path_select.hpp"
#include "mmd2d/radio.hpp"
#include "mmd2d/rate_matrix.hpp"
#include "mmd2d/schedule.hpp"

namespace mmd2d {

enum class VarKind { Continuous, Integer, Binary };
enum class Sense { LessEq, GreaterEq, Equal };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lower = 0.0;
  double upper = 0.0;  // +inf when unbounded
};

struct Term {
  int var = 0;
  double coef = 0.0;
};

// Constraint families of the linearized scheduling problem.
enum class Family {
  Coverage,    // every UE downloads once
  Demand,      // sum_k c * xi >= d
  Precedence,  // cumulative: source before receiver
  Adjacency,   // a_u + a_v <= 1 for links sharing a node
  RltXi,       // bound-factor products for xi = delta * a
  RltOmega,    // bound-factor products for omega = a_u * a_v
  Sinr,        // linearized SINR requirement
};

const char* family_name(Family f);

struct Constraint {
  std::string name;
  Family family = Family::Coverage;
  std::vector<Term> terms;
  Sense sense = Sense::GreaterEq;
  double rhs = 0.0;
};

// Index layout of the decision variables. UE u is addressed through its
// position in `ues`; pairings are 0-based.
struct MilpLayout {
  std::vector<NodeId> ues;
  std::vector<NodeId> source;  // s_u per UE position
  int pairings = 0;

  int n() const { return static_cast<int>(ues.size()); }
  int delta(int k) const { return k; }
  int a(int u, int k) const { return pairings + u * pairings + k; }
  int xi(int u, int k) const { return pairings + (n() + u) * pairings + k; }
  // u < v
  int omega(int u, int v, int k) const;
  int variable_count() const;
};

struct MilpInstance {
  MilpLayout layout;
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  std::vector<Term> objective;  // minimized
  int t_bar = 0;                // bound on delta^k
  int demand = 0;
  std::vector<std::string> warnings;

  std::size_t count(Family f) const;
};

// Closed-form variable count: K (1 + 2|U| + |U|(|U|-1)/2).
int milp_variable_count(int n_ues, int pairings);

// Default K: hops on the longest path plus |U|.
int default_pairing_bound(const PathSet& paths);

// Throws std::invalid_argument when interference is on and the topology has
// no positions. A K smaller than the longest path attaches a warning.
MilpInstance build_milp(const PathSet& paths, const RateMatrix& rates, int d,
                        const RadioParams& params, const Topology& topo, int pairings,
                        InterferenceMode interference);

// Assignment for the instance realizing `sched`: pairing k of the schedule
// becomes pairing k of the instance, delta^k = slots, xi = delta a and
// omega = a a. Throws std::invalid_argument if the schedule has more pairings
// than the instance or a link that is not a path hop.
std::vector<double> point_from_schedule(const MilpInstance& inst, const Schedule& sched);

struct PointCheck {
  double objective = 0.0;
  std::vector<std::string> violated;  // constraint names, plus bound/integrality failures
  bool ok() const { return violated.empty(); }
};

PointCheck check_point(const MilpInstance& inst, std::span<const double> x, double tol = 1e-9);

// LP-format text (objective, constraint rows, bounds, binaries).
std::string export_lp(const MilpInstance& inst);

// Generic model read back from LP text.
struct LpModel {
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;  // family left at default
  std::vector<Term> objective;
  bool minimize = true;

  std::optional<int> find(const std::string& name) const;
};

// Throws std::runtime_error with a line number on malformed input.
LpModel parse_lp(const std::string& text);

}  // namespace mmd2d
