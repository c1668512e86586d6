#pragma once

#include <string>
#include <vector>

#include "mmd2d/link.hpp"
#include "mmd2d/path_select.hpp"
#include "mmd2d/rate_matrix.hpp"

namespace mmd2d {

// Links active together for `slots` time slots.
struct Pairing {
  std::vector<Link> links;
  int slots = 0;

  std::vector<NodeId> endpoints() const;
  bool operator==(const Pairing&) const = default;
};

struct Schedule {
  std::vector<Pairing> pairings;

  int total_slots() const;
  bool operator==(const Schedule&) const = default;
};

// Slots a hop of rate c needs to move d packets: ceil(d / c).
// Throws std::invalid_argument for c < 1 or d < 0.
int hop_weight(int d, int c);

// Per constraint family result of checking a concrete schedule.
struct ValidationReport {
  bool coverage_once = true;      // every UE downloads exactly once, from s_u
  bool demand_completion = true;  // slots * c_{s_u,u} >= d
  bool precedence = true;         // s_u finishes before u starts
  bool matching = true;           // no two links of a pairing share a node
  std::vector<std::string> violations;

  bool ok() const { return coverage_once && demand_completion && precedence && matching; }
};

ValidationReport validate_schedule(const Schedule& sched, const PathSet& paths, int d,
                                   const RateMatrix& rates);

}  // namespace mmd2d
