#pragma once

#include <cstdint>

#include "mmd2d/path_select.hpp"
#include "mmd2d/radio.hpp"
#include "mmd2d/rate_matrix.hpp"
#include "mmd2d/schedule.hpp"

namespace mmd2d {

struct ExactOptions {
  std::uint64_t node_limit = 20'000'000;
  int max_ues = 8;
};

struct ExactSolution {
  Schedule schedule;
  int objective = 0;
  bool proven_optimal = false;
  std::uint64_t nodes = 0;
};

// Minimum-slot schedule for fixed paths by depth-first branch and bound over
// ordered pairings. Each branch picks a feasible matching of the paths' first
// unscheduled hops; the bound is the larger of the longest residual path work
// and the busiest node's residual work. When the node budget runs out the
// best incumbent is returned with proven_optimal = false.
//
// Throws std::invalid_argument when the instance has more than
// options.max_ues UEs.
ExactSolution solve_exact(const PathSet& paths, const RateMatrix& rates, int d,
                          const FeasibilityFn& feasible, const ExactOptions& options = {});

}  // namespace mmd2d
