#pragma once

#include <cstdint>

#include "mmd2d/path_select.hpp"
#include "mmd2d/radio.hpp"
#include "mmd2d/rate_matrix.hpp"
#include "mmd2d/schedule.hpp"

namespace mmd2d {

struct SchedulerStats {
  std::uint64_t operations = 0;  // path scans plus per-link feasibility evaluations
};

// Concurrent transmission scheduling. Each pairing is filled by repeatedly
// visiting the unvisited path with the most unscheduled hops (ties: heaviest
// first hop, then lowest path index) and admitting its first unscheduled hop
// when it is non-adjacent to the pairing and `feasible` accepts the result.
// A pairing closes at floor(n/2) links or when every path has been visited.
//
// Throws std::invalid_argument for d < 1, or if some hop is rejected by
// `feasible` even when alone.
Schedule schedule_concurrent(const PathSet& paths, const RateMatrix& rates, int d,
                             const FeasibilityFn& feasible, SchedulerStats* stats = nullptr);

}  // namespace mmd2d
