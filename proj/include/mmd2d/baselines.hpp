#pragma once

#include <cstdint>

#include "mmd2d/path_select.hpp"
#include "mmd2d/radio.hpp"
#include "mmd2d/rate_matrix.hpp"
#include "mmd2d/schedule.hpp"
#include "mmd2d/topology.hpp"

namespace mmd2d {

// Serial broadcast: the AP serves one UE per pairing, in UE id order, for
// ceil(d / c_{AP,u}) slots. No relaying and no reuse.
Schedule sbts_schedule(const RateMatrix& rates, const Topology& topo, int d);

// The star PathSet SBTS implicitly uses (AP -> u for every UE).
PathSet star_paths(const Topology& topo);

// Frontier greedy coloring: each pass sorts the first unscheduled hop of every
// path by weight (non-increasing, ties by path index), packs them greedily
// under matching + `feasible`, and closes the pairing.
Schedule fdmach_schedule(const PathSet& paths, const RateMatrix& rates, int d,
                         const FeasibilityFn& feasible, std::uint64_t* operations = nullptr);

}  // namespace mmd2d
