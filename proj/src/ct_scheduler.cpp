#include "mmd2d/ct_scheduler.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace mmd2d {

Schedule schedule_concurrent(const PathSet& paths, const RateMatrix& rates, int d,
                             const FeasibilityFn& feasible, SchedulerStats* stats) {
  if (d < 1) {
    throw std::invalid_argument("demand must be at least one packet");
  }
  const std::size_t n_paths = paths.size();
  const std::size_t max_links = static_cast<std::size_t>(rates.size() / 2);
  std::uint64_t ops = 0;

  std::vector<std::vector<int>> weight(n_paths);
  for (std::size_t p = 0; p < n_paths; ++p) {
    for (int h = 0; h < paths.hop_count(p); ++h) {
      const Link hop = paths.hop(p, h);
      weight[p].push_back(hop_weight(d, rates(hop.tx, hop.rx)));
    }
  }

  std::vector<int> next_hop(n_paths, 0);  // F_p
  int remaining = paths.total_hops();
  std::vector<bool> active(n_paths, true);
  for (std::size_t p = 0; p < n_paths; ++p) {
    active[p] = paths.hop_count(p) > 0;
  }

  Schedule sched;
  std::vector<NodeId> used_nodes;
  while (remaining > 0) {
    Pairing pairing;
    used_nodes.clear();
    std::vector<bool> unvisited = active;
    std::size_t n_unvisited = std::count(unvisited.begin(), unvisited.end(), true);

    while (n_unvisited > 0 && pairing.links.size() < max_links) {
      // Among unvisited paths with the most unscheduled hops, take the one whose
      // first unscheduled hop is heaviest.
      int best = -1;
      for (std::size_t p = 0; p < n_paths; ++p) {
        ++ops;
        if (!unvisited[p]) {
          continue;
        }
        if (best == -1) {
          best = static_cast<int>(p);
          continue;
        }
        const int left_p = paths.hop_count(p) - next_hop[p];
        const int left_b = paths.hop_count(best) - next_hop[best];
        if (left_p > left_b ||
            (left_p == left_b && weight[p][next_hop[p]] > weight[best][next_hop[best]])) {
          best = static_cast<int>(p);
        }
      }
      const auto p = static_cast<std::size_t>(best);
      const Link hop = paths.hop(p, next_hop[p]);
      const bool free_endpoints =
          std::find(used_nodes.begin(), used_nodes.end(), hop.tx) == used_nodes.end() &&
          std::find(used_nodes.begin(), used_nodes.end(), hop.rx) == used_nodes.end();
      if (free_endpoints) {
        pairing.links.push_back(hop);
        ops += pairing.links.size();
        if (feasible(pairing.links)) {
          used_nodes.push_back(hop.tx);
          used_nodes.push_back(hop.rx);
          pairing.slots = std::max(pairing.slots, weight[p][next_hop[p]]);
          --remaining;
          if (++next_hop[p] == paths.hop_count(p)) {
            active[p] = false;
          }
        } else {
          pairing.links.pop_back();
        }
      }
      unvisited[p] = false;
      --n_unvisited;
    }

    if (pairing.links.empty()) {
      throw std::invalid_argument("a hop is infeasible even without concurrent links");
    }
    sched.pairings.push_back(std::move(pairing));
  }

  if (stats != nullptr) {
    stats->operations = ops;
  }
  return sched;
}

}  // namespace mmd2d
