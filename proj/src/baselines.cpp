#include "mmd2d/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace mmd2d {

Schedule sbts_schedule(const RateMatrix& rates, const Topology& topo, int d) {
  if (d < 0) {
    throw std::invalid_argument("demand must be nonnegative");
  }
  Schedule sched;
  if (d == 0) {
    return sched;
  }
  for (NodeId u : topo.ues()) {
    const Link link{topo.ap(), u};
    sched.pairings.push_back(Pairing{{link}, hop_weight(d, rates(link.tx, link.rx))});
  }
  return sched;
}

PathSet star_paths(const Topology& topo) {
  std::vector<Path> paths;
  for (NodeId u : topo.ues()) {
    paths.push_back(Path{topo.ap(), u});
  }
  return PathSet(topo.ap(), topo.size(), std::move(paths));
}

Schedule fdmach_schedule(const PathSet& paths, const RateMatrix& rates, int d,
                         const FeasibilityFn& feasible, std::uint64_t* operations) {
  if (d < 1) {
    throw std::invalid_argument("demand must be at least one packet");
  }
  const std::size_t n_paths = paths.size();
  std::vector<int> next_hop(n_paths, 0);
  int remaining = paths.total_hops();
  std::uint64_t ops = 0;

  auto weight_of = [&](std::size_t p) {
    const Link hop = paths.hop(p, next_hop[p]);
    return hop_weight(d, rates(hop.tx, hop.rx));
  };

  Schedule sched;
  std::vector<std::size_t> frontier;
  while (remaining > 0) {
    frontier.clear();
    for (std::size_t p = 0; p < n_paths; ++p) {
      ++ops;
      if (next_hop[p] < paths.hop_count(p)) {
        frontier.push_back(p);
      }
    }
    std::stable_sort(frontier.begin(), frontier.end(),
                     [&](std::size_t a, std::size_t b) { return weight_of(a) > weight_of(b); });
    ops += frontier.size();

    Pairing pairing;
    std::vector<std::size_t> admitted;
    for (std::size_t p : frontier) {
      const Link hop = paths.hop(p, next_hop[p]);
      pairing.links.push_back(hop);
      ops += pairing.links.size();
      if (is_matching(pairing.links) && feasible(pairing.links)) {
        pairing.slots = std::max(pairing.slots, weight_of(p));
        admitted.push_back(p);
      } else {
        pairing.links.pop_back();
      }
    }
    if (pairing.links.empty()) {
      throw std::invalid_argument("a hop is infeasible even without concurrent links");
    }
    for (std::size_t p : admitted) {
      ++next_hop[p];
      --remaining;
    }
    sched.pairings.push_back(std::move(pairing));
  }
  if (operations != nullptr) {
    *operations = ops;
  }
  return sched;
}

}  // namespace mmd2d
