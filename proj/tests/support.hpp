#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <vector>

#include "mmd2d/path_select.hpp"
#include "mmd2d/radio.hpp"
#include "mmd2d/rate_matrix.hpp"
#include "mmd2d/schedule.hpp"
#include "mmd2d/topology.hpp"

namespace testsupport {

struct Instance {
  mmd2d::Topology topo;
  mmd2d::RateMatrix rates;
  mmd2d::PathSet paths;
};

inline Instance random_instance(int n_ues, std::uint64_t seed, int h_max) {
  auto topo = mmd2d::Topology::random_uniform(n_ues, mmd2d::Area{}, seed);
  auto rates =
      mmd2d::rate_matrix_from_topology(topo, mmd2d::DistanceRateMap::defaults_for(topo.area()));
  auto paths = mmd2d::select_paths(rates, topo, h_max);
  return {std::move(topo), std::move(rates), std::move(paths)};
}

// Random positions in [lo, hi) for every node; node n-1 is the AP.
inline mmd2d::Topology scattered(int n, std::mt19937_64& rng, double lo = 0.0, double hi = 10.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<mmd2d::Node> nodes;
  for (int i = 0; i < n; ++i) {
    nodes.push_back({i, mmd2d::Point{u(rng), u(rng)}, i == n - 1});
  }
  return mmd2d::Topology(std::move(nodes));
}

// Minimum makespan by memoized search over every nonempty subset of the
// current first unscheduled hops. No pruning; only usable on small cells.
class BruteForce {
 public:
  BruteForce(const mmd2d::PathSet& paths, const mmd2d::RateMatrix& rates, int d,
             mmd2d::FeasibilityFn feasible)
      : paths_(paths), rates_(rates), d_(d), feasible_(std::move(feasible)) {}

  int solve() {
    std::vector<int> progress(paths_.size(), 0);
    return best(progress);
  }

 private:
  int best(std::vector<int>& progress) {
    bool done = true;
    for (std::size_t p = 0; p < paths_.size(); ++p) {
      done = done && progress[p] == paths_.hop_count(p);
    }
    if (done) {
      return 0;
    }
    if (auto it = memo_.find(progress); it != memo_.end()) {
      return it->second;
    }
    std::vector<std::size_t> open;
    for (std::size_t p = 0; p < paths_.size(); ++p) {
      if (progress[p] < paths_.hop_count(p)) {
        open.push_back(p);
      }
    }
    int result = std::numeric_limits<int>::max();
    const std::uint32_t subsets = 1u << open.size();
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
      std::vector<mmd2d::Link> links;
      int slots = 0;
      for (std::size_t i = 0; i < open.size(); ++i) {
        if (mask & (1u << i)) {
          const auto link = paths_.hop(open[i], progress[open[i]]);
          links.push_back(link);
          slots = std::max(slots, mmd2d::hop_weight(d_, rates_(link.tx, link.rx)));
        }
      }
      if (!mmd2d::is_matching(links) || !feasible_(links)) {
        continue;
      }
      for (std::size_t i = 0; i < open.size(); ++i) {
        if (mask & (1u << i)) {
          ++progress[open[i]];
        }
      }
      const int rest = best(progress);
      for (std::size_t i = 0; i < open.size(); ++i) {
        if (mask & (1u << i)) {
          --progress[open[i]];
        }
      }
      if (rest != std::numeric_limits<int>::max()) {
        result = std::min(result, slots + rest);
      }
    }
    memo_[progress] = result;
    return result;
  }

  const mmd2d::PathSet& paths_;
  const mmd2d::RateMatrix& rates_;
  int d_;
  mmd2d::FeasibilityFn feasible_;
  std::map<std::vector<int>, int> memo_;
};

}  // namespace testsupport
