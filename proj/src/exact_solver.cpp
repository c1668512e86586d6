#include "mmd2d/exact_solver.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "mmd2d/ct_scheduler.hpp"

namespace mmd2d {

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const PathSet& paths, const RateMatrix& rates, int d,
                 const FeasibilityFn& feasible, std::uint64_t node_limit)
      : paths_(paths), feasible_(feasible), node_limit_(node_limit), n_paths_(paths.size()) {
    for (std::size_t p = 0; p < n_paths_; ++p) {
      std::vector<int> w;
      for (int h = 0; h < paths.hop_count(p); ++h) {
        const Link hop = paths.hop(p, h);
        w.push_back(hop_weight(d, rates(hop.tx, hop.rx)));
      }
      weight_.push_back(std::move(w));
    }
  }

  void seed_incumbent(const Schedule& sched) {
    best_cost_ = sched.total_slots();
    best_ = sched;
  }

  void run() {
    std::vector<int> progress(n_paths_, 0);
    complete_ = true;
    dfs(progress, 0);
  }

  const Schedule& best() const { return best_; }
  int best_cost() const { return best_cost_; }
  bool complete() const { return complete_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  // Residual work bound: hops of one path run in distinct pairings, and so do
  // hops sharing a node.
  int lower_bound(const std::vector<int>& progress) const {
    int bound = 0;
    int ap_work = 0;
    for (std::size_t p = 0; p < n_paths_; ++p) {
      int path_work = 0;
      for (int h = progress[p]; h < paths_.hop_count(p); ++h) {
        path_work += weight_[p][h];
        // UE at the receiving end of hop h also transmits hop h + 1.
        if (h + 1 < paths_.hop_count(p)) {
          bound = std::max(bound, weight_[p][h] + weight_[p][h + 1]);
        }
      }
      bound = std::max(bound, path_work);
      if (progress[p] == 0 && paths_.hop_count(p) > 0) {
        ap_work += weight_[p][0];
      }
    }
    return std::max(bound, ap_work);
  }

  std::uint64_t key(const std::vector<int>& progress) const {
    std::uint64_t k = 0;
    for (int v : progress) {
      k = k * 17 + static_cast<std::uint64_t>(v);
    }
    return k;
  }

  void dfs(std::vector<int>& progress, int cost) {
    if (nodes_ >= node_limit_) {
      complete_ = false;
      return;
    }
    ++nodes_;

    std::vector<std::size_t> frontier;
    for (std::size_t p = 0; p < n_paths_; ++p) {
      if (progress[p] < paths_.hop_count(p)) {
        frontier.push_back(p);
      }
    }
    if (frontier.empty()) {
      if (cost < best_cost_) {
        best_cost_ = cost;
        best_.pairings = stack_;
      }
      return;
    }
    if (cost + lower_bound(progress) >= best_cost_) {
      return;
    }
    const auto state = key(progress);
    if (auto it = seen_.find(state); it != seen_.end() && it->second <= cost) {
      return;
    }
    seen_[state] = cost;

    const std::size_t f = frontier.size();
    std::vector<Link> hops(f);
    std::vector<int> w(f);
    for (std::size_t i = 0; i < f; ++i) {
      hops[i] = paths_.hop(frontier[i], progress[frontier[i]]);
      w[i] = weight_[frontier[i]][progress[frontier[i]]];
    }

    // Candidate pairings: feasible matchings of the frontier that cannot be
    // grown by a hop no heavier than their current slot count (such a growth
    // never makes a schedule worse).
    struct Candidate {
      std::uint32_t mask;
      int slots;
    };
    std::vector<Candidate> candidates;
    std::vector<Link> links;
    std::vector<bool> ok(std::size_t{1} << f, false);
    for (std::uint32_t mask = 1; mask < (1u << f); ++mask) {
      links.clear();
      int slots = 0;
      for (std::size_t i = 0; i < f; ++i) {
        if (mask & (1u << i)) {
          links.push_back(hops[i]);
          slots = std::max(slots, w[i]);
        }
      }
      ok[mask] = is_matching(links) && feasible_(links);
      if (ok[mask]) {
        candidates.push_back({mask, slots});
      }
    }
    std::vector<Candidate> maximal;
    for (const auto& c : candidates) {
      bool dominated = false;
      for (std::size_t i = 0; i < f && !dominated; ++i) {
        const std::uint32_t bit = 1u << i;
        dominated = !(c.mask & bit) && w[i] <= c.slots && ok[c.mask | bit];
      }
      if (!dominated) {
        maximal.push_back(c);
      }
    }
    // Cheap pairings first, then larger ones.
    std::sort(maximal.begin(), maximal.end(), [](const Candidate& a, const Candidate& b) {
      if (a.slots != b.slots) {
        return a.slots < b.slots;
      }
      return __builtin_popcount(a.mask) > __builtin_popcount(b.mask);
    });

    for (const auto& c : maximal) {
      Pairing pairing;
      pairing.slots = c.slots;
      for (std::size_t i = 0; i < f; ++i) {
        if (c.mask & (1u << i)) {
          pairing.links.push_back(hops[i]);
          ++progress[frontier[i]];
        }
      }
      stack_.push_back(std::move(pairing));
      dfs(progress, cost + c.slots);
      stack_.pop_back();
      for (std::size_t i = 0; i < f; ++i) {
        if (c.mask & (1u << i)) {
          --progress[frontier[i]];
        }
      }
    }
  }

  const PathSet& paths_;
  const FeasibilityFn& feasible_;
  std::uint64_t node_limit_;
  std::size_t n_paths_;
  std::vector<std::vector<int>> weight_;
  std::vector<Pairing> stack_;
  std::unordered_map<std::uint64_t, int> seen_;
  Schedule best_;
  int best_cost_ = std::numeric_limits<int>::max();
  bool complete_ = true;
  std::uint64_t nodes_ = 0;
};

}  // namespace

ExactSolution solve_exact(const PathSet& paths, const RateMatrix& rates, int d,
                          const FeasibilityFn& feasible, const ExactOptions& options) {
  const auto n_ues = static_cast<int>(paths.receivers().size());
  if (n_ues > options.max_ues) {
    throw std::invalid_argument("exact solver is limited to " + std::to_string(options.max_ues) +
                                " UEs, instance has " + std::to_string(n_ues));
  }
  if (d < 0) {
    throw std::invalid_argument("demand must be nonnegative");
  }
  ExactSolution out;
  if (d == 0) {
    // Every hop fits in a zero-slot pairing; keep the greedy order as witness.
    out.schedule = schedule_concurrent(paths, rates, 1, feasible);
    for (auto& pairing : out.schedule.pairings) {
      pairing.slots = 0;
    }
    out.proven_optimal = true;
    return out;
  }
  BranchAndBound bnb(paths, rates, d, feasible, options.node_limit);
  bnb.seed_incumbent(schedule_concurrent(paths, rates, d, feasible));
  bnb.run();
  out.schedule = bnb.best();
  out.objective = bnb.best_cost();
  out.proven_optimal = bnb.complete();
  out.nodes = bnb.nodes();
  return out;
}

}  // namespace mmd2d
