#include "mmd2d/path_select.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace mmd2d {

PathSet::PathSet(NodeId ap, int n_nodes, std::vector<Path> paths)
    : ap_(ap), n_nodes_(n_nodes), paths_(std::move(paths)), source_(n_nodes, -1) {
  if (ap < 0 || ap >= n_nodes) {
    throw std::invalid_argument("AP id out of range");
  }
  for (const auto& path : paths_) {
    if (path.size() < 2 || path.front() != ap) {
      throw std::invalid_argument("every path must start at the AP and have at least one hop");
    }
    for (std::size_t h = 1; h < path.size(); ++h) {
      const NodeId u = path[h];
      if (u < 0 || u >= n_nodes || u == ap) {
        throw std::invalid_argument("path visits invalid node " + std::to_string(u));
      }
      if (source_[u] != -1) {
        throw std::invalid_argument("UE " + std::to_string(u) + " appears on more than one hop");
      }
      source_[u] = path[h - 1];
    }
  }
  for (NodeId u = 0; u < n_nodes; ++u) {
    if (u != ap && source_[u] == -1) {
      throw std::invalid_argument("UE " + std::to_string(u) + " is on no path");
    }
  }
}

int PathSet::max_hop_count() const {
  int m = 0;
  for (std::size_t p = 0; p < paths_.size(); ++p) {
    m = std::max(m, hop_count(p));
  }
  return m;
}

int PathSet::total_hops() const {
  int total = 0;
  for (std::size_t p = 0; p < paths_.size(); ++p) {
    total += hop_count(p);
  }
  return total;
}

std::vector<NodeId> PathSet::receivers() const {
  std::vector<NodeId> out;
  for (const auto& path : paths_) {
    out.insert(out.end(), path.begin() + 1, path.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Link> PathSet::links() const {
  std::vector<Link> out;
  for (std::size_t p = 0; p < paths_.size(); ++p) {
    for (int h = 0; h < hop_count(p); ++h) {
      out.push_back(hop(p, h));
    }
  }
  return out;
}

int max_hops_bound(int n_ues) {
  if (n_ues < 1) {
    throw std::invalid_argument("max_hops_bound needs at least one UE");
  }
  // Integer form of the ceiling: smallest m with m (m + 1) / 2 >= n.
  int m = static_cast<int>(std::ceil((std::sqrt(1.0 + 8.0 * n_ues) - 1.0) / 2.0));
  while (m > 1 && (m - 1) * m / 2 >= n_ues) {
    --m;
  }
  while (m * (m + 1) / 2 < n_ues) {
    ++m;
  }
  return m;
}

namespace {

struct Selector {
  const RateMatrix& rates;
  NodeId ap;
  int h_max;
  std::uint64_t ops = 0;

  std::vector<Path> paths;
  std::vector<int> path_ending_at;  // l_p -> p, -1 otherwise
  std::vector<bool> has_source;     // b_u
  std::vector<bool> is_source;      // r_u

  Selector(const RateMatrix& r, NodeId ap_id, int cap)
      : rates(r), ap(ap_id), h_max(cap), path_ending_at(r.size(), -1),
        has_source(r.size(), false), is_source(r.size(), false) {}

  int hops(int p) const { return static_cast<int>(paths[p].size()) - 1; }

  void open_path(NodeId u) {
    path_ending_at[u] = static_cast<int>(paths.size());
    paths.push_back(Path{ap, u});
    has_source[u] = true;
  }

  void extend(NodeId from, NodeId u) {
    const int p = path_ending_at[from];
    paths[p].push_back(u);
    path_ending_at[from] = -1;
    path_ending_at[u] = p;
    has_source[u] = true;
    is_source[from] = true;
  }
};

}  // namespace

PathSet select_paths(const RateMatrix& rates, const Topology& topo, int h_max,
                     PathSelectStats* stats) {
  if (h_max < 1) {
    throw std::invalid_argument("h_max must be at least 1");
  }
  if (rates.size() != topo.size()) {
    throw std::invalid_argument("rate matrix size does not match topology");
  }
  if (topo.n_ues() < 1) {
    throw std::invalid_argument("topology has no UEs");
  }
  const int bound = max_hops_bound(topo.n_ues());
  const int cap = std::min(h_max, bound);
  Selector sel(rates, topo.ap(), cap);
  const NodeId ap = topo.ap();

  std::set<NodeId> selected;  // U_b
  std::set<NodeId> pending(topo.ues().begin(), topo.ues().end());  // U_c

  while (!pending.empty()) {
    std::set<NodeId> added;  // U_t
    if (selected.size() < pending.size()) {
      // Open a new path to the UE the AP reaches fastest.
      NodeId best = -1;
      for (NodeId u : pending) {
        ++sel.ops;
        if (best == -1 || rates(ap, u) > rates(ap, best)) {
          best = u;
        }
      }
      sel.open_path(best);
      added.insert(best);
      // Extend every path whose tail has not yet served anyone.
      for (NodeId u : selected) {
        ++sel.ops;
        const int p = sel.path_ending_at[u];
        if (p < 0 || sel.is_source[u] || sel.hops(p) >= cap) {
          continue;
        }
        NodeId target = -1;
        for (NodeId v : pending) {
          ++sel.ops;
          if (sel.has_source[v]) {
            continue;
          }
          if (target == -1 || rates(u, v) > rates(u, target)) {
            target = v;
          }
        }
        if (target != -1) {
          sel.extend(u, target);
          added.insert(target);
        }
      }
    } else {
      // Candidate sources: tails of short paths that still have capacity, plus the AP.
      std::set<NodeId> sources;  // U_r
      for (int p = 0; p < static_cast<int>(sel.paths.size()); ++p) {
        ++sel.ops;
        const NodeId tail = sel.paths[p].back();
        if (sel.hops(p) < cap && !sel.is_source[tail]) {
          sources.insert(tail);
        }
      }
      sources.insert(ap);
      for (NodeId u : pending) {
        NodeId best = -1;
        for (NodeId v : sources) {
          ++sel.ops;
          if (v != ap && sel.is_source[v]) {
            continue;
          }
          if (best == -1 || rates(v, u) > rates(best, u)) {
            best = v;
          }
        }
        if (best == ap) {
          sel.open_path(u);
        } else {
          sel.extend(best, u);
        }
        added.insert(u);
      }
    }
    for (NodeId u : added) {
      selected.insert(u);
      pending.erase(u);
    }
  }

  if (stats != nullptr) {
    stats->operations = sel.ops;
    stats->h_max_used = cap;
    stats->clamped = cap < h_max;
  }
  return PathSet(ap, topo.size(), std::move(sel.paths));
}

}  // namespace mmd2d
