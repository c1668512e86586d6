#pragma once

#include <cstdint>
#include <vector>

#include "mmd2d/link.hpp"
#include "mmd2d/rate_matrix.hpp"
#include "mmd2d/topology.hpp"

namespace mmd2d {

using Path = std::vector<NodeId>;  // starts at the AP

// AP-rooted downloading paths. Each UE is the receiver of exactly one hop;
// paths only share the AP.
class PathSet {
 public:
  PathSet() = default;
  // Throws std::invalid_argument if the paths break the invariants for a cell
  // of `n_nodes` nodes rooted at `ap`.
  PathSet(NodeId ap, int n_nodes, std::vector<Path> paths);

  NodeId ap() const { return ap_; }
  int n_nodes() const { return n_nodes_; }
  const std::vector<Path>& paths() const { return paths_; }
  std::size_t size() const { return paths_.size(); }
  const Path& operator[](std::size_t p) const { return paths_[p]; }

  int hop_count(std::size_t p) const { return static_cast<int>(paths_[p].size()) - 1; }
  NodeId last_node(std::size_t p) const { return paths_[p].back(); }
  // Hop h (0-based) of path p.
  Link hop(std::size_t p, int h) const { return Link{paths_[p][h], paths_[p][h + 1]}; }
  int max_hop_count() const;
  int total_hops() const;
  // Downloading source s_u; -1 for the AP or nodes on no path.
  NodeId source_of(NodeId u) const { return source_[u]; }
  std::vector<NodeId> receivers() const;
  std::vector<Link> links() const;

  bool operator==(const PathSet& other) const { return ap_ == other.ap_ && paths_ == other.paths_; }

 private:
  NodeId ap_ = 0;
  int n_nodes_ = 0;
  std::vector<Path> paths_;
  std::vector<NodeId> source_;
};

struct PathSelectStats {
  std::uint64_t operations = 0;  // argmax candidate evaluations and guard checks
  int h_max_used = 0;
  bool clamped = false;
};

// ceil((sqrt(1 + 8 n) - 1) / 2): the longest path the selection can build.
int max_hops_bound(int n_ues);

// Greedy rate-maximizing path selection rooted at the AP. Argmax ties go to the
// lowest node id. h_max beyond max_hops_bound is clamped (stats->clamped).
PathSet select_paths(const RateMatrix& rates, const Topology& topo, int h_max,
                     PathSelectStats* stats = nullptr);

}  // namespace mmd2d
