#include "mmd2d/topology.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mmd2d {

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

Topology::Topology(std::vector<Node> nodes, Area area) : nodes_(std::move(nodes)), area_(area) {
  if (nodes_.size() < 2) {
    throw std::invalid_argument("topology needs at least two nodes");
  }
  std::vector<bool> seen(nodes_.size(), false);
  int ap_count = 0;
  for (const auto& node : nodes_) {
    if (node.id < 0 || node.id >= size() || seen[node.id]) {
      throw std::invalid_argument("node ids must be unique and dense in 0..n-1 (bad id " +
                                  std::to_string(node.id) + ")");
    }
    seen[node.id] = true;
    if (node.is_ap) {
      ++ap_count;
      ap_ = node.id;
    }
    if (node.position) {
      const auto& p = *node.position;
      if (p.x < 0.0 || p.y < 0.0 || p.x > area_.width || p.y > area_.height) {
        throw std::invalid_argument("node " + std::to_string(node.id) + " lies outside the area");
      }
    } else {
      has_positions_ = false;
    }
  }
  if (ap_count != 1) {
    throw std::invalid_argument("topology must contain exactly one AP, found " +
                                std::to_string(ap_count));
  }
  std::sort(nodes_.begin(), nodes_.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
  for (const auto& node : nodes_) {
    if (!node.is_ap) {
      ues_.push_back(node.id);
    }
  }
}

Topology Topology::labels_only(int n, NodeId ap) {
  std::vector<Node> nodes;
  for (NodeId i = 0; i < n; ++i) {
    nodes.push_back(Node{i, std::nullopt, i == ap});
  }
  return Topology(std::move(nodes));
}

Topology Topology::random_uniform(int n_ues, Area area, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, area.width);
  std::uniform_real_distribution<double> uy(0.0, area.height);
  std::vector<Node> nodes;
  for (NodeId i = 0; i < n_ues; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    nodes.push_back(Node{i, Point{x, y}, false});
  }
  nodes.push_back(Node{n_ues, Point{area.width / 2.0, area.height / 2.0}, true});
  return Topology(std::move(nodes), area);
}

const Node& Topology::node(NodeId id) const {
  if (id < 0 || id >= size()) {
    throw std::out_of_range("unknown node id " + std::to_string(id));
  }
  return nodes_[id];
}

double Topology::distance(NodeId a, NodeId b) const {
  const auto& pa = node(a).position;
  const auto& pb = node(b).position;
  if (!pa || !pb) {
    throw std::logic_error("topology has no node positions");
  }
  return mmd2d::distance(*pa, *pb);
}

std::string Topology::label(NodeId id) const {
  if (is_ap(id)) {
    return "AP";
  }
  // UE labels are 1-based in id order, skipping the AP.
  int rank = 1;
  for (NodeId ue : ues_) {
    if (ue == id) {
      return "UE" + std::to_string(rank);
    }
    ++rank;
  }
  throw std::out_of_range("unknown node id " + std::to_string(id));
}

}  // namespace mmd2d
