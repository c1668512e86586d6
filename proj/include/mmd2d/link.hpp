#pragma once

#include <compare>
#include <span>
#include <string>

#include "mmd2d/topology.hpp"

namespace mmd2d {

// Directional link (tx, rx).
struct Link {
  NodeId tx = 0;
  NodeId rx = 0;

  auto operator<=>(const Link&) const = default;

  bool touches(NodeId v) const { return tx == v || rx == v; }
  // Half-duplex nodes with a single beam: links sharing any node conflict.
  bool adjacent(const Link& other) const {
    return touches(other.tx) || touches(other.rx);
  }
};

inline std::string to_string(const Link& link) {
  return std::to_string(link.tx) + "->" + std::to_string(link.rx);
}

// True if no two links in `links` share a node.
bool is_matching(std::span<const Link> links);

}  // namespace mmd2d
