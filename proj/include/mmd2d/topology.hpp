#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mmd2d {

using NodeId = int;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point& a, const Point& b);

struct Area {
  double width = 10.0;
  double height = 10.0;
};

struct Node {
  NodeId id = 0;
  std::optional<Point> position;  // absent for label-only cells (golden fixtures)
  bool is_ap = false;
};

// A small cell: one access point plus user equipments, ids dense in 0..n-1.
class Topology {
 public:
  // Throws std::invalid_argument when ids are not dense, the AP count is not
  // exactly one, n < 2, or a position lies outside `area`.
  explicit Topology(std::vector<Node> nodes, Area area = {});

  // Cell with no geometry. Distance-based operations throw on it.
  static Topology labels_only(int n, NodeId ap);

  // AP at the center, UEs uniform over the area. The AP gets the last id so
  // that UE ids are 0..n_ues-1.
  static Topology random_uniform(int n_ues, Area area, std::uint64_t seed);

  int size() const { return static_cast<int>(nodes_.size()); }
  NodeId ap() const { return ap_; }
  bool is_ap(NodeId id) const { return id == ap_; }
  const std::vector<NodeId>& ues() const { return ues_; }
  int n_ues() const { return static_cast<int>(ues_.size()); }
  const Node& node(NodeId id) const;
  const std::vector<Node>& nodes() const { return nodes_; }
  const Area& area() const { return area_; }
  bool has_positions() const { return has_positions_; }

  // Euclidean distance l_ij in meters. Throws std::logic_error on a
  // label-only cell.
  double distance(NodeId a, NodeId b) const;

  std::string label(NodeId id) const;

 private:
  std::vector<Node> nodes_;
  Area area_;
  NodeId ap_ = 0;
  std::vector<NodeId> ues_;
  bool has_positions_ = true;
};

}  // namespace mmd2d
