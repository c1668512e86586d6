#pragma once

#include <vector>

#include "mmd2d/topology.hpp"

namespace mmd2d {

// Per-directed-link rate c_ij in packets per slot. Diagonal is zero.
class RateMatrix {
 public:
  RateMatrix() = default;
  explicit RateMatrix(int n);
  // Throws std::invalid_argument for non-square input, a nonzero diagonal or
  // negative entries.
  static RateMatrix from_rows(const std::vector<std::vector<int>>& rows);

  int size() const { return n_; }
  int operator()(NodeId tx, NodeId rx) const { return c_[index(tx, rx)]; }
  void set(NodeId tx, NodeId rx, int rate);
  std::vector<std::vector<int>> rows() const;

  bool operator==(const RateMatrix&) const = default;

 private:
  std::size_t index(NodeId tx, NodeId rx) const;

  int n_ = 0;
  std::vector<int> c_;
};

// Ordered distance bands: a link of length l gets rates[i] for the first i
// with l < upper_bounds[i]; anything past the last bound gets the last rate.
struct DistanceRateMap {
  std::vector<double> upper_bounds;
  std::vector<int> rates;

  // Equal-width bands over [0, max_distance]; rates listed nearest first.
  static DistanceRateMap equal_bands(double max_distance, std::vector<int> rates);
  // Three bands over the diagonal of `area` with rates {3, 2, 1}.
  static DistanceRateMap defaults_for(const Area& area);

  // Throws std::invalid_argument unless bounds strictly increase, rates
  // strictly decrease, and both lists are nonempty and of equal length.
  void validate() const;
  int rate_for(double distance_m) const;
};

RateMatrix rate_matrix_from_topology(const Topology& topo, const DistanceRateMap& map);

}  // namespace mmd2d
