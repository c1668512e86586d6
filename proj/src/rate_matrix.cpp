#include "mmd2d/rate_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mmd2d {

RateMatrix::RateMatrix(int n) : n_(n), c_(static_cast<std::size_t>(n) * n, 0) {
  if (n < 0) {
    throw std::invalid_argument("rate matrix size must be nonnegative");
  }
}

RateMatrix RateMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(rows.size());
  RateMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw std::invalid_argument("rate matrix row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(n));
    }
    for (int j = 0; j < n; ++j) {
      if (i == j && rows[i][j] != 0) {
        throw std::invalid_argument("rate matrix diagonal must be zero");
      }
      m.set(i, j, rows[i][j]);
    }
  }
  return m;
}

std::size_t RateMatrix::index(NodeId tx, NodeId rx) const {
  if (tx < 0 || rx < 0 || tx >= n_ || rx >= n_) {
    throw std::out_of_range("rate matrix index out of range");
  }
  return static_cast<std::size_t>(tx) * n_ + rx;
}

void RateMatrix::set(NodeId tx, NodeId rx, int rate) {
  if (rate < 0) {
    throw std::invalid_argument("rates must be nonnegative");
  }
  c_[index(tx, rx)] = rate;
}

std::vector<std::vector<int>> RateMatrix::rows() const {
  std::vector<std::vector<int>> out(n_, std::vector<int>(n_));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      out[i][j] = (*this)(i, j);
    }
  }
  return out;
}

DistanceRateMap DistanceRateMap::equal_bands(double max_distance, std::vector<int> rates) {
  DistanceRateMap map;
  const auto bands = static_cast<double>(rates.size());
  for (std::size_t i = 0; i < rates.size(); ++i) {
    map.upper_bounds.push_back(max_distance * static_cast<double>(i + 1) / bands);
  }
  map.rates = std::move(rates);
  map.validate();
  return map;
}

DistanceRateMap DistanceRateMap::defaults_for(const Area& area) {
  return equal_bands(std::hypot(area.width, area.height), {3, 2, 1});
}

void DistanceRateMap::validate() const {
  if (rates.empty() || rates.size() != upper_bounds.size()) {
    throw std::invalid_argument("distance-rate map needs one rate per band");
  }
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (rates[i] < 1) {
      throw std::invalid_argument("band rates must be positive");
    }
    if (i > 0 && !(upper_bounds[i] > upper_bounds[i - 1])) {
      throw std::invalid_argument("distance thresholds must be strictly increasing");
    }
    if (i > 0 && !(rates[i] < rates[i - 1])) {
      throw std::invalid_argument("band rates must be strictly decreasing in distance");
    }
  }
  if (!(upper_bounds.front() > 0.0)) {
    throw std::invalid_argument("distance thresholds must be positive");
  }
}

int DistanceRateMap::rate_for(double distance_m) const {
  for (std::size_t i = 0; i < upper_bounds.size(); ++i) {
    if (distance_m < upper_bounds[i]) {
      return rates[i];
    }
  }
  return rates.back();
}

RateMatrix rate_matrix_from_topology(const Topology& topo, const DistanceRateMap& map) {
  map.validate();
  RateMatrix m(topo.size());
  for (NodeId i = 0; i < topo.size(); ++i) {
    for (NodeId j = 0; j < topo.size(); ++j) {
      if (i != j) {
        m.set(i, j, map.rate_for(topo.distance(i, j)));
      }
    }
  }
  return m;
}

}  // namespace mmd2d
