#include "mmd2d/radio.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmd2d {

bool is_matching(std::span<const Link> links) {
  for (std::size_t i = 0; i < links.size(); ++i) {
    for (std::size_t j = i + 1; j < links.size(); ++j) {
      if (links[i].adjacent(links[j])) {
        return false;
      }
    }
  }
  return true;
}

void RadioParams::validate() const {
  auto require_positive = [](double v, const char* name) {
    if (!(v > 0.0)) {
      throw std::invalid_argument(std::string("radio parameter ") + name + " must be positive");
    }
  };
  require_positive(tx_power_mw, "tx_power_mw");
  require_positive(k0, "k0");
  require_positive(path_loss_exp, "path_loss_exp");
  require_positive(noise_psd_mw_per_hz, "noise_psd_mw_per_hz");
  require_positive(bandwidth_hz, "bandwidth_hz");
  if (mui_factor < 0.0) {
    throw std::invalid_argument("radio parameter mui_factor must be >= 0");
  }
  if (!tx_gain || !rx_gain) {
    throw std::invalid_argument("antenna gain functions must be set");
  }
  if (sinr_thresholds.empty()) {
    throw std::invalid_argument("sinr_thresholds must not be empty");
  }
  double previous = 0.0;
  for (const auto& [rate, gamma_min] : sinr_thresholds) {
    require_positive(gamma_min, "sinr_thresholds entry");
    if (gamma_min < previous) {
      throw std::invalid_argument("sinr_thresholds must be nondecreasing in rate");
    }
    previous = gamma_min;
  }
}

double RadioParams::gamma(int rate) const {
  auto it = sinr_thresholds.find(rate);
  if (it == sinr_thresholds.end()) {
    throw std::out_of_range("no SINR threshold for rate " + std::to_string(rate));
  }
  return it->second;
}

namespace {

double path_gain(const RadioParams& params, NodeId tx, NodeId rx, const Topology& topo) {
  const double l = topo.distance(tx, rx);
  if (l <= 0.0) {
    throw std::domain_error("nodes " + std::to_string(tx) + " and " + std::to_string(rx) +
                            " are co-located");
  }
  return params.k0 * params.tx_gain(tx, rx) * params.rx_gain(tx, rx) *
         std::pow(l, -params.path_loss_exp) * params.tx_power_mw;
}

}  // namespace

double received_power(const RadioParams& params, const Link& link, const Topology& topo) {
  return path_gain(params, link.tx, link.rx, topo);
}

double interference_power(const RadioParams& params, const Link& victim,
                          std::span<const Link> concurrent, const Topology& topo) {
  double total = 0.0;
  for (const auto& other : concurrent) {
    if (other.adjacent(victim)) {
      throw std::invalid_argument("link " + to_string(other) + " is adjacent to " +
                                  to_string(victim));
    }
    total += path_gain(params, other.tx, victim.rx, topo);
  }
  return params.mui_factor * total;
}

double sinr(const RadioParams& params, const Link& link, std::span<const Link> concurrent,
            const Topology& topo) {
  return received_power(params, link, topo) /
         (params.noise_mw() + interference_power(params, link, concurrent, topo));
}

bool pairing_feasible(const RadioParams& params, std::span<const Link> pairing,
                      const RateMatrix& rates, const Topology& topo, InterferenceMode mode) {
  if (!is_matching(pairing)) {
    return false;
  }
  if (mode == InterferenceMode::Off) {
    return true;
  }
  std::vector<Link> others;
  others.reserve(pairing.size());
  for (std::size_t i = 0; i < pairing.size(); ++i) {
    others.clear();
    for (std::size_t j = 0; j < pairing.size(); ++j) {
      if (j != i) {
        others.push_back(pairing[j]);
      }
    }
    const Link& link = pairing[i];
    if (sinr(params, link, others, topo) < params.gamma(rates(link.tx, link.rx))) {
      return false;
    }
  }
  return true;
}

FeasibilityFn adjacency_only() {
  return [](std::span<const Link> links) { return is_matching(links); };
}

FeasibilityFn sinr_feasibility(RadioParams params, RateMatrix rates, Topology topo) {
  params.validate();
  if (!topo.has_positions()) {
    throw std::invalid_argument("SINR feasibility needs node positions");
  }
  return [params = std::move(params), rates = std::move(rates),
          topo = std::move(topo)](std::span<const Link> links) {
    return pairing_feasible(params, links, rates, topo, InterferenceMode::Sinr);
  };
}

FeasibilityFn make_feasibility(InterferenceMode mode, const RadioParams& params,
                               const RateMatrix& rates, const Topology& topo) {
  if (mode == InterferenceMode::Off) {
    return adjacency_only();
  }
  return sinr_feasibility(params, rates, topo);
}

}  // namespace mmd2d
