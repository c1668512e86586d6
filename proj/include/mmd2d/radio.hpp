#pragma once

#include <functional>
#include <map>
#include <span>

#include "mmd2d/link.hpp"
#include "mmd2d/rate_matrix.hpp"
#include "mmd2d/topology.hpp"

namespace mmd2d {

// Antenna gain in the direction tx -> rx, dimensionless.
using GainFn = std::function<double(NodeId tx, NodeId rx)>;

inline GainFn constant_gain(double g) {
  return [g](NodeId, NodeId) { return g; };
}

// Link-budget parameters. Defaults describe a 60 GHz LOS indoor cell:
// k0 = (lambda / 4 pi)^2 at 60 GHz, -174 dBm/Hz noise, 2.16 GHz channel.
struct RadioParams {
  double tx_power_mw = 1000.0;
  double k0 = 1.5831e-7;
  GainFn tx_gain = constant_gain(1.0);
  GainFn rx_gain = constant_gain(1.0);
  double path_loss_exp = 2.17;
  double mui_factor = 0.01;
  double noise_psd_mw_per_hz = 3.981e-18;
  double bandwidth_hz = 2.16e9;
  // Minimum SINR gamma(c) for each rate in packets per slot.
  std::map<int, double> sinr_thresholds{{1, 4.0}, {2, 16.0}, {3, 36.0}};

  // Throws std::invalid_argument on non-positive fields, rho < 0 or a
  // decreasing threshold table.
  void validate() const;
  // Throws std::out_of_range for a rate missing from the table.
  double gamma(int rate) const;
  double noise_mw() const { return noise_psd_mw_per_hz * bandwidth_hz; }
};

enum class InterferenceMode { Off, Sinr };

// P^r = k0 Gt Gr l^-tau Pt. Throws std::domain_error for co-located nodes.
double received_power(const RadioParams& params, const Link& link, const Topology& topo);

// rho * sum of the powers every concurrent transmitter delivers at the
// victim's receiver. Throws std::invalid_argument if a concurrent link is
// adjacent to the victim.
double interference_power(const RadioParams& params, const Link& victim,
                          std::span<const Link> concurrent, const Topology& topo);

double sinr(const RadioParams& params, const Link& link, std::span<const Link> concurrent,
            const Topology& topo);

// A pairing is feasible if it is a matching and, in Sinr mode, every link
// meets gamma(c) of its rate given all other links of the pairing.
bool pairing_feasible(const RadioParams& params, std::span<const Link> pairing,
                      const RateMatrix& rates, const Topology& topo, InterferenceMode mode);

// Closure handed to the schedulers.
using FeasibilityFn = std::function<bool(std::span<const Link>)>;

FeasibilityFn adjacency_only();
FeasibilityFn sinr_feasibility(RadioParams params, RateMatrix rates, Topology topo);
FeasibilityFn make_feasibility(InterferenceMode mode, const RadioParams& params,
                               const RateMatrix& rates, const Topology& topo);

}  // namespace mmd2d
