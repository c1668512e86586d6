#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mmd2d {

enum class TrafficMode { Poisson, Ipp };

std::string to_string(TrafficMode mode);
// Throws std::invalid_argument for anything but "poisson" / "ipp".
TrafficMode traffic_mode_from_string(const std::string& s);

struct TrafficConfig {
  TrafficMode mode = TrafficMode::Poisson;
  double packet_size_bits = 8000.0;  // L
  double rate_ref_bps = 2e9;         // R
  int n_ues = 10;
  double slot_us = 5.0;
  double lambda = 25000.0;   // Poisson rate, packets/s
  double lambda1 = 100000.0;  // IPP branch rates, packets/s
  double lambda2 = 10000.0;
  double p1 = 0.5;
  double p2 = 0.5;
  std::uint64_t seed = 1;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
  // Mean IPP inter-arrival time p1 / lambda1 + p2 / lambda2, in seconds.
  double ipp_mean_interarrival() const;
};

// Offered load: lambda L |U| / R for Poisson, L |U| / (E(X) R) for IPP.
double traffic_load(const TrafficConfig& cfg);

// Returns cfg with its rate(s) rescaled so that traffic_load equals `load`.
// IPP keeps p1, p2 and the ratio lambda1 / lambda2.
TrafficConfig with_load(TrafficConfig cfg, double load);

// Arrival times in slot units, nondecreasing, all in [0, horizon).
struct ArrivalTrace {
  std::vector<double> times;
};

ArrivalTrace poisson_arrivals(const TrafficConfig& cfg, double horizon_slots, std::uint64_t seed);
// Inter-arrivals i.i.d. second-order hyper-exponential: Exp(lambda1) with
// probability p1, Exp(lambda2) otherwise.
ArrivalTrace ipp_arrivals(const TrafficConfig& cfg, double horizon_slots, std::uint64_t seed);
ArrivalTrace generate_arrivals(const TrafficConfig& cfg, double horizon_slots, std::uint64_t seed);

// Independent sub-stream seed (splitmix64 finalizer over base and stream).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace mmd2d
