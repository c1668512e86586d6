#include "mmd2d/traffic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace mmd2d {

std::string to_string(TrafficMode mode) { return mode == TrafficMode::Poisson ? "poisson" : "ipp"; }

TrafficMode traffic_mode_from_string(const std::string& s) {
  if (s == "poisson" || s == "Poisson") {
    return TrafficMode::Poisson;
  }
  if (s == "ipp" || s == "IPP") {
    return TrafficMode::Ipp;
  }
  throw std::invalid_argument("traffic.mode: unknown mode '" + s + "'");
}

void TrafficConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) {
      throw std::invalid_argument(std::string("traffic.") + name + " must be positive");
    }
  };
  positive(packet_size_bits, "packet_size_bits");
  positive(rate_ref_bps, "rate_ref_bps");
  positive(slot_us, "slot_us");
  if (n_ues < 1) {
    throw std::invalid_argument("traffic.n_ues must be at least 1");
  }
  if (mode == TrafficMode::Poisson) {
    positive(lambda, "lambda");
  } else {
    positive(lambda1, "lambda1");
    positive(lambda2, "lambda2");
    if (p1 < 0.0 || p2 < 0.0 || std::abs(p1 + p2 - 1.0) > 1e-12) {
      throw std::invalid_argument("traffic.p1 and traffic.p2 must be nonnegative and sum to 1");
    }
  }
}

double TrafficConfig::ipp_mean_interarrival() const { return p1 / lambda1 + p2 / lambda2; }

double traffic_load(const TrafficConfig& cfg) {
  cfg.validate();
  const double per_packet = cfg.packet_size_bits * cfg.n_ues / cfg.rate_ref_bps;
  if (cfg.mode == TrafficMode::Poisson) {
    return cfg.lambda * per_packet;
  }
  return per_packet / cfg.ipp_mean_interarrival();
}

TrafficConfig with_load(TrafficConfig cfg, double load) {
  if (!(load > 0.0)) {
    throw std::invalid_argument("load must be positive");
  }
  const double scale = load / traffic_load(cfg);
  if (cfg.mode == TrafficMode::Poisson) {
    cfg.lambda *= scale;
  } else {
    cfg.lambda1 *= scale;
    cfg.lambda2 *= scale;
  }
  return cfg;
}

namespace {

template <typename Draw>
ArrivalTrace accumulate(double horizon_slots, Draw&& draw_seconds, double slot_seconds) {
  if (!(horizon_slots > 0.0)) {
    throw std::invalid_argument("horizon must be positive");
  }
  ArrivalTrace trace;
  double t = 0.0;
  for (;;) {
    t += draw_seconds() / slot_seconds;
    if (t >= horizon_slots) {
      break;
    }
    trace.times.push_back(t);
  }
  return trace;
}

}  // namespace

ArrivalTrace poisson_arrivals(const TrafficConfig& cfg, double horizon_slots, std::uint64_t seed) {
  cfg.validate();
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> gap(cfg.lambda);
  return accumulate(horizon_slots, [&] { return gap(rng); }, cfg.slot_us * 1e-6);
}

ArrivalTrace ipp_arrivals(const TrafficConfig& cfg, double horizon_slots, std::uint64_t seed) {
  cfg.validate();
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution first_branch(cfg.p1);
  std::exponential_distribution<double> gap1(cfg.lambda1);
  std::exponential_distribution<double> gap2(cfg.lambda2);
  return accumulate(
      horizon_slots, [&] { return first_branch(rng) ? gap1(rng) : gap2(rng); },
      cfg.slot_us * 1e-6);
}

ArrivalTrace generate_arrivals(const TrafficConfig& cfg, double horizon_slots, std::uint64_t seed) {
  return cfg.mode == TrafficMode::Poisson ? poisson_arrivals(cfg, horizon_slots, seed)
                                          : ipp_arrivals(cfg, horizon_slots, seed);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace mmd2d
