#include "mmd2d/simulation.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "mmd2d/baselines.hpp"
#include "mmd2d/ct_scheduler.hpp"
#include "mmd2d/path_select.hpp"

namespace mmd2d {

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Pcds: return "PCDS";
    case Scheme::FdmacH: return "FDMAC-H";
    case Scheme::Sbts: return "SBTS";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& s) {
  std::string up;
  for (char c : s) {
    up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  if (up == "PCDS") {
    return Scheme::Pcds;
  }
  if (up == "FDMAC-H" || up == "FDMACH" || up == "FDMAC_H") {
    return Scheme::FdmacH;
  }
  if (up == "SBTS") {
    return Scheme::Sbts;
  }
  throw std::invalid_argument("unknown scheme '" + s + "'");
}

void FrameConfig::validate() const {
  if (t_d_slots < 0 || t_push_slots < 0 || t_sch_slots < 0) {
    throw std::invalid_argument("frame phase lengths must be nonnegative");
  }
  if (horizon_slots <= 0) {
    throw std::invalid_argument("frame.horizon_slots must be positive");
  }
  if (!(slot_us > 0.0)) {
    throw std::invalid_argument("frame.slot_us must be positive");
  }
  if (delay_threshold_slots < 0.0) {
    throw std::invalid_argument("frame.delay_threshold_slots must be nonnegative");
  }
  if (h_max < 1) {
    throw std::invalid_argument("frame.h_max must be at least 1");
  }
}

int FrameConfig::scheduling_slots() const {
  return scheme == Scheme::Sbts ? t_d_slots : t_d_slots + t_sch_slots + t_push_slots;
}

void write_event_log(std::ostream& out, const EventLog& log) {
  for (const auto& e : log.events) {
    out << e.slot << ' ' << (e.type == EventType::Arrival ? "arrival" : "delivery") << ' ';
    if (e.type == EventType::Delivery) {
      out << to_string(e.link);
    } else {
      out << '-';
    }
    out << ' ' << e.packet << '\n';
  }
}

Metrics compute_metrics(const EventLog& log, NodeId ap, double delay_threshold_slots) {
  Metrics m;
  std::unordered_map<std::int64_t, double> arrived_at;
  double delay_sum = 0.0;
  std::uint64_t d2d = 0;
  for (const auto& e : log.events) {
    if (e.type == EventType::Arrival) {
      arrived_at[e.packet] = e.slot;
      ++m.arrivals;
      continue;
    }
    auto it = arrived_at.find(e.packet);
    if (it == arrived_at.end()) {
      throw std::invalid_argument("delivery of packet " + std::to_string(e.packet) +
                                  " precedes its arrival");
    }
    const double delay = e.slot - it->second;
    if (delay > delay_threshold_slots) {
      ++m.discarded_packets;
      continue;
    }
    ++m.throughput_packets;
    delay_sum += delay;
    if (e.link.tx != ap) {
      ++d2d;
    }
  }
  if (m.throughput_packets > 0) {
    m.avg_delay_slots = delay_sum / static_cast<double>(m.throughput_packets);
    m.d2d_ratio = static_cast<double>(d2d) / static_cast<double>(m.throughput_packets);
  }
  m.pending = m.arrivals * static_cast<std::uint64_t>(log.n_ues) - m.throughput_packets -
              m.discarded_packets;
  return m;
}

Schedule build_frame_schedule(Scheme scheme, const Topology& topo, const RateMatrix& rates,
                              const FeasibilityFn& feasible, int h_max, int d) {
  switch (scheme) {
    case Scheme::Sbts:
      return sbts_schedule(rates, topo, d);
    case Scheme::Pcds:
      return schedule_concurrent(select_paths(rates, topo, h_max), rates, d, feasible);
    case Scheme::FdmacH:
      return fdmach_schedule(select_paths(rates, topo, h_max), rates, d, feasible);
  }
  throw std::logic_error("unhandled scheme");
}

EventLog simulate_trace(const SimulationInputs& in, const ArrivalTrace& trace,
                        const FrameConfig& frame) {
  frame.validate();
  const FeasibilityFn feasible =
      make_feasibility(frame.interference, in.radio, in.rates, in.topo);
  const auto horizon = frame.horizon_slots;

  EventLog log;
  log.n_ues = in.topo.n_ues();
  log.horizon_slots = horizon;
  const auto n_arrivals = static_cast<std::int64_t>(trace.times.size());
  for (std::int64_t i = 0; i < n_arrivals; ++i) {
    log.events.push_back({trace.times[i], EventType::Arrival, Link{}, i});
  }

  std::int64_t next = 0;  // first packet not yet batched
  std::int64_t t = 0;
  while (t < horizon) {
    std::int64_t end = next;
    while (end < n_arrivals && trace.times[end] <= static_cast<double>(t)) {
      ++end;
    }
    const auto d = static_cast<int>(end - next);
    if (d == 0) {
      ++t;
      continue;
    }
    const Schedule sched = build_frame_schedule(frame.scheme, in.topo, in.rates, feasible,
                                                frame.h_max, d);
    std::int64_t start = t + frame.scheduling_slots();
    for (const auto& pairing : sched.pairings) {
      for (const auto& link : pairing.links) {
        const int c = in.rates(link.tx, link.rx);
        for (int i = 0; i < d; ++i) {
          const std::int64_t done = start + i / c + 1;
          if (done > horizon) {
            break;
          }
          log.events.push_back(
              {static_cast<double>(done), EventType::Delivery, link, next + i});
        }
      }
      start += pairing.slots;
    }
    next = end;
    t = start;
  }
  return log;
}

Metrics run_simulation(const Topology& topo, const RateMatrix& rates, const RadioParams& radio,
                       const TrafficConfig& traffic, const FrameConfig& frame) {
  TrafficConfig cfg = traffic;
  cfg.slot_us = frame.slot_us;
  cfg.n_ues = topo.n_ues();
  const auto trace = generate_arrivals(cfg, static_cast<double>(frame.horizon_slots),
                                       derive_seed(frame.seed, 2));
  const auto log = simulate_trace({topo, rates, radio}, trace, frame);
  return compute_metrics(log, topo.ap(), frame.delay_threshold_slots);
}

}  // namespace mmd2d
