#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mmd2d/link.hpp"
#include "mmd2d/radio.hpp"
#include "mmd2d/rate_matrix.hpp"
#include "mmd2d/schedule.hpp"
#include "mmd2d/topology.hpp"
#include "mmd2d/traffic.hpp"

namespace mmd2d {

enum class Scheme { Pcds, FdmacH, Sbts };

std::string to_string(Scheme scheme);
// Accepts "PCDS", "FDMAC-H", "SBTS" (case-insensitive).
Scheme scheme_from_string(const std::string& s);

struct FrameConfig {
  double slot_us = 5.0;
  int t_d_slots = 1;
  int t_push_slots = 1;
  int t_sch_slots = 2;
  double delay_threshold_slots = 2.5e4;
  std::int64_t horizon_slots = 100'000;
  Scheme scheme = Scheme::Pcds;
  int h_max = 4;
  InterferenceMode interference = InterferenceMode::Off;
  std::uint64_t seed = 1;

  void validate() const;
  // Scheduling-phase length: t_d + t_sch + t_push, or t_d alone for SBTS.
  int scheduling_slots() const;
};

enum class EventType { Arrival, Delivery };

struct Event {
  double slot = 0.0;  // arrival time, or end of the delivering slot
  EventType type = EventType::Arrival;
  Link link;          // delivering link (deliveries only)
  std::int64_t packet = 0;
};

struct EventLog {
  int n_ues = 0;
  std::int64_t horizon_slots = 0;
  std::vector<Event> events;
};

// One line per event: "<slot> <arrival|delivery> <tx>-><rx> <packet>".
void write_event_log(std::ostream& out, const EventLog& log);

struct Metrics {
  double avg_delay_slots = 0.0;        // over successful deliveries
  std::uint64_t throughput_packets = 0;  // successful (packet, UE) deliveries
  double d2d_ratio = 0.0;              // share of successful deliveries sent by a UE
  std::uint64_t discarded_packets = 0;   // deliveries later than the threshold
  std::uint64_t arrivals = 0;
  std::uint64_t pending = 0;             // arrivals * |U| - delivered - discarded
};

// `ap` identifies AP-sourced deliveries; everything else counts as D2D.
Metrics compute_metrics(const EventLog& log, NodeId ap, double delay_threshold_slots);

struct SimulationInputs {
  const Topology& topo;
  const RateMatrix& rates;
  const RadioParams& radio;
};

// Frame loop over a given arrival trace. At each frame boundary every arrived
// packet joins the frame's demand; an empty queue idles one slot.
EventLog simulate_trace(const SimulationInputs& in, const ArrivalTrace& trace,
                        const FrameConfig& frame);

// Generates arrivals from `traffic` (seeded by frame.seed) and simulates.
Metrics run_simulation(const Topology& topo, const RateMatrix& rates, const RadioParams& radio,
                       const TrafficConfig& traffic, const FrameConfig& frame);

// Schedule the chosen scheme builds for a demand of d packets.
Schedule build_frame_schedule(Scheme scheme, const Topology& topo, const RateMatrix& rates,
                              const FeasibilityFn& feasible, int h_max, int d);

}  // namespace mmd2d
