#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mmd2d/radio.hpp"
#include "mmd2d/rate_matrix.hpp"
#include "mmd2d/simulation.hpp"
#include "mmd2d/topology.hpp"
#include "mmd2d/traffic.hpp"

namespace mmd2d {

struct TopologySource {
  bool from_file = false;
  std::string path;  // coordinates file when from_file
  Area area;
  int n_ues = 10;
};

struct ExperimentSpec {
  TopologySource topology;
  RadioParams radio;
  std::optional<DistanceRateMap> rate_map;  // defaults to three bands over the diagonal
  TrafficConfig traffic;
  FrameConfig frame;
  std::vector<Scheme> schemes{Scheme::Sbts, Scheme::FdmacH, Scheme::Pcds};
  std::vector<double> loads{1.0};
  std::vector<TrafficMode> traffic_modes{TrafficMode::Poisson};
  std::vector<int> h_max{4};
  int replications = 1;
  std::uint64_t base_seed = 1;
  int workers = 0;  // 0: hardware concurrency
  std::string output;
  std::string summary;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Reads the config document (sections topology, radio, traffic, frame,
// experiment). Missing keys keep their defaults; type or range errors throw
// std::invalid_argument with the dotted field name.
ExperimentSpec spec_from_json(const nlohmann::json& doc);
ExperimentSpec load_spec(const std::string& path);

// Topology file: {"area": {...}, "nodes": [{"id", "x", "y", "ap"}, ...]}.
Topology load_topology_file(const std::string& path);

// Cell used by replication `seed`: the file topology, or a random cell drawn
// from the seed.
Topology topology_for(const ExperimentSpec& spec, std::uint64_t seed);
RateMatrix rates_for(const ExperimentSpec& spec, const Topology& topo);

struct ResultRow {
  Scheme scheme = Scheme::Pcds;
  TrafficMode mode = TrafficMode::Poisson;
  double load = 0.0;
  int h_max = 0;
  std::uint64_t seed = 0;
  Metrics metrics;
  std::string error;  // nonempty when the cell failed
};

// One row per (traffic mode, load, h_max, scheme, replication), in that
// nesting order regardless of worker count. SBTS rows do not depend on h_max.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

inline constexpr const char* kCsvHeader =
    "scheme,traffic_mode,load,h_max,seed,avg_delay,throughput,d2d_ratio,discarded,error";

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

struct Aggregate {
  double mean = 0.0;
  double half_width = 0.0;  // 95% Student-t confidence half-width
};

Aggregate aggregate(const std::vector<double>& samples);

// Mean and 95% half-width of each metric per (scheme, mode, load, h_max).
nlohmann::json summarize(const std::vector<ResultRow>& rows);

}  // namespace mmd2d
