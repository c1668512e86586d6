#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mmd2d/path_select.hpp"
#include "mmd2d/rate_matrix.hpp"
#include "mmd2d/schedule.hpp"
#include "mmd2d/topology.hpp"

namespace mmd2d {

// Hand-worked example cell with its expected outcomes.
struct Fixture {
  std::string name;
  Topology topo;
  RateMatrix rates;
  int h_max = 0;
  int demand = 0;
  PathSet expected_paths;
  Schedule expected_schedule;
  int expected_serial_slots = 0;
};

std::vector<std::string> fixture_names();

// "paper-6ue": six UEs (ids 0..5 = UE1..UE6) and the AP (id 6), d = 6,
// h_max = 3. Throws std::invalid_argument for unknown names.
Fixture load_fixture(const std::string& name);

// Writes rates.txt, topology.json, paths.json, schedule.json and fixture.json
// into `dir` (created if missing). Output is deterministic.
std::vector<std::filesystem::path> export_fixture(const std::string& name,
                                                  const std::filesystem::path& dir);

}  // namespace mmd2d
