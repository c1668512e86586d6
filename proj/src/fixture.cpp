#include "mmd2d/fixture.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "mmd2d/serialize.hpp"

namespace mmd2d {

namespace {

constexpr const char* kPaper6 = "paper-6ue";

Fixture paper_6ue() {
  // Rows are transmitters: UE1..UE6, then the AP.
  const RateMatrix rates = RateMatrix::from_rows({
      {0, 1, 1, 2, 2, 1, 3},
      {1, 0, 1, 1, 1, 2, 3},
      {1, 1, 0, 1, 1, 1, 2},
      {2, 1, 1, 0, 3, 1, 1},
      {2, 1, 1, 3, 0, 1, 1},
      {1, 2, 1, 1, 1, 0, 1},
      {3, 3, 2, 1, 1, 1, 0},
  });
  constexpr NodeId ap = 6;
  PathSet paths(ap, 7, {{ap, 0, 3, 4}, {ap, 1, 5}, {ap, 2}});
  Schedule sched{{
      Pairing{{Link{ap, 0}}, 2},
      Pairing{{Link{0, 3}, Link{ap, 1}}, 3},
      Pairing{{Link{1, 5}, Link{ap, 2}, Link{3, 4}}, 3},
  }};
  return Fixture{kPaper6, Topology::labels_only(7, ap), rates, 3, 6, std::move(paths),
                 std::move(sched), 25};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << content;
}

}  // namespace

std::vector<std::string> fixture_names() { return {kPaper6}; }

Fixture load_fixture(const std::string& name) {
  if (name == kPaper6) {
    return paper_6ue();
  }
  throw std::invalid_argument("unknown fixture '" + name + "'");
}

std::vector<std::filesystem::path> export_fixture(const std::string& name,
                                                  const std::filesystem::path& dir) {
  const Fixture fx = load_fixture(name);
  std::filesystem::create_directories(dir);

  nlohmann::json topo;
  topo["ap"] = fx.topo.ap();
  topo["nodes"] = nlohmann::json::array();
  for (const auto& node : fx.topo.nodes()) {
    topo["nodes"].push_back({{"id", node.id}, {"label", fx.topo.label(node.id)}});
  }
  const nlohmann::json meta{{"name", fx.name},
                            {"h_max", fx.h_max},
                            {"demand", fx.demand},
                            {"total_slots", fx.expected_schedule.total_slots()},
                            {"serial_slots", fx.expected_serial_slots}};

  const std::vector<std::pair<std::string, std::string>> files{
      {"rates.txt", format_rate_matrix(fx.rates)},
      {"topology.json", topo.dump(2) + "\n"},
      {"paths.json", to_json(fx.expected_paths).dump(2) + "\n"},
      {"schedule.json", to_json(fx.expected_schedule).dump(2) + "\n"},
      {"fixture.json", meta.dump(2) + "\n"},
  };
  std::vector<std::filesystem::path> written;
  for (const auto& [file, content] : files) {
    write_file(dir / file, content);
    written.push_back(dir / file);
  }
  return written;
}

}  // namespace mmd2d
