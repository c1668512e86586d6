#include "mmd2d/serialize.hpp"

#include <sstream>
#include <stdexcept>

namespace mmd2d {

using nlohmann::json;

json to_json(const PathSet& paths) {
  return json{{"ap", paths.ap()}, {"n_nodes", paths.n_nodes()}, {"paths", paths.paths()}};
}

PathSet path_set_from_json(const json& j) {
  return PathSet(j.at("ap").get<NodeId>(), j.at("n_nodes").get<int>(),
                 j.at("paths").get<std::vector<Path>>());
}

json to_json(const Schedule& sched) {
  json pairings = json::array();
  for (const auto& p : sched.pairings) {
    json links = json::array();
    for (const auto& l : p.links) {
      links.push_back({l.tx, l.rx});
    }
    pairings.push_back({{"slots", p.slots}, {"links", links}});
  }
  return json{{"total_slots", sched.total_slots()}, {"pairings", pairings}};
}

Schedule schedule_from_json(const json& j) {
  Schedule sched;
  for (const auto& p : j.at("pairings")) {
    Pairing pairing;
    pairing.slots = p.at("slots").get<int>();
    for (const auto& l : p.at("links")) {
      if (!l.is_array() || l.size() != 2) {
        throw std::runtime_error("schedule link must be a [tx, rx] pair");
      }
      pairing.links.push_back(Link{l[0].get<NodeId>(), l[1].get<NodeId>()});
    }
    sched.pairings.push_back(std::move(pairing));
  }
  if (j.contains("total_slots") && j["total_slots"].get<int>() != sched.total_slots()) {
    throw std::runtime_error("schedule total_slots disagrees with its pairings");
  }
  return sched;
}

json to_json(const ExactSolution& sol) {
  json j = to_json(sol.schedule);
  j["objective"] = sol.objective;
  j["proven_optimal"] = sol.proven_optimal;
  j["nodes"] = sol.nodes;
  return j;
}

std::string format_rate_matrix(const RateMatrix& rates) {
  std::ostringstream out;
  for (const auto& row : rates.rows()) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      out << (j ? " " : "") << row[j];
    }
    out << '\n';
  }
  return out.str();
}

RateMatrix parse_rate_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<int>> rows;
  while (std::getline(in, line)) {
    if (auto c = line.find('#'); c != std::string::npos) {
      line.erase(c);
    }
    std::istringstream ls(line);
    std::vector<int> row;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw std::runtime_error("rate matrix: bad entry '" + tok + "' on row " +
                                 std::to_string(rows.size() + 1));
      }
      row.push_back(v);
    }
    if (!row.empty()) {
      rows.push_back(std::move(row));
    }
  }
  try {
    return RateMatrix::from_rows(rows);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("rate matrix: ") + e.what());
  }
}

}  // namespace mmd2d
