#include "mmd2d/experiment.hpp"

#include <atomic>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace mmd2d {

using nlohmann::json;

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw std::invalid_argument("config field '" + field + "': " + why);
}

template <typename T>
void read(const json& section, const std::string& prefix, const char* key, T& out) {
  if (!section.contains(key)) {
    return;
  }
  try {
    out = section.at(key).get<T>();
  } catch (const json::exception& e) {
    bad_field(prefix + "." + key, e.what());
  }
}

const json& section_of(const json& doc, const char* name) {
  static const json empty = json::object();
  if (!doc.contains(name)) {
    return empty;
  }
  if (!doc.at(name).is_object()) {
    bad_field(name, "must be an object");
  }
  return doc.at(name);
}

}  // namespace

void ExperimentSpec::validate() const {
  if (schemes.empty()) {
    bad_field("experiment.schemes", "must not be empty");
  }
  if (loads.empty()) {
    bad_field("experiment.loads", "must not be empty");
  }
  for (double load : loads) {
    if (!(load > 0.0)) {
      bad_field("experiment.loads", "loads must be positive");
    }
  }
  if (traffic_modes.empty()) {
    bad_field("experiment.traffic_modes", "must not be empty");
  }
  if (h_max.empty()) {
    bad_field("experiment.h_max", "must not be empty");
  }
  for (int h : h_max) {
    if (h < 1) {
      bad_field("experiment.h_max", "values must be at least 1");
    }
  }
  if (replications < 1) {
    bad_field("experiment.replications", "must be at least 1");
  }
  if (workers < 0) {
    bad_field("experiment.workers", "must be nonnegative");
  }
  if (!topology.from_file && topology.n_ues < 1) {
    bad_field("topology.n_ues", "must be at least 1");
  }
  if (!(topology.area.width > 0.0) || !(topology.area.height > 0.0)) {
    bad_field("topology.area", "width and height must be positive");
  }
  auto rethrow = [](const char* section, auto&& fn) {
    try {
      fn();
    } catch (const std::invalid_argument& e) {
      bad_field(section, e.what());
    }
  };
  rethrow("radio", [&] { radio.validate(); });
  for (TrafficMode mode : traffic_modes) {
    TrafficConfig t = traffic;
    t.mode = mode;
    rethrow("traffic", [&] { t.validate(); });
  }
  rethrow("frame", [&] { frame.validate(); });
  if (rate_map) {
    rethrow("radio.rate_map", [&] { rate_map->validate(); });
  }
}

ExperimentSpec spec_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw std::invalid_argument("config must be a JSON object");
  }
  ExperimentSpec spec;

  const json& topo = section_of(doc, "topology");
  std::string source = "random";
  read(topo, "topology", "source", source);
  if (source == "file") {
    spec.topology.from_file = true;
    read(topo, "topology", "path", spec.topology.path);
    if (spec.topology.path.empty()) {
      bad_field("topology.path", "required when source is 'file'");
    }
  } else if (source != "random") {
    bad_field("topology.source", "must be 'random' or 'file'");
  }
  read(topo, "topology", "n_ues", spec.topology.n_ues);
  read(topo, "topology", "width", spec.topology.area.width);
  read(topo, "topology", "height", spec.topology.area.height);

  const json& radio = section_of(doc, "radio");
  auto& r = spec.radio;
  read(radio, "radio", "tx_power_mw", r.tx_power_mw);
  read(radio, "radio", "k0", r.k0);
  double tx_gain = 1.0;
  double rx_gain = 1.0;
  read(radio, "radio", "tx_gain", tx_gain);
  read(radio, "radio", "rx_gain", rx_gain);
  r.tx_gain = constant_gain(tx_gain);
  r.rx_gain = constant_gain(rx_gain);
  read(radio, "radio", "path_loss_exp", r.path_loss_exp);
  read(radio, "radio", "mui_factor", r.mui_factor);
  read(radio, "radio", "noise_psd_mw_per_hz", r.noise_psd_mw_per_hz);
  read(radio, "radio", "bandwidth_hz", r.bandwidth_hz);
  if (radio.contains("sinr_thresholds")) {
    std::map<std::string, double> table;
    read(radio, "radio", "sinr_thresholds", table);
    r.sinr_thresholds.clear();
    for (const auto& [rate, gamma_min] : table) {
      try {
        r.sinr_thresholds[std::stoi(rate)] = gamma_min;
      } catch (const std::exception&) {
        bad_field("radio.sinr_thresholds", "keys must be integer rates");
      }
    }
  }
  if (radio.contains("rate_map")) {
    DistanceRateMap map;
    const json& rm = radio.at("rate_map");
    read(rm, "radio.rate_map", "upper_bounds", map.upper_bounds);
    read(rm, "radio.rate_map", "rates", map.rates);
    spec.rate_map = map;
  }

  const json& traffic = section_of(doc, "traffic");
  auto& t = spec.traffic;
  read(traffic, "traffic", "packet_size_bits", t.packet_size_bits);
  read(traffic, "traffic", "rate_ref_bps", t.rate_ref_bps);
  read(traffic, "traffic", "lambda", t.lambda);
  read(traffic, "traffic", "lambda1", t.lambda1);
  read(traffic, "traffic", "lambda2", t.lambda2);
  read(traffic, "traffic", "p1", t.p1);
  read(traffic, "traffic", "p2", t.p2);
  if (traffic.contains("mode")) {
    std::string mode;
    read(traffic, "traffic", "mode", mode);
    try {
      spec.traffic_modes = {traffic_mode_from_string(mode)};
    } catch (const std::invalid_argument&) {
      bad_field("traffic.mode", "must be 'poisson' or 'ipp'");
    }
  }

  const json& frame = section_of(doc, "frame");
  auto& f = spec.frame;
  read(frame, "frame", "slot_us", f.slot_us);
  read(frame, "frame", "t_d_slots", f.t_d_slots);
  read(frame, "frame", "t_push_slots", f.t_push_slots);
  read(frame, "frame", "t_sch_slots", f.t_sch_slots);
  read(frame, "frame", "delay_threshold_slots", f.delay_threshold_slots);
  read(frame, "frame", "horizon_slots", f.horizon_slots);
  if (frame.contains("interference")) {
    std::string mode;
    read(frame, "frame", "interference", mode);
    if (mode == "off") {
      f.interference = InterferenceMode::Off;
    } else if (mode == "sinr") {
      f.interference = InterferenceMode::Sinr;
    } else {
      bad_field("frame.interference", "must be 'off' or 'sinr'");
    }
  }

  const json& exp = section_of(doc, "experiment");
  if (exp.contains("schemes")) {
    std::vector<std::string> names;
    read(exp, "experiment", "schemes", names);
    spec.schemes.clear();
    for (const auto& name : names) {
      try {
        spec.schemes.push_back(scheme_from_string(name));
      } catch (const std::invalid_argument& e) {
        bad_field("experiment.schemes", e.what());
      }
    }
  }
  read(exp, "experiment", "loads", spec.loads);
  if (exp.contains("traffic_modes")) {
    std::vector<std::string> names;
    read(exp, "experiment", "traffic_modes", names);
    spec.traffic_modes.clear();
    for (const auto& name : names) {
      try {
        spec.traffic_modes.push_back(traffic_mode_from_string(name));
      } catch (const std::invalid_argument&) {
        bad_field("experiment.traffic_modes", "entries must be 'poisson' or 'ipp'");
      }
    }
  }
  read(exp, "experiment", "h_max", spec.h_max);
  read(exp, "experiment", "replications", spec.replications);
  read(exp, "experiment", "base_seed", spec.base_seed);
  read(exp, "experiment", "workers", spec.workers);
  read(exp, "experiment", "output", spec.output);
  read(exp, "experiment", "summary", spec.summary);

  spec.validate();
  return spec;
}

ExperimentSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file " + path);
  }
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config " + path + ": " + e.what());
  }
  return spec_from_json(doc);
}

Topology load_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open topology file " + path);
  }
  json doc;
  try {
    doc = json::parse(in);
    Area area;
    if (doc.contains("area")) {
      area.width = doc["area"].value("width", area.width);
      area.height = doc["area"].value("height", area.height);
    }
    std::vector<Node> nodes;
    for (const auto& n : doc.at("nodes")) {
      nodes.push_back(Node{n.at("id").get<NodeId>(),
                           Point{n.at("x").get<double>(), n.at("y").get<double>()},
                           n.value("ap", false)});
    }
    return Topology(std::move(nodes), area);
  } catch (const json::exception& e) {
    throw std::invalid_argument("topology file " + path + ": " + e.what());
  }
}

Topology topology_for(const ExperimentSpec& spec, std::uint64_t seed) {
  if (spec.topology.from_file) {
    return load_topology_file(spec.topology.path);
  }
  return Topology::random_uniform(spec.topology.n_ues, spec.topology.area, derive_seed(seed, 1));
}

RateMatrix rates_for(const ExperimentSpec& spec, const Topology& topo) {
  return rate_matrix_from_topology(
      topo, spec.rate_map ? *spec.rate_map : DistanceRateMap::defaults_for(topo.area()));
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<ResultRow> rows;
  for (TrafficMode mode : spec.traffic_modes) {
    for (double load : spec.loads) {
      for (int h : spec.h_max) {
        for (Scheme scheme : spec.schemes) {
          for (int rep = 0; rep < spec.replications; ++rep) {
            ResultRow row;
            row.scheme = scheme;
            row.mode = mode;
            row.load = load;
            row.h_max = h;
            row.seed = spec.base_seed + static_cast<std::uint64_t>(rep);
            rows.push_back(row);
          }
        }
      }
    }
  }

  auto run_cell = [&spec](ResultRow& row) {
    try {
      const Topology topo = topology_for(spec, row.seed);
      const RateMatrix rates = rates_for(spec, topo);
      TrafficConfig traffic = spec.traffic;
      traffic.mode = row.mode;
      traffic.n_ues = topo.n_ues();
      traffic.slot_us = spec.frame.slot_us;
      traffic = with_load(traffic, row.load);
      FrameConfig frame = spec.frame;
      frame.scheme = row.scheme;
      frame.h_max = row.h_max;
      frame.seed = row.seed;
      row.metrics = run_simulation(topo, rates, spec.radio, traffic, frame);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  unsigned workers = spec.workers > 0 ? static_cast<unsigned>(spec.workers)
                                      : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(rows.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      run_cell(rows[i]);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& th : pool) {
    th.join();
  }
  return rows;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    out += c == '"' ? std::string("\"\"") : std::string(1, c == '\n' ? ' ' : c);
  }
  return out + "\"";
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& row : rows) {
    out << to_string(row.scheme) << ',' << to_string(row.mode) << ',' << row.load << ','
        << row.h_max << ',' << row.seed << ',';
    if (row.error.empty()) {
      out << row.metrics.avg_delay_slots << ',' << row.metrics.throughput_packets << ','
          << row.metrics.d2d_ratio << ',' << row.metrics.discarded_packets << ",";
    } else {
      out << ",,,," << csv_escape(row.error);
    }
    out << '\n';
  }
}

Aggregate aggregate(const std::vector<double>& samples) {
  Aggregate a;
  if (samples.empty()) {
    return a;
  }
  const double n = static_cast<double>(samples.size());
  for (double s : samples) {
    a.mean += s;
  }
  a.mean /= n;
  if (samples.size() < 2) {
    return a;
  }
  double ss = 0.0;
  for (double s : samples) {
    ss += (s - a.mean) * (s - a.mean);
  }
  const double sd = std::sqrt(ss / (n - 1.0));
  const boost::math::students_t dist(n - 1.0);
  a.half_width = boost::math::quantile(boost::math::complement(dist, 0.025)) * sd / std::sqrt(n);
  return a;
}

json summarize(const std::vector<ResultRow>& rows) {
  using Key = std::tuple<std::string, std::string, double, int>;
  std::map<Key, std::vector<const ResultRow*>> groups;
  std::vector<Key> order;
  for (const auto& row : rows) {
    if (!row.error.empty()) {
      continue;
    }
    Key key{to_string(row.scheme), to_string(row.mode), row.load, row.h_max};
    if (!groups.count(key)) {
      order.push_back(key);
    }
    groups[key].push_back(&row);
  }
  json out = json::array();
  for (const auto& key : order) {
    const auto& members = groups[key];
    auto metric = [&](auto field) {
      std::vector<double> xs;
      for (const auto* r : members) {
        xs.push_back(field(r->metrics));
      }
      const auto agg = aggregate(xs);
      return json{{"mean", agg.mean}, {"ci95", agg.half_width}};
    };
    out.push_back({
        {"scheme", std::get<0>(key)},
        {"traffic_mode", std::get<1>(key)},
        {"load", std::get<2>(key)},
        {"h_max", std::get<3>(key)},
        {"replications", members.size()},
        {"avg_delay", metric([](const Metrics& m) { return m.avg_delay_slots; })},
        {"throughput",
         metric([](const Metrics& m) { return static_cast<double>(m.throughput_packets); })},
        {"d2d_ratio", metric([](const Metrics& m) { return m.d2d_ratio; })},
        {"discarded",
         metric([](const Metrics& m) { return static_cast<double>(m.discarded_packets); })},
    });
  }
  return out;
}

}  // namespace mmd2d
