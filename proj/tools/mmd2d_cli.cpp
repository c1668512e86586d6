// mmd2d: scheduling and simulation front end.
//
//   mmd2d simulate --config exp.json [--out results.csv]
//   mmd2d schedule --rates C.txt --hmax 3 --demand 6
//   mmd2d milp export --rates C.txt --hmax 3 --demand 6 --out p1.lp
//   mmd2d milp solve --rates C.txt --hmax 3 --demand 6
//   mmd2d fixture paper-6ue --out fixtures/

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mmd2d/baselines.hpp"
#include "mmd2d/ct_scheduler.hpp"
#include "mmd2d/exact_solver.hpp"
#include "mmd2d/experiment.hpp"
#include "mmd2d/fixture.hpp"
#include "mmd2d/milp.hpp"
#include "mmd2d/path_select.hpp"
#include "mmd2d/serialize.hpp"

namespace {

using namespace mmd2d;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + out_path);
  }
  out << content;
}

InterferenceMode parse_interference(const std::string& s) {
  if (s == "off") {
    return InterferenceMode::Off;
  }
  if (s == "sinr") {
    return InterferenceMode::Sinr;
  }
  throw std::runtime_error("--interference must be 'off' or 'sinr'");
}

// Inputs shared by the one-shot subcommands.
struct OneShot {
  std::string rates_file;
  std::string topology_file;
  std::string paths_file;
  std::string config_file;
  int ap = -1;
  int h_max = 0;
  int demand = 6;
  std::string interference = "off";
  std::string out;

  void attach(CLI::App* cmd) {
    cmd->add_option("--rates", rates_file, "Rate matrix file (n rows of n integers)");
    cmd->add_option("--topology", topology_file,
                    "Topology JSON with coordinates (rates derived from distances when --rates "
                    "is absent; required for --interference sinr)");
    cmd->add_option("--paths", paths_file, "Use these paths (JSON) instead of path selection");
    cmd->add_option("--config", config_file, "Config file supplying radio parameters");
    cmd->add_option("--ap", ap, "AP node id (default: last node)");
    cmd->add_option("--hmax", h_max, "Maximum hops per path (default: structural bound)");
    cmd->add_option("--demand,-d", demand, "Packets per UE in the frame")->check(CLI::NonNegativeNumber);
    cmd->add_option("--interference", interference, "off | sinr")
        ->check(CLI::IsMember({"off", "sinr"}));
    cmd->add_option("--out", out, "Output file (default: stdout)");
  }

  struct Resolved {
    Topology topo;
    RateMatrix rates;
    RadioParams radio;
    PathSet paths;
    FeasibilityFn feasible;
    InterferenceMode mode;
  };

  Resolved resolve() const {
    RadioParams radio;
    std::optional<DistanceRateMap> map;
    if (!config_file.empty()) {
      const auto spec = load_spec(config_file);
      radio = spec.radio;
      map = spec.rate_map;
    }
    std::optional<Topology> topo;
    if (!topology_file.empty()) {
      topo = load_topology_file(topology_file);
    }
    RateMatrix rates;
    if (!rates_file.empty()) {
      rates = parse_rate_matrix(read_file(rates_file));
    } else if (topo) {
      rates = rate_matrix_from_topology(*topo, map ? *map : DistanceRateMap::defaults_for(topo->area()));
    } else {
      throw std::runtime_error("need --rates or --topology");
    }
    if (!topo) {
      topo = Topology::labels_only(rates.size(), ap >= 0 ? ap : rates.size() - 1);
    } else if (topo->size() != rates.size()) {
      throw std::runtime_error("topology and rate matrix disagree on the node count");
    }
    const auto mode = parse_interference(interference);
    auto feasible = make_feasibility(mode, radio, rates, *topo);
    const int h = h_max > 0 ? h_max : max_hops_bound(topo->n_ues());
    if (h > max_hops_bound(topo->n_ues())) {
      std::cerr << "warning: --hmax " << h << " exceeds the structural bound "
                << max_hops_bound(topo->n_ues()) << "; clamping\n";
    }
    PathSet paths = paths_file.empty()
                        ? select_paths(rates, *topo, h)
                        : path_set_from_json(nlohmann::json::parse(read_file(paths_file)));
    return {*topo, rates, radio, std::move(paths), std::move(feasible), mode};
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Popular-content downloading scheduler and simulator for directional mmWave cells"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run an experiment sweep from a config file");
  std::string config;
  std::string sim_out;
  std::string summary_out;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> schemes;
  std::vector<int> hmax;
  std::vector<double> loads;
  std::string sim_interference;
  std::optional<int> replications;
  std::optional<int> workers;
  sim->add_option("--config", config, "Experiment config (JSON)")->required();
  sim->add_option("--out", sim_out, "CSV output (overrides experiment.output; '-' for stdout)");
  sim->add_option("--summary", summary_out, "JSON summary with means and 95% CIs");
  sim->add_option("--seed", seed, "Base seed");
  sim->add_option("--scheme", schemes, "Schemes to run (PCDS, FDMAC-H, SBTS)");
  sim->add_option("--hmax", hmax, "H_max values");
  sim->add_option("--load", loads, "Traffic loads");
  sim->add_option("--interference", sim_interference, "off | sinr")
      ->check(CLI::IsMember({"off", "sinr"}));
  sim->add_option("--replications", replications, "Replications per cell");
  sim->add_option("--workers", workers, "Worker threads (0: all cores)");

  // schedule
  auto* sched_cmd = app.add_subcommand("schedule", "Select paths and schedule one frame");
  OneShot sched_args;
  sched_args.attach(sched_cmd);
  std::string scheme_name = "PCDS";
  sched_cmd->add_option("--scheme", scheme_name, "PCDS | FDMAC-H | SBTS");

  // milp
  auto* milp = app.add_subcommand("milp", "Exact formulation tools");
  milp->require_subcommand(1);
  auto* milp_export = milp->add_subcommand("export", "Write the linearized instance in LP format");
  OneShot export_args;
  export_args.attach(milp_export);
  int pairings = 0;
  milp_export->add_option("--pairings,-K", pairings, "Pairing bound K (default: longest path + |U|)");
  auto* milp_solve = milp->add_subcommand("solve", "Solve the instance exactly (branch and bound)");
  OneShot solve_args;
  solve_args.attach(milp_solve);
  std::uint64_t node_limit = ExactOptions{}.node_limit;
  milp_solve->add_option("--node-limit", node_limit, "Search node budget");

  // fixture
  auto* fixture = app.add_subcommand("fixture", "Write golden files for a worked example");
  std::string fixture_name;
  std::string fixture_dir = ".";
  fixture->add_option("name", fixture_name, "Fixture name")->required();
  fixture->add_option("--out", fixture_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      auto spec = load_spec(config);
      if (seed) {
        spec.base_seed = *seed;
      }
      if (!schemes.empty()) {
        spec.schemes.clear();
        for (const auto& s : schemes) {
          spec.schemes.push_back(scheme_from_string(s));
        }
      }
      if (!hmax.empty()) {
        spec.h_max = hmax;
      }
      if (!loads.empty()) {
        spec.loads = loads;
      }
      if (!sim_interference.empty()) {
        spec.frame.interference = parse_interference(sim_interference);
      }
      if (replications) {
        spec.replications = *replications;
      }
      if (workers) {
        spec.workers = *workers;
      }
      if (!sim_out.empty()) {
        spec.output = sim_out;
      }
      if (!summary_out.empty()) {
        spec.summary = summary_out;
      }
      spec.validate();
      for (int h : spec.h_max) {
        if (!spec.topology.from_file && h > max_hops_bound(spec.topology.n_ues)) {
          std::cerr << "warning: h_max " << h << " exceeds the structural bound "
                    << max_hops_bound(spec.topology.n_ues) << " and will be clamped\n";
        }
      }
      const auto rows = run_experiment(spec);
      std::ostringstream csv;
      write_csv(csv, rows);
      emit(spec.output, csv.str());
      if (!spec.summary.empty()) {
        emit(spec.summary, summarize(rows).dump(2) + "\n");
      }
      int failures = 0;
      for (const auto& row : rows) {
        if (!row.error.empty()) {
          std::cerr << "cell " << to_string(row.scheme) << "/" << to_string(row.mode) << "/load "
                    << row.load << "/seed " << row.seed << " failed: " << row.error << '\n';
          ++failures;
        }
      }
      return failures == 0 ? 0 : 2;
    }

    if (sched_cmd->parsed()) {
      const auto in = sched_args.resolve();
      const Scheme scheme = scheme_from_string(scheme_name);
      Schedule sched;
      const int d = sched_args.demand;
      if (scheme == Scheme::Sbts) {
        sched = sbts_schedule(in.rates, in.topo, d);
      } else if (d > 0) {
        sched = scheme == Scheme::Pcds ? schedule_concurrent(in.paths, in.rates, d, in.feasible)
                                       : fdmach_schedule(in.paths, in.rates, d, in.feasible);
      }
      nlohmann::json out{{"scheme", to_string(scheme)},
                         {"demand", d},
                         {"paths", to_json(scheme == Scheme::Sbts ? star_paths(in.topo) : in.paths)},
                         {"schedule", to_json(sched)}};
      emit(sched_args.out, out.dump(2) + "\n");
      return 0;
    }

    if (milp_export->parsed()) {
      const auto in = export_args.resolve();
      const int k = pairings > 0 ? pairings : default_pairing_bound(in.paths);
      const auto inst =
          build_milp(in.paths, in.rates, export_args.demand, in.radio, in.topo, k, in.mode);
      for (const auto& w : inst.warnings) {
        std::cerr << "warning: " << w << '\n';
      }
      emit(export_args.out, export_lp(inst));
      return 0;
    }

    if (milp_solve->parsed()) {
      const auto in = solve_args.resolve();
      ExactOptions options;
      options.node_limit = node_limit;
      const auto sol = solve_exact(in.paths, in.rates, solve_args.demand, in.feasible, options);
      nlohmann::json out = to_json(sol);
      out["paths"] = to_json(in.paths);
      emit(solve_args.out, out.dump(2) + "\n");
      if (!sol.proven_optimal) {
        std::cerr << "warning: node budget exhausted; objective is an upper bound\n";
      }
      return 0;
    }

    if (fixture->parsed()) {
      for (const auto& path : export_fixture(fixture_name, fixture_dir)) {
        std::cout << path.string() << '\n';
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
