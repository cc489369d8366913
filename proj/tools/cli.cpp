#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qwalk/coinedwalk.hpp"
#include "qwalk/cyclecover.hpp"
#include "qwalk/digraph.hpp"
#include "qwalk/graph_io.hpp"
#include "qwalk/partialwalk.hpp"
#include "qwalk/qlinalg.hpp"
#include "qwalk/random.hpp"

namespace qwalk::cli {

namespace {

// Raised for bad input files or flag values; maps to kExitInputError.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string input;
  std::string coin = "grover";
  std::string coin_policy = "keep";
  std::size_t steps = 10;
  std::optional<int> start;
  std::string state_file;
  std::uint64_t seed = 0;
  std::optional<std::size_t> trajectories;
  bool merge_disjoint = false;
  std::string format;
  double tolerance = kZeroTolerance;
  std::string output;
  // recurrence
  double epsilon = 0.3;
  std::size_t n_max = 100000;
  // gen
  std::string kind;
  int n = 0;
  double density = 0.5;
  std::vector<int> generators{1};
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

DiGraph load_graph(const std::string& path) {
  try {
    return parse_graph(read_file(path));
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

nlohmann::json load_json(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

CoinKind parse_coin(const std::string& text) {
  if (text == "grover") return GroverCoin{};
  if (text == "dft") return DftCoin{};
  if (text.rfind("custom:", 0) == 0) {
    try {
      return CustomCoin{matrix_from_json(load_json(text.substr(7)))};
    } catch (const std::invalid_argument& e) {
      throw InputError(text.substr(7) + ": " + e.what());
    }
  }
  throw InputError("unknown coin '" + text + "' (expected grover, dft or custom:<file>)");
}

// Start state from --state (matrix JSON column) or --start (uniform coin).
QuantumState initial_state(const RunConfig& cfg, int coin_dim, int n) {
  if (!cfg.state_file.empty()) {
    try {
      const ComplexMatrix m = matrix_from_json(load_json(cfg.state_file));
      if (m.cols() != 1 || m.rows() != static_cast<Eigen::Index>(coin_dim) * n) {
        throw InputError(cfg.state_file + ": expected a " + std::to_string(coin_dim * n) +
                         "x1 state vector");
      }
      return QuantumState(m.col(0));
    } catch (const std::invalid_argument& e) {
      throw InputError(cfg.state_file + ": " + e.what());
    }
  }
  const int v = cfg.start.value_or(0);
  if (v < 0 || v >= n) throw InputError("start vertex " + std::to_string(v) + " out of range");
  return uniform_coin_state(coin_dim, n, v);
}

void write_output(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw InputError("cannot write '" + cfg.output + "'");
  file << text;
}

std::string arc_list(const std::vector<Arc>& arcs) {
  std::string s;
  for (const Arc& a : arcs) s += (s.empty() ? "" : " ") + to_string(a);
  return s;
}

nlohmann::json rounded(const std::vector<std::vector<double>>& distributions) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : distributions) {
    nlohmann::json r = nlohmann::json::array();
    for (double p : row) r.push_back(round_to_15_digits(p));
    out.push_back(std::move(r));
  }
  return out;
}

void emit_distributions(const RunConfig& cfg, std::ostream& out,
                        const std::vector<std::vector<double>>& distributions) {
  if (cfg.format == "json") {
    write_output(cfg, out, nlohmann::json{{"distributions", rounded(distributions)}}.dump() + "\n");
    return;
  }
  std::ostringstream csv;
  write_distribution_csv(csv, distributions);
  write_output(cfg, out, csv.str());
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const DiGraph g = load_graph(cfg.input);
  const ReversiblePartition partition = reversible_partition(g);
  const bool reversible = partition.irreversible_arcs.empty();

  if (cfg.format == "json") {
    nlohmann::json arcs = nlohmann::json::array();
    for (const Arc& a : g.arcs()) {
      if (a.is_loop()) continue;
      arcs.push_back({{"from", a.from},
                      {"to", a.to},
                      {"reversible", partition.block_of[static_cast<std::size_t>(a.from)] ==
                                         partition.block_of[static_cast<std::size_t>(a.to)]}});
    }
    nlohmann::json irreversible = nlohmann::json::array();
    for (const Arc& a : partition.irreversible_arcs) irreversible.push_back({a.from, a.to});
    const nlohmann::json report{{"reversible", reversible},
                                {"arcs", std::move(arcs)},
                                {"blocks", partition.blocks},
                                {"irreversible_arcs", std::move(irreversible)},
                                {"adjacency", adjacency_json(g)}};
    write_output(cfg, out, report.dump(2) + "\n");
  } else {
    std::ostringstream text;
    text << (reversible ? "reversible" : "irreversible") << '\n';
    for (const Arc& a : g.arcs()) {
      if (a.is_loop()) continue;
      const bool ok = partition.block_of[static_cast<std::size_t>(a.from)] ==
                      partition.block_of[static_cast<std::size_t>(a.to)];
      text << "arc " << to_string(a) << ' ' << (ok ? "reversible" : "irreversible") << '\n';
    }
    text << "blocks";
    for (const auto& block : partition.blocks) {
      text << " {";
      for (std::size_t i = 0; i < block.size(); ++i) text << (i ? "," : "") << block[i];
      text << '}';
    }
    text << '\n';
    write_output(cfg, out, text.str());
  }
  return reversible ? kExitOk : kExitIrreversible;
}

// Builds the walk for build/simulate/recurrence, or reports irreversibility.
std::optional<WalkOperator> walk_for(const RunConfig& cfg, const DiGraph& g, std::ostream& err) {
  if (!(cfg.tolerance > 0.0)) throw InputError("--tolerance must be positive");
  WalkOptions options{parse_coin(cfg.coin), cfg.merge_disjoint, cfg.tolerance};
  try {
    return build_walk(g, options);
  } catch (const GraphError& e) {
    err << "error: graph is irreversible; irreversible arcs: " << arc_list(e.arcs()) << '\n'
        << "use 'qwalk partial' for graphs with irreversible arcs\n";
    return std::nullopt;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

int cmd_build(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const DiGraph g = load_graph(cfg.input);
  const auto w = walk_for(cfg, g, err);
  if (!w) return kExitIrreversible;
  nlohmann::json doc = walk_to_json(*w);
  doc["metadata"]["coin_kind"] = coin_name(parse_coin(cfg.coin));
  doc["metadata"]["valid"] = validate_walk(*w, g, cfg.tolerance);
  doc["metadata"]["unitary"] = is_unitary(w->matrix(), kZeroTolerance);
  write_output(cfg, out, doc.dump() + "\n");
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const DiGraph g = load_graph(cfg.input);
  const auto w = walk_for(cfg, g, err);
  if (!w) return kExitIrreversible;
  const QuantumState s0 = initial_state(cfg, w->coin_dim(), w->vertex_count());
  emit_distributions(cfg, out, simulate(*w, s0, cfg.steps));
  return kExitOk;
}

int cmd_recurrence(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const DiGraph g = load_graph(cfg.input);
  const auto w = walk_for(cfg, g, err);
  if (!w) return kExitIrreversible;
  const QuantumState a = initial_state(cfg, w->coin_dim(), w->vertex_count());
  std::optional<std::size_t> found;
  try {
    found = recurrence_search(*w, a, cfg.epsilon, cfg.n_max);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (found) {
    out << "found n=" << *found << '\n';
    return kExitOk;
  }
  out << "not found within n_max=" << cfg.n_max << '\n';
  return kExitBudgetExhausted;
}

PartialWalk partial_walk_for(const RunConfig& cfg, const DiGraph& g) {
  if (!(cfg.tolerance > 0.0)) throw InputError("--tolerance must be positive");
  try {
    PartialWalkOptions options{parse_coin(cfg.coin), parse_coin_policy(cfg.coin_policy),
                               cfg.merge_disjoint, cfg.tolerance};
    return build_partial_walk(g, options);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

int cmd_partial_describe(const RunConfig& cfg, std::ostream& out) {
  const PartialWalk pw = partial_walk_for(cfg, load_graph(cfg.input));
  write_output(cfg, out, describe_json(pw).dump(2) + "\n");
  return kExitOk;
}

int cmd_partial_simulate(const RunConfig& cfg, std::ostream& out) {
  const PartialWalk pw = partial_walk_for(cfg, load_graph(cfg.input));
  const QuantumState s0 = initial_state(cfg, pw.coin_dim(), pw.vertex_count());

  if (!cfg.trajectories) {
    emit_distributions(cfg, out, evolve(pw, DensityMatrix::pure(s0), cfg.steps));
    return kExitOk;
  }

  if (*cfg.trajectories < 1) throw InputError("--trajectories must be at least 1");
  std::ostringstream text;
  nlohmann::json runs = nlohmann::json::array();
  if (cfg.format != "json") text << "trajectory,step,outcome,vertex\n";
  for (std::size_t k = 0; k < *cfg.trajectories; ++k) {
    const std::uint64_t seed = derive_seed(cfg.seed, k);
    const auto record = sample_trajectory(pw, s0, cfg.steps, seed);
    Rng readout(derive_seed(seed, 0));
    nlohmann::json run = nlohmann::json::array();
    for (std::size_t t = 0; t < record.size(); ++t) {
      const Vertex v = sample_vertex(record[t].state, pw.coin_dim(), pw.vertex_count(), readout);
      if (cfg.format == "json") {
        run.push_back({{"step", t + 1}, {"outcome", record[t].outcome}, {"vertex", v}});
      } else {
        text << k << ',' << t + 1 << ',' << record[t].outcome << ',' << v << '\n';
      }
    }
    runs.push_back(std::move(run));
  }
  if (cfg.format == "json") text << nlohmann::json{{"trajectories", std::move(runs)}}.dump() << '\n';
  write_output(cfg, out, text.str());
  return kExitOk;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  DiGraph g;
  try {
    if (cfg.kind == "cycle") {
      g = directed_cycle(cfg.n);
    } else if (cfg.kind == "complete") {
      g = complete_graph(cfg.n);
    } else if (cfg.kind == "cayley") {
      g = cayley_zn(cfg.n, cfg.generators);
    } else if (cfg.kind == "dag") {
      g = random_dag(cfg.n, cfg.density, cfg.seed);
    } else if (cfg.kind == "random") {
      g = random_digraph(cfg.n, cfg.density, cfg.seed);
    } else {
      throw InputError("unknown graph kind '" + cfg.kind +
                       "' (expected cycle, complete, cayley, dag or random)");
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  write_output(cfg, out, format_graph(g));
  return kExitOk;
}

void add_walk_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--coin", cfg.coin, "Coin: grover, dft or custom:<matrix.json>");
  cmd->add_flag("--merge-disjoint", cfg.merge_disjoint,
                "Combine cycles with disjoint supports into one coin state");
  cmd->add_option("--tolerance", cfg.tolerance, "Zero threshold for amplitudes");
}

void add_start_flags(CLI::App* cmd, RunConfig& cfg) {
  auto* start = cmd->add_option("--start", cfg.start, "Start vertex (uniform coin state)");
  auto* state = cmd->add_option("--state", cfg.state_file, "Start state as a matrix JSON column");
  start->excludes(state);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Quantum walks on directed graphs", "qwalk"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "Classify arcs and report the reversible blocks");
  check->add_option("input", cfg.input, "Edge-list file")->required();
  check->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  check->add_option("-o,--output", cfg.output, "Write to a file instead of stdout");

  auto* build = app.add_subcommand("build", "Emit the coined walk operator as JSON");
  build->add_option("input", cfg.input, "Edge-list file")->required();
  add_walk_flags(build, cfg);
  build->add_option("-o,--output", cfg.output, "Write to a file instead of stdout");

  auto* sim = app.add_subcommand("simulate", "Per-step vertex distributions of the coined walk");
  sim->add_option("input", cfg.input, "Edge-list file")->required();
  add_walk_flags(sim, cfg);
  add_start_flags(sim, cfg);
  sim->add_option("--steps", cfg.steps, "Number of walk steps");
  sim->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sim->add_option("-o,--output", cfg.output, "Write to a file instead of stdout");

  auto* partial = app.add_subcommand("partial", "Measurement-interleaved walk on any digraph");
  partial->require_subcommand(1);
  auto* describe = partial->add_subcommand("describe", "Partition, augmented graphs, projectors");
  describe->add_option("input", cfg.input, "Edge-list file")->required();
  add_walk_flags(describe, cfg);
  describe->add_option("--coin-policy", cfg.coin_policy, "keep or reset");
  describe->add_option("-o,--output", cfg.output, "Write to a file instead of stdout");
  auto* psim = partial->add_subcommand("simulate", "Channel evolution or sampled trajectories");
  psim->add_option("input", cfg.input, "Edge-list file")->required();
  add_walk_flags(psim, cfg);
  add_start_flags(psim, cfg);
  psim->add_option("--coin-policy", cfg.coin_policy, "keep or reset");
  psim->add_option("--steps", cfg.steps, "Number of walk steps");
  psim->add_option("--trajectories", cfg.trajectories,
                   "Sample this many trajectories instead of the exact channel");
  psim->add_option("--seed", cfg.seed, "Seed for trajectory sampling");
  psim->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  psim->add_option("-o,--output", cfg.output, "Write to a file instead of stdout");

  auto* rec = app.add_subcommand("recurrence", "Search for the first return |<a|W^n|a>| > 1-eps");
  rec->add_option("input", cfg.input, "Edge-list file")->required();
  add_walk_flags(rec, cfg);
  add_start_flags(rec, cfg);
  rec->add_option("--epsilon", cfg.epsilon, "Recurrence threshold");
  rec->add_option("--n-max", cfg.n_max, "Search budget");

  auto* gen = app.add_subcommand("gen", "Write a generated graph as an edge list");
  gen->add_option("kind", cfg.kind, "cycle, complete, cayley, dag or random")->required();
  gen->add_option("--n", cfg.n, "Vertex count")->required();
  gen->add_option("--density", cfg.density, "Arc probability for dag/random");
  gen->add_option("--seed", cfg.seed, "Seed for dag/random");
  gen->add_option("--generators", cfg.generators, "Generators for cayley")->delimiter(',');
  gen->add_option("-o,--output", cfg.output, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (*check) return cmd_check(cfg, out);
    if (*build) return cmd_build(cfg, out, err);
    if (*sim) return cmd_simulate(cfg, out, err);
    if (*describe) return cmd_partial_describe(cfg, out);
    if (*psim) return cmd_partial_simulate(cfg, out);
    if (*rec) return cmd_recurrence(cfg, out, err);
    if (*gen) return cmd_gen(cfg, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace qwalk::cli
