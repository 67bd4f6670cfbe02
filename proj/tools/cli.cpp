#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "manifest.hpp"
#include "trnrp/evaluation.hpp"
#include "trnrp/exact.hpp"
#include "trnrp/instance_gen.hpp"
#include "trnrp/instance_io.hpp"
#include "trnrp/learner.hpp"
#include "trnrp/version.hpp"

namespace trnrp::cli {
namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::vector<double> parse_dims(const std::string& text) {
  std::vector<double> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      dims.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad --dims value '" + text + "'");
    }
  }
  return dims;
}

Region make_region(const std::string& shape_text, const std::string& dims_text) {
  RegionShape shape;
  try {
    shape = parse_region_shape(shape_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::vector<double> dims = parse_dims(dims_text);
  auto need = [&](std::size_t count) {
    if (dims.size() != count) {
      throw UsageError("--shape " + shape_text + " expects " + std::to_string(count) +
                       " comma-separated dimension(s)");
    }
  };
  Region region;
  switch (shape) {
    case RegionShape::kSquare:
      need(1);
      region = Region::square(dims[0]);
      break;
    case RegionShape::kRectangle:
      need(2);
      region = Region::rectangle(dims[0], dims[1]);
      break;
    case RegionShape::kCircle:
      need(1);
      region = Region::circle(dims[0]);
      break;
  }
  try {
    region.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return region;
}

struct GenArgs {
  int nodes = 20;
  std::string shape = "square";
  std::string dims = "10";
  int degree = 3;
  int reduce = 0;
  std::uint64_t seed = 1;
  double s = 0.0;
  double p = 0.5;
  std::string out;
};

struct TrainArgs {
  std::string instance;
  std::string mode = "full";
  std::string prune = "on";
  double gamma = 0.5;
  std::uint64_t seed = 1;
  std::uint64_t max_iters = TrainConfig{}.max_iterations;
  std::uint64_t warmup = TrainConfig{}.warmup_iterations;
  std::uint64_t batch = TrainConfig{}.batch_size;
  double exploration = TrainConfig{}.exploration_constant;
  std::string out;
  bool quiet = false;
};

struct OracleArgs {
  std::string instance;
  std::string state;
};

struct EvalArgs {
  std::string instance;
  std::vector<std::string> tables;
  std::string policies;
  std::size_t realizations = 1000;
  std::uint64_t seed = 1;
  std::string out;
};

struct RunArgs {
  std::string manifest;
  std::string out_dir;
};

struct InspectArgs {
  std::string table;
  std::size_t top = 10;
};

int do_gen(const GenArgs& a, std::ostream& out) {
  GeneratorConfig g;
  g.region = make_region(a.shape, a.dims);
  g.nodes = a.nodes;
  g.degree_bound = a.degree;
  g.reduce = a.reduce;
  g.seed = a.seed;
  g.repair_time = a.s;
  g.fault_prob = a.p;
  std::optional<Instance> generated;
  try {
    generated.emplace(generate_instance(g));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Instance& inst = *generated;
  save_instance(inst, a.out);
  out << "wrote " << a.out << ": n=" << inst.node_count() << " depth=" << inst.depth()
      << " reduced=" << inst.info().reduce_applied << "/" << inst.info().reduce_requested << "\n";
  return kExitOk;
}

int do_train(const TrainArgs& a, std::ostream& out) {
  const Instance inst = load_instance(a.instance);
  TrainConfig c;
  c.stop_threshold = a.gamma;
  c.seed = a.seed;
  c.max_iterations = a.max_iters;
  c.warmup_iterations = a.warmup;
  c.batch_size = a.batch;
  c.exploration_constant = a.exploration;
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  AggregationMode mode;
  try {
    mode = parse_aggregation_mode(a.mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  ProgressCallback progress;
  if (!a.quiet) {
    progress = [&out](const BatchProgress& b) {
      out << "iter=" << b.iterations << " keys=" << b.keys << " new=" << b.new_keys
          << " delta=" << fmt("%.6g", b.delta) << "\n";
    };
  }
  const ValueTable table = train(inst, c, mode, a.prune == "on", progress);
  save_table(table, a.out);
  const TableMetadata& m = table.metadata();
  out << "wrote " << a.out << ": mode=" << to_string(mode) << " iterations=" << m.iterations
      << " keys=" << table.size() << " converged=" << (m.converged ? "yes" : "no")
      << " seconds=" << fmt("%.2f", m.wall_seconds) << "\n";
  return kExitOk;
}

int do_oracle(const OracleArgs& a, std::ostream& out) {
  const Instance inst = load_instance(a.instance);
  BeliefState state = initial_state(inst);
  if (!a.state.empty()) {
    try {
      state = parse_belief_state(a.state);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  if (inst.node_count() > ExactSolver::kDefaultSizeLimit) {
    throw UsageError("oracle is limited to " + std::to_string(ExactSolver::kDefaultSizeLimit) +
                     " nodes, instance has " + std::to_string(inst.node_count()));
  }
  if (auto why = feasibility_violation(state, inst)) throw UsageError("infeasible state: " + *why);
  ExactSolver solver(inst);
  out << "H\t" << fmt("%.10g", solver.value(state)) << "\n";
  for (NodeId act : actions(state)) {
    out << "Q\t" << act << "\t" << fmt("%.10g", solver.q_value(state, act)) << "\n";
  }
  if (!is_terminal(state)) out << "best\t" << solver.best_action(state) << "\n";
  return kExitOk;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> names;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) names.push_back(item);
  }
  return names;
}

int do_eval(const EvalArgs& a, std::ostream& out) {
  const Instance inst = load_instance(a.instance);
  std::vector<std::shared_ptr<const ValueTable>> tables;
  for (const std::string& path : a.tables) {
    tables.push_back(std::make_shared<const ValueTable>(load_table(path)));
  }
  std::vector<std::string> names = split_names(a.policies);
  if (names.empty()) {
    for (const auto& t : tables) names.push_back(policy_label(t->mode(), t->metadata().prune));
    names.push_back("ps");
    names.push_back("nn");
  }
  const std::vector<Policy> policies = make_policies(names, inst, tables);
  const EvaluationReport report = evaluate(inst, policies, a.realizations, a.seed);
  const std::string csv = report_to_csv(report);
  if (a.out.empty()) {
    out << csv;
  } else {
    write_text_file(a.out, csv);
    for (const PolicyResult& r : report.results) {
      out << r.name << "\tmean=" << fmt("%.4f", r.mean_total) << "\tgap=" << fmt("%.3f", r.gap.mean)
          << "% [" << fmt("%.3f", r.gap.ci_lo) << ", " << fmt("%.3f", r.gap.ci_hi) << "]\n";
    }
    out << "wrote " << a.out << "\n";
  }
  return kExitOk;
}

int do_run(const RunArgs& a, std::ostream& out) {
  const std::filesystem::path path(a.manifest);
  const std::string text = read_text_file(path);
  Manifest m = parse_manifest(text, path.parent_path());
  if (!a.out_dir.empty()) m.output_dir = a.out_dir;
  out << "manifest " << path.string() << " seed=" << m.seed << " version=" << kVersion << "\n";
  const std::size_t files = run_manifest(m, out);
  out << "done: " << files << " files in " << m.output_dir.string() << "\n";
  return kExitOk;
}

int do_inspect(const InspectArgs& a, std::ostream& out) {
  const ValueTable table = load_table(a.table);
  const TableMetadata& m = table.metadata();
  out << "mode\t" << to_string(table.mode()) << "\n";
  out << "keys\t" << table.size() << "\n";
  out << "iterations\t" << m.iterations << "\n";
  out << "nodes\t" << m.node_count << "\n";
  out << "prune\t" << (m.prune ? "on" : "off") << "\n";
  out << "seed\t" << m.config.seed << "\n";
  out << "converged\t" << (m.converged ? "yes" : "no") << "\n";
  out << "batches\t" << m.batch_deltas.size() << "\n";

  auto entries = table.sorted_entries();
  std::stable_sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
    return x.second.visits > y.second.visits;
  });
  const std::size_t shown = std::min(a.top, entries.size());
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& [key, e] = entries[i];
    out << "top\t" << e.visits << "\t" << fmt("%.6g", e.value) << "\t" << describe_key(key, table.mode())
        << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Crew routing for power-network restoration under uncertain faults", "trnrp"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--nodes", gen.nodes, "Number of demand nodes")->check(CLI::Range(1, kMaxNodes));
  gen_cmd->add_option("--shape", gen.shape, "square, rect or circle");
  gen_cmd->add_option("--dims", gen.dims, "Side, width,height or radius");
  gen_cmd->add_option("--degree", gen.degree, "Degree bound of the power tree")->check(CLI::Range(2, 64));
  gen_cmd->add_option("--reduce", gen.reduce, "Nodes to re-parent to their grandparent")
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--s", gen.s, "Repair time")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--p", gen.p, "Fault probability")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--out", gen.out, "Instance file")->required();

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "Learn a value table");
  train_cmd->add_option("--instance", tr.instance)->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--mode", tr.mode, "full, sa1, sa2 or sa3");
  train_cmd->add_option("--prune", tr.prune, "on or off")->check(CLI::IsMember({"on", "off"}));
  train_cmd->add_option("--gamma", tr.gamma, "Stop threshold");
  train_cmd->add_option("--seed", tr.seed);
  train_cmd->add_option("--max-iters", tr.max_iters);
  train_cmd->add_option("--warmup", tr.warmup);
  train_cmd->add_option("--batch", tr.batch);
  train_cmd->add_option("--exploration", tr.exploration, "Exploration constant");
  train_cmd->add_flag("--quiet", tr.quiet, "No per-batch progress");
  train_cmd->add_option("--out", tr.out, "Table file")->required();

  OracleArgs orc;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact values on a small instance");
  oracle_cmd->add_option("--instance", orc.instance)->required()->check(CLI::ExistingFile);
  oracle_cmd->add_option("--state", orc.state, "e.g. \"L=0 U+={} U0={} U1={1} Up={2,3}\"");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Compare policies on common realizations");
  eval_cmd->add_option("--instance", ev.instance)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--table", ev.tables, "Table file (repeatable)")->check(CLI::ExistingFile);
  eval_cmd->add_option("--policies", ev.policies, "Comma list: snrr,nrr,sa1,sa2,sa3,ps,nn,oracle");
  eval_cmd->add_option("--realizations", ev.realizations)->check(CLI::PositiveNumber);
  eval_cmd->add_option("--seed", ev.seed);
  eval_cmd->add_option("--out", ev.out, "CSV file (stdout when omitted)");

  RunArgs rn;
  auto* run_cmd = app.add_subcommand("run", "Execute an experiment manifest");
  run_cmd->add_option("manifest", rn.manifest)->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out-dir", rn.out_dir, "Override the manifest output directory");

  InspectArgs ins;
  auto* inspect_cmd = app.add_subcommand("inspect", "Summarise a table file");
  inspect_cmd->add_option("table", ins.table)->required()->check(CLI::ExistingFile);
  inspect_cmd->add_option("--top", ins.top, "Most-visited keys to list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return do_gen(gen, out);
    if (*train_cmd) return do_train(tr, out);
    if (*oracle_cmd) return do_oracle(orc, out);
    if (*eval_cmd) return do_eval(ev, out);
    if (*run_cmd) return do_run(rn, out);
    if (*inspect_cmd) return do_inspect(ins, out);
  } catch (const UsageError& e) {
    err << "trnrp: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "trnrp: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace trnrp::cli
