// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "trnrp/aggregation.hpp"
#include "trnrp/evaluation.hpp"
#include "trnrp/exact.hpp"
#include "trnrp/instance_gen.hpp"
#include "trnrp/instance_io.hpp"
#include "trnrp/kopt.hpp"
#include "trnrp/learner.hpp"
#include "trnrp/mdp.hpp"
#include "trnrp/policy.hpp"
#include "trnrp/value_table.hpp"

#ifdef TRNRP_HAVE_CLI
#include "cli.hpp"
#endif

namespace {

using namespace trnrp;
using Clock = std::chrono::steady_clock;

constexpr double kSumTolerance = 1e-12;
constexpr double kOracleRelTolerance = 1e-9;
constexpr double kLearnerGap = 0.02;
constexpr double kPruneTolerance = 1e-9;
constexpr double kKeyRatio = 0.1;
constexpr std::size_t kBenchmarkRealizations = 1000;

constexpr double kLimitTransitionsSeconds = 30.0;
constexpr double kLimitOracleSeconds = 120.0;
constexpr double kLimitLearnerSeconds = 600.0;

// The 20-node instance used for key counts and the p-trend: square region of
// side 10, seed 13, which generates a tree of depth 11.
constexpr std::uint64_t kDeepSeed = 13;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

Instance small_instance(std::uint64_t seed, int n, double s, double p) {
  return testing::random_instance(n, seed, s, p);
}

Instance twenty_node(std::uint64_t seed, double s, double p) {
  GeneratorConfig g;
  g.nodes = 20;
  g.seed = seed;
  g.repair_time = s;
  g.fault_prob = p;
  return generate_instance(g);
}

Outcome transition_normalization() {
  const auto start = Clock::now();
  Rng rng(101);
  std::uniform_int_distribution<int> size(2, 12);
  int pairs = 0;
  int infeasible = 0;
  double worst = 0.0;
  std::uint64_t seed = 1;
  while (pairs < 200) {
    const Instance inst = small_instance(seed++, size(rng), 1.0, 0.1 + 0.8 * std::generate_canonical<double, 53>(rng));
    for (int trial = 0; trial < 5 && pairs < 200; ++trial) {
      const BeliefState s = testing::random_feasible_state(inst, rng);
      if (s.faulty.empty()) continue;
      const std::vector<NodeId> options = s.faulty.to_vector();
      std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
      const NodeId a = options[pick(rng)];
      double sum = 0.0;
      for (const auto& o : enumerate_transitions(s, a, inst)) {
        sum += o.probability;
        if (!is_feasible(o.next, inst)) ++infeasible;
      }
      worst = std::max(worst, std::abs(sum - 1.0));
      ++pairs;
    }
  }
  const double secs = seconds_since(start);
  const bool pass = worst <= kSumTolerance && infeasible == 0 && secs < kLimitTransitionsSeconds;
  return {pass, std::to_string(pairs) + " pairs, max |sum-1| = " + fmt("%.3g", worst) + ", infeasible " +
                    std::to_string(infeasible) + ", " + fmt("%.2f", secs) + " s"};
}

Outcome oracle_consistency() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const int n = 3 + static_cast<int>(seed % 5);
    const Instance inst = small_instance(seed, n, 0.5 * static_cast<double>(seed % 4), 0.15 + 0.07 * seed);
    const Policy oracle = oracle_greedy_policy(inst);
    double expected = 0.0;
    for (const auto& wr : enumerate_realizations(inst)) {
      expected += wr.probability * rollout(inst, wr.realization, oracle.choose).total;
    }
    const double h = exact_value(inst, initial_state(inst));
    worst = std::max(worst, std::abs(expected - h) / std::max(h, 1e-300));
  }
  const double secs = seconds_since(start);
  return {worst <= kOracleRelTolerance && secs < kLimitOracleSeconds,
          "10 instances, max relative error " + fmt("%.3g", worst) + ", " + fmt("%.2f", secs) + " s"};
}

struct SmallCase {
  std::uint64_t seed;
  int n;
  double s;
  double p;
};

const std::vector<SmallCase>& small_cases() {
  static const std::vector<SmallCase> cases{
      {1, 7, 0.0, 0.25}, {2, 7, 1.5, 0.5}, {3, 6, 0.0, 0.75}, {4, 7, 1.5, 0.25}, {5, 7, 1.5, 0.75},
  };
  return cases;
}

Outcome learner_convergence() {
  const auto start = Clock::now();
  double worst = 0.0;
  std::string per_case;
  for (const SmallCase& c : small_cases()) {
    const Instance inst = small_instance(c.seed, c.n, c.s, c.p);
    TrainConfig config;
    config.seed = c.seed;
    const ValueTable table = train(inst, config, AggregationMode::kFull, true);
    const double learned = testing::enumerated_expected_total(
        inst, [&](const BeliefState& s) { return greedy_choice(s, table, inst, true).action; });
    const double h = exact_value(inst, initial_state(inst));
    const double gap = (learned - h) / h;
    worst = std::max(worst, gap);
    per_case += " " + fmt("%.3f%%", 100.0 * gap) + (table.metadata().converged ? "" : "(max-iter)");
  }
  const double secs = seconds_since(start);
  return {worst <= kLearnerGap && secs < kLimitLearnerSeconds,
          "gaps" + per_case + ", " + fmt("%.1f", secs) + " s"};
}

std::vector<BeliefState> reachable_states(const Instance& inst) {
  std::vector<BeliefState> out;
  std::set<std::string> seen;
  std::deque<BeliefState> queue{initial_state(inst)};
  seen.insert(to_string(queue.front()));
  while (!queue.empty()) {
    const BeliefState s = queue.front();
    queue.pop_front();
    out.push_back(s);
    for (NodeId a : actions(s)) {
      for (const auto& o : enumerate_transitions(s, a, inst)) {
        if (seen.insert(to_string(o.next)).second) queue.push_back(o.next);
      }
    }
  }
  return out;
}

Outcome pruning_safety() {
  std::size_t states = 0;
  std::size_t violations = 0;
  std::size_t removed = 0;
  for (const SmallCase& c : small_cases()) {
    const Instance inst = small_instance(c.seed, c.n, c.s, c.p);
    ExactSolver solver(inst);
    for (const BeliefState& s : reachable_states(inst)) {
      if (is_terminal(s)) continue;
      ++states;
      const NodeSet kept = prune_actions(s, inst);
      double best_kept = INFINITY;
      for (NodeId a : kept) best_kept = std::min(best_kept, solver.q_value(s, a));
      for (NodeId a : actions(s) - kept) {
        ++removed;
        if (solver.q_value(s, a) < best_kept - kPruneTolerance) ++violations;
      }
    }
  }
  return {violations == 0, std::to_string(states) + " reachable states, " + std::to_string(removed) +
                               " pruned actions, " + std::to_string(violations) + " violations"};
}

Outcome aggregation_reduction() {
  const auto start = Clock::now();
  const Instance inst = twenty_node(kDeepSeed, 3.0, 0.25);
  std::map<AggregationMode, std::size_t> keys;
  for (AggregationMode m :
       {AggregationMode::kFull, AggregationMode::kSa1, AggregationMode::kSa2, AggregationMode::kSa3}) {
    TrainConfig config;
    keys[m] = train(inst, config, m, true).size();
  }
  const std::size_t full = keys[AggregationMode::kFull];
  const std::size_t sa1 = keys[AggregationMode::kSa1];
  const std::size_t sa2 = keys[AggregationMode::kSa2];
  const std::size_t sa3 = keys[AggregationMode::kSa3];
  const bool ratio = static_cast<double>(sa3) <= kKeyRatio * static_cast<double>(full);
  const bool order = sa3 <= sa2 && sa2 <= sa1 && sa1 <= full;
  return {ratio && order, "depth " + std::to_string(inst.depth()) + ", keys full=" + std::to_string(full) +
                              " sa1=" + std::to_string(sa1) + " sa2=" + std::to_string(sa2) +
                              " sa3=" + std::to_string(sa3) + " (ratio " +
                              fmt("%.4f", static_cast<double>(sa3) / static_cast<double>(full)) + "), " +
                              fmt("%.1f", seconds_since(start)) + " s"};
}

EvaluationReport snrr_vs_benchmarks(const Instance& inst, std::uint64_t train_seed, std::uint64_t eval_seed) {
  TrainConfig config;
  config.seed = train_seed;
  auto table = std::make_shared<const ValueTable>(train(inst, config, AggregationMode::kFull, true));
  const std::vector<Policy> policies{table_greedy_policy("snrr", inst, table, true),
                                     priority_sequence_policy(inst), nearest_neighbor_policy(inst)};
  return evaluate(inst, policies, kBenchmarkRealizations, eval_seed);
}

Outcome benchmark_ordering() {
  const auto start = Clock::now();
  struct Setting {
    std::uint64_t seed;
    double s;
    double p;
  };
  const Setting settings[] = {{1, 0.0, 0.9}, {2, 1.5, 0.5}, {3, 3.0, 0.25}};
  bool pass = true;
  std::string detail;
  for (const Setting& st : settings) {
    const Instance inst = twenty_node(st.seed, st.s, st.p);
    const EvaluationReport r = snrr_vs_benchmarks(inst, st.seed, 1000 + st.seed);
    const auto& snrr = r.results[0];
    const auto& ps = r.results[1];
    const auto& nn = r.results[2];
    const double z_ps = paired_z(snrr.totals, ps.totals);
    const double z_nn = paired_z(snrr.totals, nn.totals);
    const bool ok = snrr.mean_total <= ps.mean_total && snrr.mean_total <= nn.mean_total &&
                    z_ps <= -kZOneSided95 && z_nn <= -kZOneSided95;
    pass = pass && ok;
    detail += " (s=" + fmt("%g", st.s) + ",p=" + fmt("%g", st.p) + ") snrr=" + fmt("%.1f", snrr.mean_total) +
              " ps=" + fmt("%.1f", ps.mean_total) + " nn=" + fmt("%.1f", nn.mean_total) + " z=" +
              fmt("%.2f", z_ps) + "/" + fmt("%.2f", z_nn) + ";";
  }
  return {pass, detail.substr(1) + " " + fmt("%.1f", seconds_since(start)) + " s"};
}

Outcome monotone_trend() {
  const auto start = Clock::now();
  const Instance base = twenty_node(kDeepSeed, 0.0, 0.5);
  bool pass = true;
  std::string detail;
  for (double s : {0.0, 1.5, 3.0}) {
    double last_mean = -INFINITY;
    double last_half = 0.0;
    detail += " s=" + fmt("%g", s) + ":";
    for (double p : {0.25, 0.5, 0.9}) {
      const Instance inst = base.with_parameters(s, p);
      const EvaluationReport r = snrr_vs_benchmarks(inst, 7, 2024);
      const PolicyResult& snrr = r.results[0];
      const double half = kZ95 * sample_sd(snrr.totals) / std::sqrt(static_cast<double>(snrr.totals.size()));
      if (snrr.mean_total < last_mean - std::max(half, last_half)) pass = false;
      last_mean = snrr.mean_total;
      last_half = half;
      detail += " " + fmt("%.1f", snrr.mean_total);
    }
  }
  return {pass, "means" + detail + ", " + fmt("%.1f", seconds_since(start)) + " s"};
}

Outcome double_kopt() {
  int witnesses = 0;
  std::size_t scanned = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    const Instance inst = small_instance(seed, n, 0.5 * static_cast<double>(seed % 3), 0.5);
    const OfflineRoute best = optimal_offline_route(inst);
    const KoptResult r = double_kopt_check(best.order, inst, 2);
    witnesses += r.passed ? 0 : 1;
    scanned += r.exchanges_scanned;
  }
  return {witnesses == 0, "10 optimal offline routes, " + std::to_string(scanned) + " exchanges, " +
                              std::to_string(witnesses) + " witnesses"};
}

bool spanning_acyclic(const SpanningTree& t) {
  if (static_cast<int>(t.edges.size()) != t.size - 1) return false;
  std::vector<int> root(t.size);
  for (int i = 0; i < t.size; ++i) root[i] = i;
  std::function<int(int)> find = [&](int x) { return root[x] == x ? x : root[x] = find(root[x]); };
  for (const auto& [a, b] : t.edges) {
    const int ra = find(a);
    const int rb = find(b);
    if (ra == rb) return false;
    root[ra] = rb;
  }
  return true;
}

Outcome generation_contract() {
  Rng rng(9);
  std::uniform_int_distribution<int> size(2, 30);
  int bad_tree = 0;
  int deeper = 0;
  int bad_source = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = size(rng);
    const std::vector<GeoPoint> points = generate_points(Region::square(10.0), n, rng);
    const SpanningTree t = build_dmst(points, 3);
    const std::vector<int> deg = t.degrees();
    if (!spanning_acyclic(t) || *std::max_element(deg.begin(), deg.end()) > 3) ++bad_tree;

    const Relabeling rel = relabel(t);
    if (deg[rel.original_index[kSource]] != *std::max_element(deg.begin(), deg.end())) ++bad_source;

    std::vector<GeoPoint> labelled{compute_depot(points)};
    for (NodeId i = 1; i <= n; ++i) labelled.push_back(points[rel.original_index[i]]);
    int eligible = 0;
    for (NodeId i = 1; i <= n; ++i) eligible += rel.tree.node_depth(i) >= 2;
    std::uniform_int_distribution<int> k(0, eligible);
    const DepthReduction red = reduce_depth(rel.tree, labelled, k(rng), rng);
    if (red.tree.depth() > rel.tree.depth()) ++deeper;
  }
  return {bad_tree == 0 && deeper == 0 && bad_source == 0,
          "100 point sets, bad trees " + std::to_string(bad_tree) + ", deeper after reduction " +
              std::to_string(deeper) + ", misplaced source " + std::to_string(bad_source)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "trnrp_acceptance_determinism";
  fs::remove_all(root);
  std::size_t compared = 0;
  std::size_t differing = 0;

  auto compare_dirs = [&](const fs::path& a, const fs::path& b) {
    for (const auto& e : fs::recursive_directory_iterator(a)) {
      if (!e.is_regular_file()) continue;
      const fs::path twin = b / fs::relative(e.path(), a);
      ++compared;
      if (!fs::exists(twin) || slurp(e.path()) != slurp(twin)) ++differing;
    }
  };

#ifdef TRNRP_HAVE_CLI
  auto cli = [](std::vector<std::string> args) {
    args.insert(args.begin(), "trnrp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  };
  int failures = 0;
  for (const char* run : {"a", "b"}) {
    const fs::path dir = root / run;
    fs::create_directories(dir);
    const std::string inst = (dir / "inst.json").string();
    failures += cli({"gen", "--nodes", "15", "--seed", "4", "--s", "1.5", "--p", "0.5", "--reduce", "3", "--out",
                     inst}) != 0;
    for (const char* mode : {"full", "sa1", "sa2", "sa3"}) {
      failures += cli({"train", "--instance", inst, "--mode", mode, "--max-iters", "30000", "--warmup", "20000",
                       "--batch", "5000", "--quiet", "--out", (dir / (std::string(mode) + ".table")).string()}) != 0;
    }
    failures += cli({"eval", "--instance", inst, "--table", (dir / "full.table").string(), "--table",
                     (dir / "sa2.table").string(), "--realizations", "300", "--seed", "8", "--out",
                     (dir / "eval.csv").string()}) != 0;
    std::ofstream(dir / "manifest.json") << R"({"seed": 6, "output_dir": "out",
      "instances": [{"name": "m", "nodes": [8, 12], "p": [0.25, 0.9], "s": [0, 3], "reduce": 2}],
      "train": {"modes": ["full", "sa3"], "max_iters": 5000, "warmup": 5000, "batch": 1000},
      "eval": {"realizations": 100}})";
    failures += cli({"run", (dir / "manifest.json").string()}) != 0;
  }
  compare_dirs(root / "a", root / "b");
  fs::remove_all(root);
  return {failures == 0 && differing == 0 && compared > 0,
          std::to_string(compared) + " files compared across two runs, " + std::to_string(differing) +
              " differ, " + std::to_string(failures) + " command failures"};
#else
  for (const char* run : {"a", "b"}) {
    const fs::path dir = root / run;
    fs::create_directories(dir);
    GeneratorConfig g;
    g.nodes = 15;
    g.seed = 4;
    g.reduce = 3;
    const Instance inst = generate_instance(g);
    save_instance(inst, dir / "inst.json");
    TrainConfig config;
    config.max_iterations = 30000;
    auto table = std::make_shared<const ValueTable>(train(inst, config, AggregationMode::kFull, true));
    save_table(*table, dir / "full.table");
    const std::vector<Policy> policies{table_greedy_policy("snrr", inst, table, true),
                                       priority_sequence_policy(inst)};
    write_text_file(dir / "eval.csv", report_to_csv(evaluate(inst, policies, 300, 8)));
  }
  compare_dirs(root / "a", root / "b");
  fs::remove_all(root);
  return {differing == 0 && compared > 0,
          std::to_string(compared) + " files compared across two runs, " + std::to_string(differing) + " differ"};
#endif
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"transition normalization", transition_normalization},
      {"oracle consistency", oracle_consistency},
      {"learner convergence", learner_convergence},
      {"pruning safety", pruning_safety},
      {"aggregation reduction", aggregation_reduction},
      {"benchmark ordering", benchmark_ordering},
      {"monotone trend in p", monotone_trend},
      {"double k-opt", double_kopt},
      {"instance generation contract", generation_contract},
      {"determinism", determinism},
  };
  int failed = 0;
  int index = 1;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index++, c.name, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %d criteria passed\n", index - 1 - failed, index - 1);
  return failed == 0 ? 0 : 1;
}
