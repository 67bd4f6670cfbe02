#include "manifest.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "trnrp/evaluation.hpp"
#include "trnrp/instance_io.hpp"
#include "trnrp/learner.hpp"

namespace trnrp::cli {
namespace {

using nlohmann::json;

template <class T>
std::vector<T> one_or_many(const json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

Region region_from(const std::string& shape_text, const std::vector<double>& dims) {
  const RegionShape shape = parse_region_shape(shape_text);
  auto need = [&](std::size_t count) {
    if (dims.size() != count) {
      throw UsageError("shape '" + shape_text + "' takes " + std::to_string(count) + " dimension(s)");
    }
  };
  switch (shape) {
    case RegionShape::kSquare:
      need(1);
      return Region::square(dims[0]);
    case RegionShape::kRectangle:
      need(2);
      return Region::rectangle(dims[0], dims[1]);
    case RegionShape::kCircle:
      need(1);
      return Region::circle(dims[0]);
  }
  throw UsageError("unknown shape");
}

std::string number_tag(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

ManifestEntry parse_entry(const json& j, std::size_t index, std::uint64_t global_seed,
                          const std::filesystem::path& base_dir) {
  ManifestEntry e;
  e.name = j.value("name", "instance" + std::to_string(index));
  if (e.name.empty() || e.name.find_first_of("/\\") != std::string::npos) {
    throw UsageError("instance name '" + e.name + "' is not a plain file stem");
  }
  if (j.contains("file")) {
    e.file = base_dir / j.at("file").get<std::string>();
    if (!std::filesystem::exists(e.file)) {
      throw UsageError("instance file " + e.file.string() + " does not exist");
    }
  } else {
    GeneratorConfig& g = e.generator;
    const std::string shape = j.value("shape", "square");
    g.region = region_from(shape, one_or_many<double>(j.value("dims", json(10.0))));
    g.region.validate();
    g.degree_bound = j.value("degree", 3);
    g.reduce = j.value("reduce", 0);
    g.seed = j.value("seed", global_seed + index);
    e.nodes = one_or_many<int>(j.value("nodes", json(20)));
    if (e.nodes.empty()) throw UsageError("instance '" + e.name + "' lists no node counts");
    for (int n : e.nodes) {
      if (n < 1 || n > kMaxNodes) throw UsageError("node count " + std::to_string(n) + " out of range");
    }
  }
  if (j.contains("p")) e.fault_probs = one_or_many<double>(j.at("p"));
  if (j.contains("s")) e.repair_times = one_or_many<double>(j.at("s"));
  for (double p : e.fault_probs) {
    if (!(p > 0.0 && p < 1.0)) throw UsageError("fault probability " + number_tag(p) + " outside (0,1)");
  }
  for (double s : e.repair_times) {
    if (!(s >= 0.0)) throw UsageError("repair time " + number_tag(s) + " is negative");
  }
  return e;
}

struct Variant {
  std::string stem;
  Instance instance;
};

std::vector<Variant> expand_entry(const ManifestEntry& e) {
  std::vector<Instance> bases;
  if (!e.file.empty()) {
    bases.push_back(load_instance(e.file));
  } else {
    for (int n : e.nodes) {
      GeneratorConfig g = e.generator;
      g.nodes = n;
      if (!e.fault_probs.empty()) g.fault_prob = e.fault_probs.front();
      if (!e.repair_times.empty()) g.repair_time = e.repair_times.front();
      bases.push_back(generate_instance(g));
    }
  }
  std::vector<Variant> out;
  for (const Instance& base : bases) {
    const std::vector<double> ps =
        e.fault_probs.empty() ? std::vector<double>{base.fault_prob()} : e.fault_probs;
    const std::vector<double> ss =
        e.repair_times.empty() ? std::vector<double>{base.repair_time()} : e.repair_times;
    for (double p : ps) {
      for (double s : ss) {
        const std::string stem = e.name + "_n" + std::to_string(base.node_count()) + "_p" +
                                 number_tag(p) + "_s" + number_tag(s);
        out.push_back({stem, base.with_parameters(s, p)});
      }
    }
  }
  return out;
}

}  // namespace

std::string policy_label(AggregationMode mode, bool prune) {
  if (mode == AggregationMode::kFull) return prune ? "snrr" : "nrr";
  return std::string(to_string(mode));
}

std::vector<Policy> make_policies(const std::vector<std::string>& names, const Instance& instance,
                                  const std::vector<std::shared_ptr<const ValueTable>>& tables) {
  for (const auto& t : tables) {
    if (t->metadata().node_count != 0 && t->metadata().node_count != instance.node_count()) {
      throw UsageError("table was trained on " + std::to_string(t->metadata().node_count) +
                       " nodes but the instance has " + std::to_string(instance.node_count()));
    }
  }
  std::vector<Policy> out;
  for (const std::string& name : names) {
    if (name == "ps") {
      out.push_back(priority_sequence_policy(instance));
    } else if (name == "nn") {
      out.push_back(nearest_neighbor_policy(instance));
    } else if (name == "oracle") {
      if (instance.node_count() > ExactSolver::kDefaultSizeLimit) {
        throw UsageError("oracle policy is limited to " +
                         std::to_string(ExactSolver::kDefaultSizeLimit) + " nodes");
      }
      out.push_back(oracle_greedy_policy(instance));
    } else {
      std::shared_ptr<const ValueTable> match;
      for (const auto& t : tables) {
        const bool prune = t->metadata().prune;
        const bool hit = name == policy_label(t->mode(), prune) ||
                         (name == "full" && t->mode() == AggregationMode::kFull);
        if (hit) {
          match = t;
          break;
        }
      }
      if (!match) throw UsageError("no table provides policy '" + name + "'");
      out.push_back(table_greedy_policy(name, instance, match, match->metadata().prune));
    }
  }
  return out;
}

Manifest parse_manifest(const std::string& text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("manifest is not valid JSON: ") + e.what());
  }
  try {
    Manifest m;
    m.seed = doc.value("seed", std::uint64_t{1});
    m.output_dir = base_dir / doc.value("output_dir", std::string("out"));

    const json& instances = doc.at("instances");
    if (!instances.is_array() || instances.empty()) throw UsageError("manifest lists no instances");
    for (std::size_t i = 0; i < instances.size(); ++i) {
      m.entries.push_back(parse_entry(instances[i], i, m.seed, base_dir));
    }

    const json train = doc.value("train", json::object());
    m.train.modes.clear();
    for (const auto& mode : one_or_many<std::string>(train.value("modes", json("full")))) {
      m.train.modes.push_back(parse_aggregation_mode(mode));
    }
    m.train.prune = train.value("prune", true);
    TrainConfig& c = m.train.config;
    c.stop_threshold = train.value("gamma", c.stop_threshold);
    c.max_iterations = train.value("max_iters", c.max_iterations);
    c.warmup_iterations = train.value("warmup", c.warmup_iterations);
    c.batch_size = train.value("batch", c.batch_size);
    c.frequent_fraction = train.value("frequent_fraction", c.frequent_fraction);
    c.exploration_constant = train.value("exploration", c.exploration_constant);
    c.seed = train.value("seed", m.seed);
    c.validate();

    const json eval = doc.value("eval", json::object());
    m.eval.realizations = eval.value("realizations", m.eval.realizations);
    if (m.eval.realizations == 0) throw UsageError("eval.realizations must be positive");
    if (eval.contains("seed")) m.eval.seed = eval.at("seed").get<std::uint64_t>();
    if (eval.contains("policies")) m.eval.policies = one_or_many<std::string>(eval.at("policies"));
    for (const std::string& name : m.eval.policies) {
      bool known = name == "ps" || name == "nn" || name == "oracle";
      for (AggregationMode mode : m.train.modes) {
        known = known || name == policy_label(mode, m.train.prune) ||
                (name == "full" && mode == AggregationMode::kFull);
      }
      if (!known) throw UsageError("policy '" + name + "' has no trained table in this manifest");
    }
    return m;
  } catch (const json::exception& e) {
    throw UsageError(std::string("invalid manifest: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid manifest: ") + e.what());
  }
}

std::size_t run_manifest(const Manifest& manifest, std::ostream& log) {
  std::error_code ec;
  std::filesystem::create_directories(manifest.output_dir, ec);
  if (ec || !std::filesystem::is_directory(manifest.output_dir)) {
    throw std::runtime_error("cannot create output directory " + manifest.output_dir.string());
  }

  std::vector<std::string> policies = manifest.eval.policies;
  if (policies.empty()) {
    for (AggregationMode mode : manifest.train.modes) {
      policies.push_back(policy_label(mode, manifest.train.prune));
    }
    policies.push_back("ps");
    policies.push_back("nn");
  }
  const std::uint64_t eval_seed = manifest.eval.seed.value_or(manifest.seed);

  std::size_t written = 0;
  for (const ManifestEntry& entry : manifest.entries) {
    for (Variant& v : expand_entry(entry)) {
      const auto dir = manifest.output_dir;
      log << "gen " << v.stem << " n=" << v.instance.node_count() << " depth=" << v.instance.depth()
          << "\n";
      save_instance(v.instance, dir / (v.stem + ".instance.json"));
      ++written;

      std::vector<std::shared_ptr<const ValueTable>> tables;
      for (AggregationMode mode : manifest.train.modes) {
        auto table = std::make_shared<ValueTable>(
            train(v.instance, manifest.train.config, mode, manifest.train.prune));
        const TableMetadata& meta = table->metadata();
        log << "train " << v.stem << " mode=" << to_string(mode) << " iterations=" << meta.iterations
            << " keys=" << table->size() << " converged=" << (meta.converged ? "yes" : "no") << "\n";
        save_table(*table, dir / (v.stem + "." + std::string(to_string(mode)) + ".table"));
        ++written;
        tables.push_back(std::move(table));
      }

      const std::vector<Policy> resolved = make_policies(policies, v.instance, tables);
      const EvaluationReport report =
          evaluate(v.instance, resolved, manifest.eval.realizations, eval_seed);
      write_text_file(dir / (v.stem + ".csv"), report_to_csv(report));
      ++written;
      log << "eval " << v.stem << " R=" << report.realizations << " best="
          << report.results[report.best].name << "\n";
    }
  }
  return written;
}

}  // namespace trnrp::cli
