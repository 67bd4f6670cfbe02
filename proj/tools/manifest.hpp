#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "trnrp/aggregation.hpp"
#include "trnrp/instance_gen.hpp"
#include "trnrp/policy.hpp"
#include "trnrp/value_table.hpp"

namespace trnrp::cli {

/// Bad command line or bad manifest contents; maps to exit status 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ManifestEntry {
  std::string name;
  /// Existing instance file; when empty the instance is generated.
  std::filesystem::path file;
  GeneratorConfig generator{};
  std::vector<int> nodes;
  /// Empty means "keep the instance's own value".
  std::vector<double> fault_probs;
  std::vector<double> repair_times;
};

struct ManifestTrain {
  std::vector<AggregationMode> modes{AggregationMode::kFull};
  bool prune = true;
  TrainConfig config{};
};

struct ManifestEval {
  std::size_t realizations = 1000;
  std::optional<std::uint64_t> seed;
  /// Empty means every trained mode plus ps and nn.
  std::vector<std::string> policies;
};

struct Manifest {
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "out";
  std::vector<ManifestEntry> entries;
  ManifestTrain train;
  ManifestEval eval;
};

/// Relative paths resolve against `base_dir`. Throws UsageError on invalid
/// contents.
Manifest parse_manifest(const std::string& text, const std::filesystem::path& base_dir);

/// Runs gen -> train (per mode) -> eval for every entry and (n, p, s) variant,
/// writing one instance file, one table per mode and one CSV per variant.
/// Progress goes to `log`. Returns the number of files written.
std::size_t run_manifest(const Manifest& manifest, std::ostream& log);

/// Table-greedy policy label for a mode: snrr/nrr for full keys, else the mode name.
std::string policy_label(AggregationMode mode, bool prune);

/// Resolves policy names (snrr, nrr, full, sa1, sa2, sa3, ps, nn, oracle)
/// against the loaded tables. Throws UsageError for unknown names or a
/// missing table.
std::vector<Policy> make_policies(const std::vector<std::string>& names, const Instance& instance,
                                  const std::vector<std::shared_ptr<const ValueTable>>& tables);

}  // namespace trnrp::cli
