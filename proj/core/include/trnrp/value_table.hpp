#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trnrp/aggregation.hpp"

namespace trnrp {

struct TrainConfig {
  std::uint64_t warmup_iterations = 100000;
  std::uint64_t batch_size = 10000;
  double frequent_fraction = 0.75;
  /// Stop threshold on the batch value change, in time units.
  double stop_threshold = 0.5;
  double exploration_constant = 1.0;
  std::uint64_t max_iterations = 5000000;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument on a non-positive batch size, threshold or
  /// exploration constant, or a frequent fraction outside (0,1).
  void validate() const;
};

struct TableEntry {
  double value = 0.0;
  std::uint64_t visits = 0;
  /// Value when the entry was first touched in batch `batch_stamp`.
  double batch_start_value = 0.0;
  std::uint64_t batch_stamp = 0;
};

struct TableMetadata {
  int node_count = 0;
  bool prune = false;
  TrainConfig config{};
  std::uint64_t iterations = 0;
  std::vector<double> batch_deltas;
  bool converged = false;
  /// Not written to disk so that table files stay reproducible.
  double wall_seconds = 0.0;
};

/// Lookup table from aggregation key to (value, visits).
class ValueTable {
 public:
  explicit ValueTable(AggregationMode mode = AggregationMode::kFull) : mode_(mode) {}

  AggregationMode mode() const { return mode_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const TableEntry* find(const AggregationKey& key) const;
  /// Unseen keys are worth 0.
  double value_or_zero(const AggregationKey& key) const;

  /// Exponential smoothing with step 1/N, N counting this observation.
  const TableEntry& update(const AggregationKey& key, double sample);

  /// Used when loading; overwrites any existing entry.
  void insert(const AggregationKey& key, double value, std::uint64_t visits);

  /// Starts a new stopping-rule batch.
  void begin_batch();
  std::uint64_t batch() const { return batch_; }
  std::uint64_t new_keys_in_batch() const { return new_keys_in_batch_; }
  /// Largest |value change| during the current batch among entries with at
  /// least `min_visits` visits; 0 when none qualify.
  double max_batch_change(std::uint64_t min_visits) const;

  /// Entries ordered by key.
  std::vector<std::pair<AggregationKey, TableEntry>> sorted_entries() const;

  TableMetadata& metadata() { return metadata_; }
  const TableMetadata& metadata() const { return metadata_; }

 private:
  AggregationMode mode_;
  std::unordered_map<AggregationKey, TableEntry, AggregationKeyHash> entries_;
  std::uint64_t batch_ = 0;
  std::uint64_t new_keys_in_batch_ = 0;
  TableMetadata metadata_{};
};

inline constexpr int kTableFormatVersion = 1;

/// Text format: a "trnrp-table <version>" line, a one-line JSON header with the
/// metadata, then one "w0 w1 w2 w3 value visits" line per key in key order.
std::string table_to_text(const ValueTable& table);
/// Throws std::runtime_error on a corrupt or version-mismatched document.
ValueTable table_from_text(const std::string& text);

void save_table(const ValueTable& table, const std::filesystem::path& path);
ValueTable load_table(const std::filesystem::path& path);

}  // namespace trnrp
