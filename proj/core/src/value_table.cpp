#include "trnrp/value_table.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "trnrp/instance_io.hpp"
#include "trnrp/version.hpp"

namespace trnrp {
namespace {

using nlohmann::ordered_json;

constexpr const char* kMagic = "trnrp-table";

ordered_json config_to_json(const TrainConfig& c) {
  ordered_json j;
  j["warmup_iterations"] = c.warmup_iterations;
  j["batch_size"] = c.batch_size;
  j["frequent_fraction"] = c.frequent_fraction;
  j["stop_threshold"] = c.stop_threshold;
  j["exploration_constant"] = c.exploration_constant;
  j["max_iterations"] = c.max_iterations;
  j["seed"] = c.seed;
  return j;
}

TrainConfig config_from_json(const ordered_json& j) {
  TrainConfig c;
  c.warmup_iterations = j.at("warmup_iterations").get<std::uint64_t>();
  c.batch_size = j.at("batch_size").get<std::uint64_t>();
  c.frequent_fraction = j.at("frequent_fraction").get<double>();
  c.stop_threshold = j.at("stop_threshold").get<double>();
  c.exploration_constant = j.at("exploration_constant").get<double>();
  c.max_iterations = j.at("max_iterations").get<std::uint64_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

[[noreturn]] void corrupt(const std::string& why) {
  throw std::runtime_error("corrupt table file: " + why);
}

}  // namespace

void TrainConfig::validate() const {
  if (batch_size == 0) throw std::invalid_argument("batch size must be positive");
  if (!(frequent_fraction > 0.0 && frequent_fraction < 1.0)) {
    throw std::invalid_argument("frequent fraction must lie in (0,1)");
  }
  if (!(stop_threshold > 0.0) || !std::isfinite(stop_threshold)) {
    throw std::invalid_argument("stop threshold must be positive");
  }
  if (!(exploration_constant > 0.0) || !std::isfinite(exploration_constant)) {
    throw std::invalid_argument("exploration constant must be positive");
  }
}

const TableEntry* ValueTable::find(const AggregationKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

double ValueTable::value_or_zero(const AggregationKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? 0.0 : it->second.value;
}

const TableEntry& ValueTable::update(const AggregationKey& key, double sample) {
  auto [it, inserted] = entries_.try_emplace(key);
  TableEntry& e = it->second;
  if (inserted) ++new_keys_in_batch_;
  if (e.batch_stamp != batch_ || inserted) {
    e.batch_stamp = batch_;
    e.batch_start_value = inserted ? sample : e.value;
  }
  ++e.visits;
  const double alpha = 1.0 / static_cast<double>(e.visits);
  e.value = (1.0 - alpha) * e.value + alpha * sample;
  return e;
}

void ValueTable::insert(const AggregationKey& key, double value, std::uint64_t visits) {
  TableEntry& e = entries_[key];
  e.value = value;
  e.visits = visits;
  e.batch_start_value = value;
  e.batch_stamp = batch_;
}

void ValueTable::begin_batch() {
  ++batch_;
  new_keys_in_batch_ = 0;
}

double ValueTable::max_batch_change(std::uint64_t min_visits) const {
  double delta = 0.0;
  for (const auto& [key, e] : entries_) {
    if (e.visits < min_visits || e.batch_stamp != batch_) continue;
    delta = std::max(delta, std::abs(e.value - e.batch_start_value));
  }
  return delta;
}

std::vector<std::pair<AggregationKey, TableEntry>> ValueTable::sorted_entries() const {
  std::vector<std::pair<AggregationKey, TableEntry>> out(entries_.begin(), entries_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::string table_to_text(const ValueTable& table) {
  const TableMetadata& m = table.metadata();
  ordered_json header;
  header["tool_version"] = kVersion;
  header["mode"] = std::string(to_string(table.mode()));
  header["node_count"] = m.node_count;
  header["prune"] = m.prune;
  header["seed"] = m.config.seed;
  header["config"] = config_to_json(m.config);
  header["iterations"] = m.iterations;
  header["converged"] = m.converged;
  header["batch_deltas"] = m.batch_deltas;
  header["keys"] = table.size();

  std::string out = std::string(kMagic) + " " + std::to_string(kTableFormatVersion) + "\n";
  out += header.dump() + "\n";
  char line[160];
  for (const auto& [key, e] : table.sorted_entries()) {
    std::snprintf(line, sizeof line, "%016" PRIx64 " %016" PRIx64 " %016" PRIx64 " %016" PRIx64
                  " %.17g %" PRIu64 "\n",
                  key.words[0], key.words[1], key.words[2], key.words[3], e.value, e.visits);
    out += line;
  }
  return out;
}

ValueTable table_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kMagic) corrupt("missing table header");
  if (version != kTableFormatVersion) {
    throw std::runtime_error("table format version " + std::to_string(version) +
                             " is not supported (expected " +
                             std::to_string(kTableFormatVersion) + ")");
  }
  std::string header_line;
  std::getline(in, header_line);
  if (!std::getline(in, header_line)) corrupt("missing metadata line");

  ordered_json header;
  try {
    header = ordered_json::parse(header_line);
  } catch (const nlohmann::json::exception& e) {
    corrupt(e.what());
  }

  try {
    ValueTable table(parse_aggregation_mode(header.at("mode").get<std::string>()));
    TableMetadata& m = table.metadata();
    m.node_count = header.at("node_count").get<int>();
    m.prune = header.at("prune").get<bool>();
    m.config = config_from_json(header.at("config"));
    m.iterations = header.at("iterations").get<std::uint64_t>();
    m.converged = header.at("converged").get<bool>();
    m.batch_deltas = header.at("batch_deltas").get<std::vector<double>>();
    const auto expected = header.at("keys").get<std::size_t>();

    std::string row;
    while (std::getline(in, row)) {
      if (row.empty()) continue;
      AggregationKey key;
      double value = 0.0;
      std::uint64_t visits = 0;
      if (std::sscanf(row.c_str(), "%" SCNx64 " %" SCNx64 " %" SCNx64 " %" SCNx64 " %lf %" SCNu64,
                      &key.words[0], &key.words[1], &key.words[2], &key.words[3], &value,
                      &visits) != 6) {
        corrupt("bad entry line '" + row + "'");
      }
      if (!std::isfinite(value) || visits == 0) corrupt("bad entry line '" + row + "'");
      table.insert(key, value, visits);
    }
    if (table.size() != expected) {
      corrupt("expected " + std::to_string(expected) + " keys, found " +
              std::to_string(table.size()));
    }
    return table;
  } catch (const nlohmann::json::exception& e) {
    corrupt(e.what());
  } catch (const std::invalid_argument& e) {
    corrupt(e.what());
  }
}

void save_table(const ValueTable& table, const std::filesystem::path& path) {
  write_text_file(path, table_to_text(table));
}

ValueTable load_table(const std::filesystem::path& path) {
  return table_from_text(read_text_file(path));
}

}  // namespace trnrp
