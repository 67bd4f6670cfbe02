#include "trnrp/aggregation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace trnrp {
namespace {

constexpr int kLocationShift = 0;
constexpr int kServedShift = 8;
constexpr int kFaultyShift = 16;
constexpr int kUncertainShift = 24;
constexpr int kClearedShift = 32;

std::uint64_t field(std::uint64_t word, int shift) { return (word >> shift) & 0xFFU; }

std::uint64_t pack(std::uint64_t value, int shift) { return value << shift; }

void append_set(std::ostringstream& os, NodeSet set) {
  os << '{';
  bool first = true;
  for (NodeId i : set) {
    if (!first) os << ',';
    os << i;
    first = false;
  }
  os << '}';
}

}  // namespace

std::string_view to_string(AggregationMode mode) {
  switch (mode) {
    case AggregationMode::kFull: return "full";
    case AggregationMode::kSa1: return "sa1";
    case AggregationMode::kSa2: return "sa2";
    case AggregationMode::kSa3: return "sa3";
  }
  return "full";
}

AggregationMode parse_aggregation_mode(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "full" || lower == "snrr") return AggregationMode::kFull;
  if (lower == "sa1") return AggregationMode::kSa1;
  if (lower == "sa2") return AggregationMode::kSa2;
  if (lower == "sa3") return AggregationMode::kSa3;
  throw std::invalid_argument("unknown aggregation mode '" + std::string(text) + "'");
}

std::size_t AggregationKeyHash::operator()(const AggregationKey& key) const noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (std::uint64_t w : key.words) {
    w ^= w >> 33;
    w *= 0xFF51AFD7ED558CCDULL;
    w ^= w >> 33;
    h = (h ^ w) * 0x100000001B3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

AggregationKey aggregate_key(const PostDecisionState& post, AggregationMode mode) {
  AggregationKey key;
  std::uint64_t& w = key.words[0];
  w = pack(static_cast<std::uint64_t>(post.action), kLocationShift) |
      pack(post.served.size(), kServedShift) | pack(post.faulty.size(), kFaultyShift);
  switch (mode) {
    case AggregationMode::kFull:
      key.words[1] = post.served.bits();
      key.words[2] = post.cleared.bits();
      key.words[3] = post.faulty.bits();
      break;
    case AggregationMode::kSa1:
      key.words[1] = post.faulty.bits();
      [[fallthrough]];
    case AggregationMode::kSa2:
      w |= pack(post.uncertain.size(), kUncertainShift) | pack(post.cleared.size(), kClearedShift);
      break;
    case AggregationMode::kSa3:
      break;
  }
  return key;
}

std::string describe_key(const AggregationKey& key, AggregationMode mode) {
  const std::uint64_t w = key.words[0];
  std::ostringstream os;
  os << "L=" << field(w, kLocationShift);
  switch (mode) {
    case AggregationMode::kFull: {
      const NodeSet served(key.words[1]);
      const NodeSet cleared(key.words[2]);
      const NodeSet faulty(key.words[3]);
      os << " U+=";
      append_set(os, served);
      os << " U0=";
      append_set(os, cleared);
      os << " U1=";
      append_set(os, faulty);
      break;
    }
    case AggregationMode::kSa1:
      os << " |U+|=" << field(w, kServedShift) << " U1=";
      append_set(os, NodeSet(key.words[1]));
      os << " |Up|=" << field(w, kUncertainShift) << " |U0|=" << field(w, kClearedShift);
      break;
    case AggregationMode::kSa2:
      os << " |U+|=" << field(w, kServedShift) << " |U1|=" << field(w, kFaultyShift)
         << " |Up|=" << field(w, kUncertainShift) << " |U0|=" << field(w, kClearedShift);
      break;
    case AggregationMode::kSa3:
      os << " |U+|=" << field(w, kServedShift) << " |U1|=" << field(w, kFaultyShift);
      break;
  }
  return os.str();
}

}  // namespace trnrp
