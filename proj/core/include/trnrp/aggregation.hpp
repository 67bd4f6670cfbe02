#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "trnrp/mdp.hpp"

namespace trnrp {

/// Lookup-key granularity for post-decision states.
///
///  - kFull: L and the whole partition
///  - kSa1:  (L, |U+|, U1- as a set, |Up-|, |U0-|)
///  - kSa2:  (L, |U+|, |U1-|, |Up-|, |U0-|)
///  - kSa3:  (L, |U+|, |U1-|)
enum class AggregationMode { kFull, kSa1, kSa2, kSa3 };

std::string_view to_string(AggregationMode mode);
/// Accepts full|snrr|sa1|sa2|sa3, case-insensitive.
AggregationMode parse_aggregation_mode(std::string_view text);

/// Packed key. Word 0 holds L and the set sizes one byte each; the remaining
/// words hold whichever node sets the mode keeps (zero otherwise).
struct AggregationKey {
  std::array<std::uint64_t, 4> words{};

  friend bool operator==(const AggregationKey&, const AggregationKey&) = default;
  friend auto operator<=>(const AggregationKey&, const AggregationKey&) = default;
};

struct AggregationKeyHash {
  std::size_t operator()(const AggregationKey& key) const noexcept;
};

AggregationKey aggregate_key(const PostDecisionState& post, AggregationMode mode);

/// Human-readable form, e.g. "L=4 |U+|=7 |U1|=2".
std::string describe_key(const AggregationKey& key, AggregationMode mode);

}  // namespace trnrp
