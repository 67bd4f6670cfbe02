#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "trnrp/geometry.hpp"
#include "trnrp/instance.hpp"
#include "trnrp/power_tree.hpp"

namespace trnrp {

/// Undirected spanning tree over point indices 0..size-1.
struct SpanningTree {
  int size = 0;
  std::vector<std::pair<int, int>> edges;

  std::vector<int> degrees() const;
  double total_length(std::span<const GeoPoint> points) const;
};

/// Draws `n` points inside `region`. Rectangles sample x and y uniformly;
/// circles sample radius and angle uniformly (so density rises toward the
/// centre). Throws std::invalid_argument for an invalid region or n < 0.
std::vector<GeoPoint> generate_points(const Region& region, int n, Rng& rng);

/// Centre of gravity of the demand nodes. Throws on an empty list.
GeoPoint compute_depot(std::span<const GeoPoint> points);

/// Euclidean minimum spanning tree (Prim), lowest-index tie-breaking.
SpanningTree minimum_spanning_tree(std::span<const GeoPoint> points);

/// Degree-constrained MST heuristic. Recomputes the MST over iteratively
/// penalised edge lengths until every node has degree <= degree_bound.
/// Throws std::invalid_argument if degree_bound < 2 or fewer than 2 points.
SpanningTree build_dmst(std::span<const GeoPoint> points, int degree_bound);

struct Relabeling {
  PowerTree tree;
  /// original_index[label] = index into the input point list (slot 0 unused).
  std::vector<int> original_index;
};

/// Maximum-degree node (lowest index on ties) becomes the source, node 1; the
/// rest are numbered 2..n in breadth-first order, children by original index.
Relabeling relabel(const SpanningTree& tree);

struct DepthReduction {
  PowerTree tree;
  int applied = 0;
};

inline constexpr int kReparentAttempts = 50;

/// Re-parents up to `k` distinct random nodes to their grandparent, rejecting
/// moves whose new arc would cross an existing arc. `points` is indexed by
/// node label (slot 0 = depot). Returns fewer than k modifications when the
/// attempt budget runs out. Throws if k exceeds the nodes having a grandparent.
DepthReduction reduce_depth(const PowerTree& tree, std::span<const GeoPoint> points, int k,
                            Rng& rng);

struct GeneratorConfig {
  Region region = Region::square(10.0);
  int nodes = 20;
  int degree_bound = 3;
  int reduce = 0;
  double repair_time = 0.0;
  double fault_prob = 0.5;
  std::uint64_t seed = 1;
};

/// Full pipeline: points -> depot -> d-MST -> relabel -> depth reduction.
Instance generate_instance(const GeneratorConfig& config);

}  // namespace trnrp
