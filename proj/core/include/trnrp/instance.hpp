#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "trnrp/geometry.hpp"
#include "trnrp/power_tree.hpp"

namespace trnrp {

/// The one generator threaded through every stochastic step.
using Rng = std::mt19937_64;

enum class RegionShape { kSquare, kRectangle, kCircle };

std::string_view to_string(RegionShape shape);
/// Accepts "square", "rect"/"rectangle", "circle".
RegionShape parse_region_shape(std::string_view text);

/// Service region. Rectangles and squares extend from `origin` by width/height;
/// circles are centred on `origin`.
struct Region {
  RegionShape shape = RegionShape::kSquare;
  double width = 10.0;
  double height = 10.0;
  double radius = 0.0;
  GeoPoint origin{};

  static Region square(double side, GeoPoint origin = {});
  static Region rectangle(double width, double height, GeoPoint origin = {});
  static Region circle(double radius, GeoPoint center = {});

  /// Throws std::invalid_argument on non-positive or non-finite dimensions.
  void validate() const;
  bool contains(const GeoPoint& p, double tolerance = 1e-9) const;
};

/// How an instance was produced; echoed to instance files.
struct GenerationInfo {
  Region region{};
  std::uint64_t seed = 0;
  int degree_bound = 3;
  int reduce_requested = 0;
  int reduce_applied = 0;
};

/// One TRNRP problem: power tree, crew road network (complete Euclidean graph
/// over depot + nodes), repair time s and fault probability p.
class Instance {
 public:
  /// `points[0]` is the depot, `points[i]` node i. Throws std::invalid_argument
  /// on size mismatch, p outside (0,1), negative s, or non-finite coordinates.
  Instance(std::vector<GeoPoint> points, PowerTree tree, double repair_time, double fault_prob,
           GenerationInfo info = {});

  int node_count() const { return tree_.node_count(); }
  const PowerTree& tree() const { return tree_; }
  const std::vector<GeoPoint>& points() const { return points_; }
  double repair_time() const { return repair_time_; }
  double fault_prob() const { return fault_prob_; }
  const GenerationInfo& info() const { return info_; }

  double distance(NodeId i, NodeId j) const { return dist_[i * stride_ + j]; }
  double max_distance() const { return max_distance_; }
  int depth() const { return tree_.depth(); }

  /// Same geometry and tree with different (s, p).
  Instance with_parameters(double repair_time, double fault_prob) const;

 private:
  std::vector<GeoPoint> points_;
  PowerTree tree_;
  double repair_time_ = 0.0;
  double fault_prob_ = 0.5;
  GenerationInfo info_{};
  std::size_t stride_ = 0;
  std::vector<double> dist_;
  double max_distance_ = 0.0;
};

}  // namespace trnrp
