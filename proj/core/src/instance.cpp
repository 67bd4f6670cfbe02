#include "trnrp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace trnrp {

std::string_view to_string(RegionShape shape) {
  switch (shape) {
    case RegionShape::kSquare: return "square";
    case RegionShape::kRectangle: return "rect";
    case RegionShape::kCircle: return "circle";
  }
  return "square";
}

RegionShape parse_region_shape(std::string_view text) {
  if (text == "square") return RegionShape::kSquare;
  if (text == "rect" || text == "rectangle") return RegionShape::kRectangle;
  if (text == "circle") return RegionShape::kCircle;
  throw std::invalid_argument("unknown region shape '" + std::string(text) + "'");
}

Region Region::square(double side, GeoPoint origin) {
  return Region{RegionShape::kSquare, side, side, 0.0, origin};
}

Region Region::rectangle(double width, double height, GeoPoint origin) {
  return Region{RegionShape::kRectangle, width, height, 0.0, origin};
}

Region Region::circle(double radius, GeoPoint center) {
  return Region{RegionShape::kCircle, 0.0, 0.0, radius, center};
}

void Region::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!std::isfinite(origin.x) || !std::isfinite(origin.y)) {
    throw std::invalid_argument("region origin must be finite");
  }
  if (shape == RegionShape::kCircle) {
    if (!positive(radius)) throw std::invalid_argument("circle radius must be positive");
    return;
  }
  if (!positive(width) || !positive(height)) {
    throw std::invalid_argument("region width and height must be positive");
  }
  if (shape == RegionShape::kSquare && width != height) {
    throw std::invalid_argument("square region needs equal width and height");
  }
}

bool Region::contains(const GeoPoint& p, double tolerance) const {
  if (shape == RegionShape::kCircle) return distance(p, origin) <= radius + tolerance;
  return p.x >= origin.x - tolerance && p.x <= origin.x + width + tolerance &&
         p.y >= origin.y - tolerance && p.y <= origin.y + height + tolerance;
}

Instance::Instance(std::vector<GeoPoint> points, PowerTree tree, double repair_time,
                   double fault_prob, GenerationInfo info)
    : points_(std::move(points)),
      tree_(std::move(tree)),
      repair_time_(repair_time),
      fault_prob_(fault_prob),
      info_(info) {
  const int n = tree_.node_count();
  if (static_cast<int>(points_.size()) != n + 1) {
    throw std::invalid_argument("expected " + std::to_string(n + 1) +
                                " points (depot + nodes), got " + std::to_string(points_.size()));
  }
  if (!(fault_prob_ > 0.0 && fault_prob_ < 1.0)) {
    throw std::invalid_argument("fault probability must lie in (0,1)");
  }
  if (!(std::isfinite(repair_time_) && repair_time_ >= 0.0)) {
    throw std::invalid_argument("repair time must be finite and non-negative");
  }
  for (const GeoPoint& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("point coordinates must be finite");
    }
  }

  stride_ = points_.size();
  dist_.assign(stride_ * stride_, 0.0);
  for (std::size_t i = 0; i < stride_; ++i) {
    for (std::size_t j = i + 1; j < stride_; ++j) {
      const double d = trnrp::distance(points_[i], points_[j]);
      dist_[i * stride_ + j] = d;
      dist_[j * stride_ + i] = d;
      max_distance_ = std::max(max_distance_, d);
    }
  }
}

Instance Instance::with_parameters(double repair_time, double fault_prob) const {
  return Instance(points_, tree_, repair_time, fault_prob, info_);
}

}  // namespace trnrp
