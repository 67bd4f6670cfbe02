#pragma once

#include <cmath>

namespace trnrp {

struct GeoPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

inline double distance(const GeoPoint& a, const GeoPoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// True when segments [a,b] and [c,d] cross. Segments that only touch at a
/// shared endpoint do not count; collinear overlap does.
bool segments_cross(const GeoPoint& a, const GeoPoint& b, const GeoPoint& c, const GeoPoint& d);

}  // namespace trnrp
