#include "trnrp/geometry.hpp"

#include <algorithm>

namespace trnrp {
namespace {

int orientation(const GeoPoint& a, const GeoPoint& b, const GeoPoint& c) {
  const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool on_segment(const GeoPoint& a, const GeoPoint& b, const GeoPoint& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_cross(const GeoPoint& a, const GeoPoint& b, const GeoPoint& c, const GeoPoint& d) {
  const bool shares_endpoint = a == c || a == d || b == c || b == d;
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);

  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
  if (shares_endpoint) {
    // Touching at a common endpoint is allowed unless the segments overlap along a line.
    if (o1 == 0 && o2 == 0) {
      const GeoPoint& shared = (a == c || b == c) ? c : d;
      const GeoPoint& other_cd = (shared == c) ? d : c;
      const GeoPoint& other_ab = (shared == a) ? b : a;
      // Overlap iff the two free endpoints lie on the same side of the shared one.
      const double dot = (other_ab.x - shared.x) * (other_cd.x - shared.x) +
                         (other_ab.y - shared.y) * (other_cd.y - shared.y);
      return dot > 0.0;
    }
    return false;
  }
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

}  // namespace trnrp
