#pragma once

#include <algorithm>
#include <vector>

#include "spotpath/geom.hpp"

namespace spotpath::detail {

// Sorted x-coordinates where the horizontal line at `y` crosses the ring,
// using the half-open rule so shared vertices are counted once. Consecutive
// pairs bound the interior.
inline std::vector<double> scanline(const std::vector<geom::Point2>& ring, double y) {
  std::vector<double> xs;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const geom::Point2 a = ring[i];
    const geom::Point2 b = ring[(i + 1) % n];
    if ((a.y <= y && y < b.y) || (b.y <= y && y < a.y)) {
      xs.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
    }
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

inline std::vector<geom::Point2> rotated(const std::vector<geom::Point2>& pts, double angle) {
  std::vector<geom::Point2> out;
  out.reserve(pts.size());
  for (const geom::Point2& p : pts) out.push_back(geom::rotate(p, angle));
  return out;
}

}  // namespace spotpath::detail
