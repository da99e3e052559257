#include <algorithm>
#include <cmath>
#include <vector>

#include "spotpath/coverage.hpp"

namespace spotpath::coverage {
namespace {

constexpr double kMiterLimit = 10.0;

// Convex polygon, counter-clockwise.
using Shape = std::vector<Point2>;

bool contains(const Shape& s, Point2 p) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (geom::cross(s[(i + 1) % s.size()] - s[i], p - s[i]) < -1e-12) return false;
  }
  return true;
}

Shape ccw(Shape s) {
  if (geom::signed_area(s) < 0.0) std::reverse(s.begin(), s.end());
  return s;
}

Shape segment_rect(Point2 a, Point2 b, double r) {
  const Point2 d = (b - a) * (1.0 / geom::distance(a, b));
  const Point2 n{-d.y * r, d.x * r};
  return ccw({a - n, b - n, b + n, a + n});
}

// Wedge filling the outside of the turn at `p` from direction d1 to d2.
std::vector<Shape> join(Point2 p, Point2 d1, Point2 d2, double r) {
  const double c = geom::cross(d1, d2);
  const double dot = geom::dot(d1, d2);
  if (std::abs(c) < 1e-12 && dot > 0.0) return {};
  if (std::abs(c) < 1e-12) {
    // Reversal: square cap.
    const Point2 n{-d1.y * r, d1.x * r};
    const Point2 f = d1 * r;
    return {ccw({p - n, p + f - n, p + f + n, p + n})};
  }
  // Outer side is right of travel for a left turn and vice versa.
  const double side = c > 0.0 ? -1.0 : 1.0;
  const Point2 n1 = Point2{-d1.y, d1.x} * (side * r);
  const Point2 n2 = Point2{-d2.y, d2.x} * (side * r);
  const double ratio = 1.0 / std::sqrt(0.5 * (1.0 + dot));  // 1 / cos(half turn)
  if (ratio > kMiterLimit) return {ccw({p, p + n1, p + n2})};
  const Point2 bis = n1 + n2;
  const Point2 miter = p + bis * (r * ratio / geom::norm(bis));
  return {ccw({p, p + n1, miter}), ccw({p, miter, p + n2})};
}

}  // namespace

CoverageMetrics coverage_metrics(const Polyline& path, const Polygon& patch, double operating_width) {
  CoverageMetrics m;
  const double r = 0.5 * operating_width;
  const double h = std::min(operating_width / 20.0, 0.1);
  m.cell_size = h;

  std::vector<Point2> pts;
  for (const Point2& p : path.points) geom::append_point(pts, p);
  std::vector<Shape> rects, joins;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) rects.push_back(segment_rect(pts[i], pts[i + 1], r));
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const Point2 d1 = (pts[i] - pts[i - 1]) * (1.0 / geom::distance(pts[i - 1], pts[i]));
    const Point2 d2 = (pts[i + 1] - pts[i]) * (1.0 / geom::distance(pts[i], pts[i + 1]));
    for (Shape& s : join(pts[i], d1, d2, r)) joins.push_back(std::move(s));
  }

  double min_x = patch[0].x, max_x = min_x, min_y = patch[0].y, max_y = min_y;
  for (const Point2& v : patch.vertices()) {
    min_x = std::min(min_x, v.x);
    max_x = std::max(max_x, v.x);
    min_y = std::min(min_y, v.y);
    max_y = std::max(max_y, v.y);
  }
  const std::size_t nx = static_cast<std::size_t>(std::ceil((max_x - min_x) / h));
  const std::size_t ny = static_cast<std::size_t>(std::ceil((max_y - min_y) / h));
  auto center = [&](std::size_t ix, std::size_t iy) {
    return Point2{min_x + (ix + 0.5) * h, min_y + (iy + 0.5) * h};
  };

  std::vector<char> inside(nx * ny, 0);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      inside[iy * nx + ix] = geom::point_in_polygon(center(ix, iy), patch) != geom::Containment::kOutside;
    }
  }

  std::vector<unsigned> hits(nx * ny, 0);
  std::vector<char> joined(nx * ny, 0);
  auto rasterize = [&](const Shape& s, auto&& mark) {
    double x0 = s[0].x, x1 = x0, y0 = s[0].y, y1 = y0;
    for (const Point2& p : s) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    const auto lo = [&](double v, double o) { return static_cast<long>(std::floor((v - o) / h - 0.5)); };
    const long ix0 = std::max(0L, lo(x0, min_x)), iy0 = std::max(0L, lo(y0, min_y));
    const long ix1 = std::min(long(nx) - 1, lo(x1, min_x) + 1), iy1 = std::min(long(ny) - 1, lo(y1, min_y) + 1);
    for (long iy = iy0; iy <= iy1; ++iy) {
      for (long ix = ix0; ix <= ix1; ++ix) {
        const std::size_t k = std::size_t(iy) * nx + std::size_t(ix);
        if (inside[k] && contains(s, center(std::size_t(ix), std::size_t(iy)))) mark(k);
      }
    }
  };
  for (const Shape& s : rects) rasterize(s, [&](std::size_t k) { ++hits[k]; });
  for (const Shape& s : joins) rasterize(s, [&](std::size_t k) { joined[k] = 1; });

  const double cell = h * h;
  double gap_cells = 0.0, pair_cells = 0.0;
  for (std::size_t k = 0; k < inside.size(); ++k) {
    if (!inside[k]) continue;
    if (hits[k] == 0 && !joined[k]) gap_cells += 1.0;
    pair_cells += 0.5 * double(hits[k]) * (double(hits[k]) - 1.0);
  }
  m.gap_area = gap_cells * cell;
  m.covered_area = std::max(0.0, patch.area() - m.gap_area);
  m.overlap_area = pair_cells * cell;
  m.gap_fraction = m.gap_area / patch.area();
  return m;
}

CoverageMetrics coverage_metrics(const CoveragePlan& plan, const Polygon& patch, double operating_width) {
  return coverage_metrics(plan.path, patch, operating_width);
}

}  // namespace spotpath::coverage
