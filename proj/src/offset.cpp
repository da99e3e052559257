#include <boost/geometry.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spotpath/geom.hpp"

namespace spotpath::geom {
namespace {

namespace bg = boost::geometry;
using BgPoint = bg::model::d2::point_xy<double>;
using BgPolygon = bg::model::polygon<BgPoint, /*clockwise=*/false, /*closed=*/false>;
using BgMulti = bg::model::multi_polygon<BgPolygon>;

constexpr double kMiterLimit = 10.0;
constexpr double kMinArea = 1e-9;
// Largest gap between a rounded join's chords and the true arc.
constexpr double kArcSagitta = 1e-4;

BgPolygon to_bg(const Polygon& poly) {
  BgPolygon out;
  for (const Point2& p : poly.vertices()) bg::append(out.outer(), BgPoint(p.x, p.y));
  return out;
}

// Drops vertices lying on the line through their neighbours.
std::vector<Point2> drop_collinear(std::vector<Point2> ring) {
  bool changed = true;
  while (changed && ring.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < ring.size() && ring.size() > 3; ++i) {
      const Point2 prev = ring[(i + ring.size() - 1) % ring.size()];
      const Point2 next = ring[(i + 1) % ring.size()];
      if (distance_to_segment(ring[i], prev, next) < 1e-9) {
        ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
      }
    }
  }
  return ring;
}

std::vector<Polygon> from_bg(const BgMulti& multi) {
  std::vector<Polygon> out;
  for (const BgPolygon& p : multi) {
    if (std::abs(bg::area(p)) < kMinArea) continue;
    std::vector<Point2> ring;
    ring.reserve(p.outer().size());
    for (const BgPoint& v : p.outer()) ring.push_back({v.x(), v.y()});
    try {
      out.emplace_back(drop_collinear(std::move(ring)));
    } catch (const GeometryError&) {
      // Slivers below the duplicate-vertex tolerance carry no usable area.
    }
  }
  return out;
}

template <typename Join>
BgMulti buffer(const Polygon& poly, double signed_distance, const Join& join) {
  BgMulti out;
  bg::strategy::buffer::distance_symmetric<double> dist(signed_distance);
  bg::strategy::buffer::end_flat end;
  bg::strategy::buffer::point_square point;
  bg::strategy::buffer::side_straight side;
  bg::buffer(to_bg(poly), out, dist, side, join, end, point);
  return out;
}

}  // namespace

std::vector<Polygon> offset_inward(const Polygon& poly, double d) {
  if (!(d > 0.0)) throw Error("offset distance must be positive");
  // Around reflex vertices the true offset is an arc; its chords stay within
  // kArcSagitta of it.
  const double half_step = std::acos(std::max(-1.0, 1.0 - kArcSagitta / d));
  const auto per_circle = static_cast<std::size_t>(std::clamp(std::ceil(std::numbers::pi / half_step), 16.0, 2048.0));
  return from_bg(buffer(poly, -d, bg::strategy::buffer::join_round(per_circle)));
}

Polygon offset_outward(const Polygon& poly, double d) {
  if (d <= 0.0) return poly;
  auto parts = from_bg(buffer(poly, d, bg::strategy::buffer::join_miter(kMiterLimit)));
  if (parts.size() != 1) throw Error("outward offset did not produce a single contour");
  return parts.front();
}

std::vector<Polygon> intersect(const Polygon& subject, const Polygon& clip) {
  BgMulti out;
  bg::intersection(to_bg(subject), to_bg(clip), out);
  return from_bg(out);
}

}  // namespace spotpath::geom
