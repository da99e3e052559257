#include "spotpath/avoid.hpp"

#include <cstdio>
#include <limits>

namespace spotpath::avoid {
namespace {

using geom::Containment;

struct Group {
  Polygon hull;
  std::string name;
};

bool interiors_overlap(const Polygon& a, const Polygon& b) {
  double area = 0.0;
  for (const Polygon& piece : geom::intersect(a, b)) area += piece.area();
  return area > 1e-9;
}

std::vector<Group> merge_overlapping(std::span<const ObstacleHull> hulls) {
  std::vector<Group> groups;
  for (const ObstacleHull& h : hulls) groups.push_back({h.hull, h.id});
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < groups.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < groups.size() && !merged; ++j) {
        if (!interiors_overlap(groups[i].hull, groups[j].hull)) continue;
        std::vector<Point2> pts = groups[i].hull.vertices();
        pts.insert(pts.end(), groups[j].hull.vertices().begin(), groups[j].hull.vertices().end());
        groups[i] = {geom::convex_hull(pts), groups[i].name + "+" + groups[j].name};
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
      }
    }
  }
  return groups;
}

bool left_of(Point2 origin, Point2 dir_to, Point2 v, double side) {
  const Point2 d = dir_to - origin;
  const Point2 w = v - origin;
  return geom::cross(d, w) * side >= -1e-9 * geom::norm(d) * geom::norm(w);
}

// Hull vertex seen from p with the whole hull on the `side` (+1 left, -1
// right) of the ray p -> vertex. Collinear candidates: the nearest.
std::size_t tangent_from(Point2 p, const Polygon& h, double side) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double d = geom::distance(p, h[k]);
    if (d < 1e-9) return k;
    bool ok = true;
    for (std::size_t j = 0; j < h.size() && ok; ++j) ok = left_of(p, h[k], h[j], side);
    if (ok && d < best_d) {
      best = k;
      best_d = d;
    }
  }
  return best;
}

// Hull vertex from which the ray towards q keeps the hull on `side`.
std::size_t tangent_to(Point2 q, const Polygon& h, double side) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double d = geom::distance(q, h[k]);
    if (d < 1e-9) return k;
    bool ok = true;
    for (std::size_t j = 0; j < h.size() && ok; ++j) ok = left_of(h[k], q, h[j], side);
    if (ok && d < best_d) {
      best = k;
      best_d = d;
    }
  }
  return best;
}

double length_of(const std::vector<Point2>& pts) {
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) total += geom::distance(pts[i - 1], pts[i]);
  return total;
}

std::vector<Point2> tangent_side(Point2 p, Point2 q, const Polygon& h, double side) {
  const std::size_t n = h.size();
  const std::size_t a = tangent_from(p, h, side);
  const std::size_t b = tangent_to(q, h, side);
  std::vector<Point2> pts{p};
  // Hull on the left means walking it counter-clockwise.
  for (std::size_t k = a, steps = 0; steps <= n; ++steps) {
    geom::append_point(pts, h[k]);
    if (k == b) break;
    k = side > 0 ? (k + 1) % n : (k + n - 1) % n;
  }
  geom::append_point(pts, q);
  return pts;
}

std::vector<Point2> tangent_detour(Point2 p, Point2 q, const Polygon& h) {
  auto left = tangent_side(p, q, h, 1.0);
  auto right = tangent_side(p, q, h, -1.0);
  return length_of(right) < length_of(left) ? right : left;
}

std::vector<Point2> follow_side(Point2 p, Point2 q, const Polygon& h, bool ccw) {
  const std::size_t n = h.size();
  const Point2 contact = geom::lerp(p, q, geom::segment_clips_polygon(p, q, h).front());
  const geom::BoundaryPoint bp = geom::closest_boundary_point(contact, h);
  std::vector<Point2> pts{p};
  geom::append_point(pts, contact);
  std::size_t k = ccw ? (bp.edge + 1) % n : bp.edge;
  for (std::size_t steps = 0; steps < n; ++steps) {
    geom::append_point(pts, h[k]);
    if (!geom::segment_enters_interior(h[k], q, h)) break;
    k = ccw ? (k + 1) % n : (k + n - 1) % n;
  }
  geom::append_point(pts, q);
  return pts;
}

std::vector<Point2> contour_detour(Point2 p, Point2 q, const Polygon& h) {
  auto a = follow_side(p, q, h, true);
  auto b = follow_side(p, q, h, false);
  return length_of(b) < length_of(a) ? b : a;
}

std::string fmt_point(Point2 p) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%.3f, %.3f)", p.x, p.y);
  return buf;
}

}  // namespace

ObstacleHull make_hull(const Polygon& obstacle, double inflation, std::string id) {
  Polygon hull = geom::convex_hull(obstacle.vertices());
  if (inflation > 0.0) hull = geom::convex_hull(geom::offset_outward(hull, inflation).vertices());
  return {std::move(id), obstacle, std::move(hull), inflation};
}

InfeasibleEndpoint::InfeasibleEndpoint(const std::string& obstacle, Point2 where)
    : Error("endpoint " + fmt_point(where) + " lies inside the hull of obstacle " + obstacle),
      obstacle_(obstacle) {}

Polyline detour_segment(Point2 p, Point2 q, std::span<const ObstacleHull> hulls,
                        model::AvoidanceMethod method, std::vector<std::string>* warnings) {
  const std::vector<Group> groups = merge_overlapping(hulls);
  for (const Group& g : groups) {
    for (Point2 end : {p, q}) {
      if (geom::point_in_polygon(end, g.hull) == Containment::kInside) throw InfeasibleEndpoint(g.name, end);
    }
  }

  std::vector<Point2> pts{p};
  geom::append_point(pts, q);
  const std::size_t limit = 4 * hulls.size();
  for (std::size_t pass = 0;; ++pass) {
    // First crossing along the path: earliest segment, then earliest entry.
    std::size_t seg = pts.size();
    const Group* hit = nullptr;
    for (std::size_t k = 0; k + 1 < pts.size() && !hit; ++k) {
      double first = std::numeric_limits<double>::infinity();
      for (const Group& g : groups) {
        const auto ts = geom::segment_clips_polygon(pts[k], pts[k + 1], g.hull);
        if (ts.empty() || !geom::segment_enters_interior(pts[k], pts[k + 1], g.hull)) continue;
        if (ts.front() < first) {
          first = ts.front();
          hit = &g;
          seg = k;
        }
      }
    }
    if (!hit) break;
    if (pass == limit) {
      if (warnings) {
        warnings->push_back("obstacle avoidance from " + fmt_point(p) + " to " + fmt_point(q) +
                            " did not converge; path still crosses " + hit->name);
      }
      break;
    }
    const auto detour = method == model::AvoidanceMethod::kTangent
                            ? tangent_detour(pts[seg], pts[seg + 1], hit->hull)
                            : contour_detour(pts[seg], pts[seg + 1], hit->hull);
    std::vector<Point2> next(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(seg));
    for (const Point2& v : detour) geom::append_point(next, v);
    for (std::size_t k = seg + 2; k < pts.size(); ++k) geom::append_point(next, pts[k]);
    pts = std::move(next);
  }
  return {std::move(pts)};
}

Polyline contain_in_field(const Polyline& path, const Polygon& field) {
  if (path.points.empty()) return path;
  for (Point2 end : {path.points.front(), path.points.back()}) {
    if (geom::point_in_polygon(end, field) == Containment::kOutside) {
      throw Error("path endpoint " + fmt_point(end) + " lies outside the field");
    }
  }
  const geom::Ring ring(field);
  std::vector<Point2> out{path.points.front()};
  for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
    const Point2 a = path.points[i], b = path.points[i + 1];
    if (geom::distance(a, b) > 0.0) {
      for (const geom::SegmentSpan& span : geom::classify_segment(a, b, field)) {
        if (span.where != Containment::kOutside) continue;
        const Point2 exit = geom::lerp(a, b, span.t0);
        const Point2 back = geom::lerp(a, b, span.t1);
        geom::append_point(out, exit);
        for (const Point2& v : ring.walk_shorter(ring.position_of(exit), ring.position_of(back))) {
          geom::append_point(out, v);
        }
        geom::append_point(out, back);
      }
    }
    geom::append_point(out, b);
  }
  return {std::move(out)};
}

}  // namespace spotpath::avoid
