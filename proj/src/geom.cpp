#include "spotpath/geom.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <tuple>

namespace spotpath::geom {
namespace {

std::string format_point(Point2 p) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%.6f, %.6f)", p.x, p.y);
  return buf;
}

int orientation(Point2 a, Point2 b, Point2 c) {
  const double v = cross(b - a, c - a);
  const double scale = std::max({norm(b - a), norm(c - a), 1.0});
  if (std::abs(v) <= 1e-12 * scale * scale) return 0;
  return v > 0 ? 1 : -1;
}

bool on_segment(Point2 p, Point2 a, Point2 b) {
  return std::min(a.x, b.x) - 1e-12 <= p.x && p.x <= std::max(a.x, b.x) + 1e-12 &&
         std::min(a.y, b.y) - 1e-12 <= p.y && p.y <= std::max(a.y, b.y) + 1e-12;
}

}  // namespace

Polygon::Polygon(std::vector<Point2> ring) {
  for (const Point2& p : ring) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw GeometryError(GeometryErrorKind::kNonFinite, "polygon has a non-finite coordinate");
    }
  }
  std::vector<Point2> pts;
  pts.reserve(ring.size());
  for (const Point2& p : ring) {
    if (pts.empty() || distance(pts.back(), p) >= kDuplicateVertexTolerance) pts.push_back(p);
  }
  while (pts.size() > 1 && distance(pts.front(), pts.back()) < kDuplicateVertexTolerance) {
    pts.pop_back();
  }
  if (pts.size() < 3) {
    throw GeometryError(GeometryErrorKind::kDegenerateInput,
                        "polygon needs at least 3 distinct vertices");
  }
  const double a = signed_area(pts);
  if (std::abs(a) < 1e-12) {
    throw GeometryError(GeometryErrorKind::kDegenerateInput, "polygon has zero area");
  }
  if (a < 0) std::reverse(pts.begin(), pts.end());

  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a0 = pts[i];
    const Point2 a1 = pts[(i + 1) % n];
    const Point2 a2 = pts[(i + 2) % n];
    // Spike: the next edge folds back onto this one.
    if (orientation(a0, a1, a2) == 0 && dot(a1 - a0, a2 - a1) < 0) {
      throw GeometryError(GeometryErrorKind::kSelfIntersection,
                          "polygon folds back on itself at " + format_point(a1));
    }
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the closing edge
      if (segments_intersect(a0, a1, pts[j], pts[(j + 1) % n])) {
        throw GeometryError(GeometryErrorKind::kSelfIntersection,
                            "polygon edges " + std::to_string(i) + " and " + std::to_string(j) +
                                " intersect near " + format_point(a0));
      }
    }
  }

  const auto first = std::min_element(pts.begin(), pts.end(), [](Point2 l, Point2 r) {
    return l.x < r.x || (l.x == r.x && l.y < r.y);
  });
  std::rotate(pts.begin(), first, pts.end());
  vertices_ = std::move(pts);
}

double Polygon::area() const { return signed_area(vertices_); }

double Polygon::perimeter() const {
  double total = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) total += distance(vertex(i), vertex(i + 1));
  return total;
}

Point2 Polygon::centroid() const {
  double cx = 0.0, cy = 0.0, a2 = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Point2 p = vertex(i);
    const Point2 q = vertex(i + 1);
    const double w = cross(p, q);
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
    a2 += w;
  }
  return {cx / (3.0 * a2), cy / (3.0 * a2)};
}

double Polyline::length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) total += distance(points[i - 1], points[i]);
  return total;
}

void append_point(std::vector<Point2>& points, Point2 p, double tolerance) {
  if (points.empty() || distance(points.back(), p) > tolerance) points.push_back(p);
}

double signed_area(std::span<const Point2> ring) {
  double a = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    a += cross(ring[i], ring[(i + 1) % ring.size()]);
  }
  return 0.5 * a;
}

double project_to_segment(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return 0.0;
  return std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
}

double distance_to_segment(Point2 p, Point2 a, Point2 b) {
  return distance(p, lerp(a, b, project_to_segment(p, a, b)));
}

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 == 0 && on_segment(c, a, b)) return true;
  if (o2 == 0 && on_segment(d, a, b)) return true;
  if (o3 == 0 && on_segment(a, c, d)) return true;
  if (o4 == 0 && on_segment(b, c, d)) return true;
  return o1 * o2 < 0 && o3 * o4 < 0;
}

bool segments_parallel(Point2 a1, Point2 a2, Point2 b1, Point2 b2, double tol) {
  const Point2 u = a2 - a1;
  const Point2 v = b2 - b1;
  return std::abs(cross(u, v)) <= tol * norm(u) * norm(v);
}

Polygon convex_hull(std::span<const Point2> points) {
  if (points.size() < 3) {
    throw GeometryError(GeometryErrorKind::kDegenerateInput, "convex hull needs at least 3 points");
  }
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(),
            [](Point2 l, Point2 r) { return l.x < r.x || (l.x == r.x && l.y < r.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // Andrew's monotone chain; collinear points are popped.
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point2& p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const Point2 p = pts[i];
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k > 0 ? k - 1 : 0);
  if (hull.size() < 3 || std::abs(signed_area(hull)) < 1e-12) {
    throw GeometryError(GeometryErrorKind::kDegenerateInput, "convex hull input is collinear");
  }
  return Polygon(std::move(hull));
}

BoundaryPoint closest_boundary_point(Point2 p, const Polygon& poly) {
  BoundaryPoint best;
  best.distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2 a = poly.vertex(i);
    const Point2 b = poly.vertex(i + 1);
    const double t = project_to_segment(p, a, b);
    const Point2 c = lerp(a, b, t);
    const double d = distance(p, c);
    if (d < best.distance - 1e-12) best = {c, i, t, d};
  }
  return best;
}

BoundaryContact closest_boundary_points(const Polygon& a, const Polygon& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (segments_intersect(a.vertex(i), a.vertex(i + 1), b.vertex(j), b.vertex(j + 1))) {
        throw GeometryError(GeometryErrorKind::kOverlap, "polygon boundaries touch or cross near " +
                                                             format_point(a.vertex(i)));
      }
    }
  }
  if (point_in_polygon(a[0], b) != Containment::kOutside ||
      point_in_polygon(b[0], a) != Containment::kOutside) {
    throw GeometryError(GeometryErrorKind::kOverlap, "one polygon contains the other");
  }

  struct Candidate {
    double d;
    std::size_t i;
    double ta;
    std::size_t j;
    double tb;
  };
  Candidate best{std::numeric_limits<double>::infinity(), 0, 0.0, 0, 0.0};
  auto consider = [&best](const Candidate& c) {
    if (!std::isfinite(best.d)) {
      best = c;
      return;
    }
    const double tol = 1e-12 * std::max(1.0, best.d);
    const bool tie = std::abs(c.d - best.d) <= tol;
    const auto key = [](const Candidate& x) { return std::tuple(x.i, x.ta, x.j, x.tb); };
    if (c.d < best.d - tol || (tie && key(c) < key(best))) best = c;
  };

  for (std::size_t i = 0; i < a.size(); ++i) {
    const Point2 a0 = a.vertex(i);
    const Point2 a1 = a.vertex(i + 1);
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Point2 b0 = b.vertex(j);
      const Point2 b1 = b.vertex(j + 1);
      // Disjoint segments attain their minimum distance at an endpoint.
      double t = project_to_segment(a0, b0, b1);
      consider({distance(a0, lerp(b0, b1, t)), i, 0.0, j, t});
      t = project_to_segment(a1, b0, b1);
      consider({distance(a1, lerp(b0, b1, t)), i, 1.0, j, t});
      t = project_to_segment(b0, a0, a1);
      consider({distance(b0, lerp(a0, a1, t)), i, t, j, 0.0});
      t = project_to_segment(b1, a0, a1);
      consider({distance(b1, lerp(a0, a1, t)), i, t, j, 1.0});
    }
  }
  const Point2 on_a = lerp(a.vertex(best.i), a.vertex(best.i + 1), best.ta);
  const Point2 on_b = lerp(b.vertex(best.j), b.vertex(best.j + 1), best.tb);
  return {on_a, on_b, distance(on_a, on_b)};
}

Containment point_in_polygon(Point2 p, const Polygon& poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = poly[j];
    const Point2 b = poly[i];
    if (distance_to_segment(p, a, b) <= kBoundaryTolerance) return Containment::kBoundary;
    if ((b.y > p.y) != (a.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside ? Containment::kInside : Containment::kOutside;
}

std::vector<SegmentSpan> classify_segment(Point2 p, Point2 q, const Polygon& poly) {
  const Point2 d = q - p;
  const double len = norm(d);
  std::vector<double> ts{0.0, 1.0};
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2 a = poly.vertex(i);
    const Point2 b = poly.vertex(i + 1);
    if (distance_to_segment(a, p, q) <= kBoundaryTolerance) ts.push_back(project_to_segment(a, p, q));
    const Point2 e = b - a;
    const double denom = cross(d, e);
    if (std::abs(denom) <= 1e-15 * len * norm(e)) continue;
    const double t = cross(a - p, e) / denom;
    const double u = cross(a - p, d) / denom;
    if (t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) ts.push_back(t);
  }
  std::sort(ts.begin(), ts.end());
  std::vector<double> cuts;
  for (double t : ts) {
    if (cuts.empty() || (t - cuts.back()) * len > 1e-10) cuts.push_back(t);
  }
  cuts.back() = 1.0;

  std::vector<SegmentSpan> spans;
  for (std::size_t k = 1; k < cuts.size(); ++k) {
    const double t0 = cuts[k - 1];
    const double t1 = cuts[k];
    const Containment c = point_in_polygon(lerp(p, q, 0.5 * (t0 + t1)), poly);
    if (!spans.empty() && spans.back().where == c) {
      spans.back().t1 = t1;
    } else {
      spans.push_back({t0, t1, c});
    }
  }
  if (spans.empty()) spans.push_back({0.0, 1.0, point_in_polygon(lerp(p, q, 0.5), poly)});
  return spans;
}

std::vector<double> segment_clips_polygon(Point2 p, Point2 q, const Polygon& poly) {
  const auto spans = classify_segment(p, q, poly);
  std::vector<double> out;
  for (std::size_t k = 1; k < spans.size(); ++k) {
    const bool before = spans[k - 1].where == Containment::kInside;
    const bool after = spans[k].where == Containment::kInside;
    if (before != after) out.push_back(spans[k].t0);
  }
  return out;
}

bool segment_enters_interior(Point2 p, Point2 q, const Polygon& poly) {
  for (const SegmentSpan& s : classify_segment(p, q, poly)) {
    if (s.where == Containment::kInside) return true;
  }
  return false;
}

Width minimum_width(const Polygon& convex) {
  const std::size_t n = convex.size();
  Width best{std::numeric_limits<double>::infinity(), 0.0};
  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = convex.vertex(i);
    const Point2 e = convex.vertex(i + 1) - a;
    const double len = norm(e);
    // Advance the antipodal pointer while the supported height grows.
    for (std::size_t guard = 0; guard < n; ++guard) {
      if (cross(e, convex.vertex(j + 1) - a) <= cross(e, convex.vertex(j) - a)) break;
      j = (j + 1) % n;
    }
    const double w = cross(e, convex.vertex(j) - a) / len;
    if (w < best.width) best = {w, std::atan2(e.y, e.x)};
  }
  return best;
}

Ring::Ring(Polygon polygon) : polygon_(std::move(polygon)) {
  cumulative_.reserve(polygon_.size());
  double s = 0.0;
  for (std::size_t i = 0; i < polygon_.size(); ++i) {
    cumulative_.push_back(s);
    s += distance(polygon_.vertex(i), polygon_.vertex(i + 1));
  }
  perimeter_ = s;
}

double Ring::normalize(double s) const {
  if (perimeter_ <= 0.0) return 0.0;
  double r = std::fmod(s, perimeter_);
  if (r < 0.0) r += perimeter_;
  if (r >= perimeter_ - 1e-12) r = 0.0;
  return r;
}

double Ring::position_of(Point2 p) const {
  const BoundaryPoint bp = closest_boundary_point(p, polygon_);
  const double len = distance(polygon_.vertex(bp.edge), polygon_.vertex(bp.edge + 1));
  return normalize(cumulative_[bp.edge] + bp.t * len);
}

Point2 Ring::point_at(double s) const {
  s = normalize(s);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  const std::size_t i = static_cast<std::size_t>(std::distance(cumulative_.begin(), it)) - 1;
  const Point2 a = polygon_.vertex(i);
  const Point2 b = polygon_.vertex(i + 1);
  const double len = distance(a, b);
  if (len == 0.0) return a;
  return lerp(a, b, std::clamp((s - cumulative_[i]) / len, 0.0, 1.0));
}

double Ring::ccw_distance(double from, double to) const { return normalize(to - from); }

double Ring::shorter_distance(double from, double to) const {
  const double d = ccw_distance(from, to);
  return std::min(d, d == 0.0 ? 0.0 : perimeter_ - d);
}

std::vector<Point2> Ring::walk(double from, double to, bool ccw) const {
  if (!ccw) {
    auto pts = walk(to, from, true);
    std::reverse(pts.begin(), pts.end());
    return pts;
  }
  from = normalize(from);
  const double span = ccw_distance(from, to);
  std::vector<std::pair<double, Point2>> passed;
  for (std::size_t i = 0; i < polygon_.size(); ++i) {
    const double o = ccw_distance(from, cumulative_[i]);
    if (o > 1e-12 && o < span - 1e-12) passed.emplace_back(o, polygon_[i]);
  }
  std::sort(passed.begin(), passed.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  std::vector<Point2> pts;
  append_point(pts, point_at(from));
  for (const auto& [o, v] : passed) append_point(pts, v);
  append_point(pts, point_at(to));
  return pts;
}

std::vector<Point2> Ring::walk_shorter(double from, double to) const {
  const double d = ccw_distance(from, to);
  return walk(from, to, d <= perimeter_ - d);
}

std::vector<Point2> Ring::full_loop(double from) const {
  from = normalize(from);
  std::vector<std::pair<double, Point2>> passed;
  for (std::size_t i = 0; i < polygon_.size(); ++i) {
    const double o = ccw_distance(from, cumulative_[i]);
    if (o > 1e-12) passed.emplace_back(o, polygon_[i]);
  }
  std::sort(passed.begin(), passed.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  std::vector<Point2> pts;
  const Point2 start = point_at(from);
  pts.push_back(start);
  for (const auto& [o, v] : passed) append_point(pts, v);
  if (pts.size() > 1 && distance(pts.back(), start) <= 1e-9) pts.pop_back();
  pts.push_back(start);
  return pts;
}

}  // namespace spotpath::geom
