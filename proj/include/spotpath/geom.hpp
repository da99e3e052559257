#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spotpath {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace geom {

/// Point in a local planar frame, meters.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(Point2 a, double s) { return {a.x * s, a.y * s}; }
inline Point2 operator*(double s, Point2 a) { return {a.x * s, a.y * s}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }
inline Point2 lerp(Point2 a, Point2 b, double t) { return a + (b - a) * t; }

/// Counter-clockwise rotation about the origin.
inline Point2 rotate(Point2 p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

/// Distance below which a point counts as lying on a boundary.
inline constexpr double kBoundaryTolerance = 1e-9;
/// Consecutive vertices closer than this are merged on ingest.
inline constexpr double kDuplicateVertexTolerance = 1e-6;
inline constexpr double kParallelTolerance = 1e-9;

enum class GeometryErrorKind { kDegenerateInput, kNonFinite, kSelfIntersection, kOverlap };

class GeometryError : public Error {
 public:
  GeometryError(GeometryErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
  GeometryErrorKind kind() const { return kind_; }

 private:
  GeometryErrorKind kind_;
};

/// Simple polygon, implicitly closed. Construction normalizes the ring: the
/// closing duplicate and near-duplicate consecutive vertices are dropped,
/// orientation is made counter-clockwise and the ring starts at its
/// lexicographically smallest vertex. Self-intersecting, non-finite or
/// zero-area rings are rejected with GeometryError.
class Polygon {
 public:
  Polygon() = default;
  explicit Polygon(std::vector<Point2> ring);

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  const Point2& operator[](std::size_t i) const { return vertices_[i]; }
  const Point2& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

  double area() const;
  double perimeter() const;
  Point2 centroid() const;

 private:
  std::vector<Point2> vertices_;
};

/// Open path through ordered waypoints. An empty or single-point polyline has
/// zero length.
struct Polyline {
  std::vector<Point2> points;

  double length() const;
  bool empty() const { return points.empty(); }
};

/// Appends `p` unless it coincides with the current last point.
void append_point(std::vector<Point2>& points, Point2 p, double tolerance = 1e-9);

double signed_area(std::span<const Point2> ring);

/// Closest point on segment ab to p, as a parameter in [0,1].
double project_to_segment(Point2 p, Point2 a, Point2 b);
double distance_to_segment(Point2 p, Point2 a, Point2 b);

/// True when closed segments ab and cd share at least one point.
bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d);

/// |cross(a2-a1, b2-b1)| <= tol * |a2-a1| * |b2-b1|.
bool segments_parallel(Point2 a1, Point2 a2, Point2 b1, Point2 b2,
                       double tol = kParallelTolerance);

/// Minimal convex polygon containing `points` (collinear hull vertices
/// dropped). Throws GeometryError(kDegenerateInput) for fewer than three
/// points or collinear input.
Polygon convex_hull(std::span<const Point2> points);
/// Inward offset of `poly` at distance d > 0: sharp at convex corners, arcs
/// (as chords within 1e-4 m) around reflex corners. The result
/// may split into several contours; an empty list means the polygon is
/// thinner than 2d everywhere.
std::vector<Polygon> offset_inward(const Polygon& poly, double d);

/// Outward offset at distance d >= 0 with mitered corners.
Polygon offset_outward(const Polygon& poly, double d);

/// Parts of `subject` inside `clip`.
std::vector<Polygon> intersect(const Polygon& subject, const Polygon& clip);

struct BoundaryPoint {
  Point2 point;
  std::size_t edge = 0;  // edge index, from vertex `edge` to `edge + 1`
  double t = 0.0;        // parameter along that edge
  double distance = 0.0;
};

/// Closest boundary point of `poly` to `p`; ties go to the lowest edge index.
BoundaryPoint closest_boundary_point(Point2 p, const Polygon& poly);

struct BoundaryContact {
  Point2 on_a;
  Point2 on_b;
  double distance = 0.0;
};

/// Pair of boundary points realizing the minimum distance between two
/// disjoint polygons. Ties go to the lowest edge index of `a`, then the lowest
/// parameter along it (then the same for `b`). Throws
/// GeometryError(kOverlap) when the polygons touch or overlap.
BoundaryContact closest_boundary_points(const Polygon& a, const Polygon& b);

enum class Containment { kInside, kBoundary, kOutside };

/// Even-odd classification with boundary tolerance kBoundaryTolerance.
Containment point_in_polygon(Point2 p, const Polygon& poly);

struct SegmentSpan {
  double t0 = 0.0;
  double t1 = 0.0;
  Containment where = Containment::kOutside;
};

/// Splits segment pq into maximal spans with uniform containment with
/// respect to `poly`. Spans cover [0,1] in order.
std::vector<SegmentSpan> classify_segment(Point2 p, Point2 q, const Polygon& poly);

/// Sorted parameters t in (0,1) at which segment pq enters or leaves the
/// interior of `poly`. Grazing contacts that never reach the interior are not
/// reported.
std::vector<double> segment_clips_polygon(Point2 p, Point2 q, const Polygon& poly);

/// True when the open segment pq passes through the interior of `poly`.
bool segment_enters_interior(Point2 p, Point2 q, const Polygon& poly);

struct Width {
  double width = 0.0;
  double direction = 0.0;  // angle of the supporting edge, radians
};

/// Minimum width of a convex polygon (smallest distance between parallel
/// supporting lines), by rotating calipers.
Width minimum_width(const Polygon& convex);

/// Arc-length parameterization of a polygon boundary, counter-clockwise from
/// vertex 0. Positions are normalized to [0, perimeter).
class Ring {
 public:
  Ring() = default;
  explicit Ring(Polygon polygon);

  const Polygon& polygon() const { return polygon_; }
  double perimeter() const { return perimeter_; }

  double normalize(double s) const;
  /// Position of the boundary point closest to p.
  double position_of(Point2 p) const;
  Point2 point_at(double s) const;
  /// Counter-clockwise distance from `from` to `to`, in [0, perimeter).
  double ccw_distance(double from, double to) const;
  double shorter_distance(double from, double to) const;

  /// Waypoints from `from` to `to` along the boundary, including both
  /// endpoints and every vertex passed.
  std::vector<Point2> walk(double from, double to, bool ccw) const;
  /// Walk along the shorter direction (counter-clockwise on ties).
  std::vector<Point2> walk_shorter(double from, double to) const;
  /// One complete counter-clockwise lap starting and ending at `from`.
  std::vector<Point2> full_loop(double from) const;

 private:
  Polygon polygon_;
  std::vector<double> cumulative_;  // arc length at each vertex
  double perimeter_ = 0.0;
};

}  // namespace geom
}  // namespace spotpath
