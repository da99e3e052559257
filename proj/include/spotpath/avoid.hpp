#pragma once

#include <span>
#include <string>
#include <vector>

#include "spotpath/geom.hpp"
#include "spotpath/model.hpp"

namespace spotpath::avoid {

using geom::Point2;
using geom::Polygon;
using geom::Polyline;

/// Convex stand-in for an obstacle, optionally grown by a safety margin.
struct ObstacleHull {
  std::string id;
  Polygon original;
  Polygon hull;
  double inflation = 0.0;
};

ObstacleHull make_hull(const Polygon& obstacle, double inflation = 0.0, std::string id = {});

/// Raised when a path endpoint lies strictly inside an obstacle hull.
class InfeasibleEndpoint : public Error {
 public:
  InfeasibleEndpoint(const std::string& obstacle, Point2 where);
  const std::string& obstacle() const { return obstacle_; }

 private:
  std::string obstacle_;
};

/// Reroutes segment pq around the hulls it crosses. Hulls whose interiors
/// overlap are first merged into their common convex hull. Each pass detours
/// the first crossing along the path; at most 4 * |hulls| passes are made and
/// a warning is appended when crossings remain.
///
/// kTangent: shorter of the two tangent-point chains (the shortest path around
/// a single convex hull). kContourFollowing: straight to the first contact,
/// then along the hull until q is in sight, shorter of both directions.
Polyline detour_segment(Point2 p, Point2 q, std::span<const ObstacleHull> hulls,
                        model::AvoidanceMethod method = model::AvoidanceMethod::kTangent,
                        std::vector<std::string>* warnings = nullptr);

/// Replaces every stretch of `path` outside `field` with the shorter boundary
/// chain between the exit and re-entry points. Throws Error if an endpoint is
/// outside the field.
Polyline contain_in_field(const Polyline& path, const Polygon& field);

}  // namespace spotpath::avoid
