#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles/oracles.hpp"
#include "spotpath/avoid.hpp"

using namespace spotpath;
using namespace spotpath::avoid;
using fixtures::rect;
using geom::Point2;

namespace {

bool enters_any_hull(const Polyline& path, const std::vector<ObstacleHull>& hulls, double step = 0.1) {
  for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
    const Point2 a = path.points[i], b = path.points[i + 1];
    const int n = std::max(1, static_cast<int>(std::ceil(geom::distance(a, b) / step)));
    for (int k = 0; k <= n; ++k) {
      const Point2 s = geom::lerp(a, b, static_cast<double>(k) / n);
      for (const ObstacleHull& h : hulls) {
        if (oracle::classify(s, h.hull.vertices(), 1e-7) == oracle::Where::kInside) return true;
      }
    }
  }
  return false;
}

bool leaves_field(const Polyline& path, const geom::Polygon& field, double step = 0.1) {
  for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
    const Point2 a = path.points[i], b = path.points[i + 1];
    const int n = std::max(1, static_cast<int>(std::ceil(geom::distance(a, b) / step)));
    for (int k = 0; k <= n; ++k) {
      const Point2 s = geom::lerp(a, b, static_cast<double>(k) / n);
      if (oracle::classify(s, field.vertices(), 1e-7) == oracle::Where::kOutside) return true;
    }
  }
  return false;
}

}  // namespace

TEST(Hull, ContainsOriginalAndInflates) {
  const geom::Polygon pond({{0, 0}, {4, 0}, {4, 3}, {2, 1}, {0, 3}});
  const ObstacleHull h = make_hull(pond, 0.0, "pond");
  EXPECT_EQ(h.id, "pond");
  EXPECT_EQ(h.hull.size(), 4u);
  for (const Point2& v : pond.vertices()) EXPECT_NE(geom::point_in_polygon(v, h.hull), geom::Containment::kOutside);
  const ObstacleHull grown = make_hull(pond, 0.5);
  EXPECT_NEAR(grown.hull.area(), 5.0 * 4.0, 1e-9);
  for (std::size_t i = 0; i < grown.hull.size(); ++i) {
    EXPECT_GT(geom::cross(grown.hull.vertex(i + 1) - grown.hull.vertex(i),
                          grown.hull.vertex(i + 2) - grown.hull.vertex(i + 1)),
              0.0);
  }
}

TEST(Detour, MissingHullIsStraight) {
  const std::vector<ObstacleHull> hulls{make_hull(rect(0, 0, 1, 1))};
  const Polyline out = detour_segment({-2, 3}, {3, 3}, hulls);
  EXPECT_EQ(out.points, (std::vector<Point2>{{-2, 3}, {3, 3}}));
}

TEST(Detour, SquareCentredOnSegment) {
  const std::vector<ObstacleHull> hulls{make_hull(rect(-1, -1, 1, 1))};
  const Polyline out = detour_segment({-3, 0}, {3, 0}, hulls);
  ASSERT_EQ(out.points.size(), 4u);
  const double expected = oracle::visibility_shortest({-3, 0}, {3, 0}, {hulls[0].hull.vertices()});
  EXPECT_NEAR(out.length(), expected, 1e-9);
  EXPECT_NEAR(expected, 2 * std::sqrt(5.0) + 2, 1e-12);
  EXPECT_FALSE(enters_any_hull(out, hulls));
}

TEST(Detour, StackedHullsAreCrossingFree) {
  const std::vector<ObstacleHull> hulls{make_hull(rect(2, -1, 4, 1), 0, "a"), make_hull(rect(6, -2, 8, 0.5), 0, "b")};
  std::vector<std::string> warnings;
  const Polyline out = detour_segment({0, 0}, {10, 0}, hulls, model::AvoidanceMethod::kTangent, &warnings);
  EXPECT_FALSE(enters_any_hull(out, hulls));
  EXPECT_GE(out.length(), 10.0);
  EXPECT_TRUE(warnings.empty());
  double perimeters = 0;
  for (const auto& h : hulls) perimeters += h.hull.perimeter();
  EXPECT_LE(out.length(), 10.0 + perimeters);
}

TEST(Detour, OverlappingHullsAreMerged) {
  const std::vector<ObstacleHull> hulls{make_hull(rect(2, -1, 4, 1), 0, "a"), make_hull(rect(3, -3, 5, 0), 0, "b")};
  const Polyline out = detour_segment({0, 0}, {8, 0}, hulls);
  EXPECT_FALSE(enters_any_hull(out, hulls));
  const geom::Polygon merged = geom::convex_hull(std::vector<Point2>{
      {2, -1}, {4, -1}, {4, 1}, {2, 1}, {3, -3}, {5, -3}, {5, 0}, {3, 0}});
  EXPECT_NEAR(out.length(), oracle::visibility_shortest({0, 0}, {8, 0}, {merged.vertices()}), 1e-9);
}

TEST(Detour, EndpointInsideHullNamesObstacle) {
  const std::vector<ObstacleHull> hulls{make_hull(rect(0, 0, 2, 2), 0, "barn")};
  try {
    detour_segment({1, 1}, {5, 5}, hulls);
    FAIL();
  } catch (const InfeasibleEndpoint& e) {
    EXPECT_EQ(e.obstacle(), "barn");
    EXPECT_NE(std::string(e.what()).find("barn"), std::string::npos);
  }
}

TEST(Detour, ContourMethodIsNoShorter) {
  const std::vector<ObstacleHull> hulls{make_hull(rect(-1, -1, 1, 1))};
  const Polyline tangent = detour_segment({-3, 0.2}, {3, 0}, hulls);
  const Polyline contour = detour_segment({-3, 0.2}, {3, 0}, hulls, model::AvoidanceMethod::kContourFollowing);
  EXPECT_FALSE(enters_any_hull(contour, hulls));
  EXPECT_GE(contour.length(), tangent.length() - 1e-12);
  EXPECT_NEAR(contour.points.front().x, -3, 0);
  EXPECT_NEAR(contour.points.back().x, 3, 0);
}

TEST(Detour, RandomConvexAgainstVisibilityGraph) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 40; ++k) {
    const geom::Polygon shape = geom::convex_hull(fixtures::random_convex_ring(rng, {0, 0}, 2 + u(rng), 1.5, 7));
    const std::vector<ObstacleHull> hulls{make_hull(shape)};
    const Point2 p{-6, 2 * u(rng)}, q{6, 2 * u(rng)};
    const Polyline out = detour_segment(p, q, hulls);
    EXPECT_NEAR(out.length(), oracle::visibility_shortest(p, q, {hulls[0].hull.vertices()}), 1e-6) << k;
    EXPECT_FALSE(enters_any_hull(out, hulls));
  }
}

TEST(Contain, ConvexFieldUnchanged) {
  const geom::Polygon field = rect(0, 0, 10, 10);
  const Polyline path{{{1, 1}, {9, 9}, {1, 9}}};
  EXPECT_EQ(contain_in_field(path, field).points, path.points);
}

TEST(Contain, NotchIsFollowed) {
  const geom::Polygon field({{0, 0}, {10, 0}, {10, 10}, {6, 10}, {6, 4}, {4, 4}, {4, 10}, {0, 10}});
  const Polyline chord{{{2, 8}, {8, 8}}};
  const Polyline out = contain_in_field(chord, field);
  EXPECT_NEAR(out.length(), 2 + 4 + 2 + 4 + 2, 1e-9);
  EXPECT_FALSE(leaves_field(out, field));
  EXPECT_EQ(contain_in_field(out, field).points, out.points);
}

TEST(Contain, TangentSegmentUnchanged) {
  const geom::Polygon field = rect(0, 0, 10, 10);
  const Polyline along{{{0, 2}, {0, 8}}};
  EXPECT_EQ(contain_in_field(along, field).points, along.points);
}

TEST(Contain, EndpointOutsideThrows) {
  EXPECT_THROW(contain_in_field(Polyline{{{1, 1}, {12, 1}}}, rect(0, 0, 10, 10)), Error);
}
