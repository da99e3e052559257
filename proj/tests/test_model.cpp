#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles/oracles.hpp"
#include "spotpath/model.hpp"

using namespace spotpath;
using namespace spotpath::model;
using fixtures::feature;
using fixtures::rect_ring;
using geom::Point2;

namespace {

RawInstance two_squares() {
  RawInstance raw;
  raw.field = feature("field", rect_ring(0, 0, 20, 10));
  raw.entrance = {0, 5};
  raw.patches = {feature("a", rect_ring(5, 4, 6, 5)), feature("b", rect_ring(8, 4, 9, 5))};
  return raw;
}

bool has(const Diagnostics& d, Severity s, const std::string& feature_id, const std::string& fragment) {
  for (const Diagnostic& x : d) {
    if (x.severity == s && x.feature == feature_id && x.message.find(fragment) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST(Validate, CleanInstance) {
  const auto report = validate_instance(two_squares());
  ASSERT_TRUE(report.ok());
  EXPECT_TRUE(report.diagnostics.empty());
  EXPECT_EQ(report.instance->patch_count(), 2u);
  EXPECT_EQ(report.instance->patch_ids[1], "b");
}

TEST(Validate, ConfigInvariants) {
  Diagnostics d;
  PlannerConfig c;
  c.operating_width = 0;
  c.time_limit = -1;
  validate_config(c, d);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NE(d[0].message.find("W > 0"), std::string::npos);
  EXPECT_NE(d[1].message.find("T_limit > 0"), std::string::npos);
}

TEST(Validate, SmallProtrusionIsClipped) {
  RawInstance raw = two_squares();
  raw.patches[0] = feature("edge", rect_ring(17, 2, 20.3, 6));
  const auto report = validate_instance(raw);
  ASSERT_TRUE(report.ok());
  EXPECT_TRUE(has(report.diagnostics, Severity::kWarning, "edge", "clipped"));
  const double expected =
      std::abs(oracle::shoelace(oracle::clip_convex(rect_ring(17, 2, 20.3, 6), rect_ring(0, 0, 20, 10))));
  EXPECT_NEAR(report.instance->patches[0].area(), expected, 1e-9);
  EXPECT_NEAR(expected, 12.0, 1e-9);
}

TEST(Validate, LargeProtrusionIsAnError) {
  RawInstance raw = two_squares();
  raw.patches[0] = feature("far", rect_ring(17, 2, 21, 6));
  const auto report = validate_instance(raw);
  EXPECT_FALSE(report.ok());
  EXPECT_TRUE(has(report.diagnostics, Severity::kError, "far", "exceeds the field"));
}

TEST(Validate, ObstacleOverlappingPatchNamesBoth) {
  RawInstance raw = two_squares();
  raw.obstacles = {feature("pond", rect_ring(5.5, 4.5, 7, 7))};
  try {
    require_valid(raw);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_TRUE(has(e.diagnostics(), Severity::kError, "pond", "patch a"));
    EXPECT_NE(std::string(e.what()).find("pond"), std::string::npos);
  }
}

TEST(Validate, GeometryErrorsPerFeature) {
  RawInstance raw = two_squares();
  raw.patches.push_back(feature("bow", {{12, 1}, {14, 3}, {14, 1}, {12, 3}}));
  raw.entrance = {30, 5};
  const auto report = validate_instance(raw);
  EXPECT_FALSE(report.ok());
  EXPECT_TRUE(has(report.diagnostics, Severity::kError, "bow", ""));
  EXPECT_TRUE(has(report.diagnostics, Severity::kError, "entrance", "outside the field"));
}

TEST(Validate, NeedsAPatch) {
  RawInstance raw = two_squares();
  raw.patches.clear();
  EXPECT_FALSE(validate_instance(raw).ok());
}

TEST(TransitionGraph, TwoSquares) {
  const ProblemInstance inst = require_valid(two_squares());
  const TransitionGraph g = build_transition_graph(inst);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_DOUBLE_EQ(g.cost(1, 2), 2.0);
  EXPECT_DOUBLE_EQ(g.cost(0, 1), 5.0);
  EXPECT_DOUBLE_EQ(g.cost(1, 1), 0.0);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(g.cost(i, j), g.cost(j, i));
  }
  EXPECT_EQ(g.link(1, 2).from, g.link(2, 1).to);
}

TEST(TransitionGraph, EntranceOnPatchIsClamped) {
  RawInstance raw = two_squares();
  raw.entrance = {5, 4.5};
  Diagnostics warnings;
  const ProblemInstance inst = require_valid(raw, &warnings);
  const TransitionGraph g = build_transition_graph(inst, &warnings);
  EXPECT_DOUBLE_EQ(g.cost(0, 1), kMinTransitionCost);
  EXPECT_TRUE(has(warnings, Severity::kWarning, "a", "clamped"));
}

TEST(TransitionGraph, RandomPatchesMatchSampling) {
  std::mt19937_64 rng(21);
  RawInstance raw;
  raw.field = feature("field", rect_ring(0, 0, 100, 100));
  raw.entrance = {50, 0};
  const Point2 centres[] = {{15, 20}, {50, 30}, {80, 20}, {25, 75}, {75, 70}};
  for (int k = 0; k < 5; ++k) {
    raw.patches.push_back(feature("p" + std::to_string(k), fixtures::random_convex_ring(rng, centres[k], 8, 6, 6)));
  }
  const ProblemInstance inst = require_valid(raw);
  const TransitionGraph g = build_transition_graph(inst);
  for (std::size_t i = 1; i <= 5; ++i) {
    const auto& ri = inst.patches[i - 1].vertices();
    EXPECT_NEAR(g.cost(0, i), oracle::distance_to_boundary(raw.entrance, ri), 1e-9);
    for (std::size_t j = i + 1; j <= 5; ++j) {
      const auto& rj = inst.patches[j - 1].vertices();
      EXPECT_NEAR(g.cost(i, j), oracle::sampled_polygon_distance(ri, rj, 1e-3), 1e-3);
      EXPECT_LT(oracle::distance_to_boundary(g.link(i, j).from, ri), 1e-6);
      EXPECT_LT(oracle::distance_to_boundary(g.link(i, j).to, rj), 1e-6);
    }
  }
}

TEST(PointGraph, EuclideanCosts) {
  const std::vector<Point2> pts{{0, 0}, {3, 4}, {6, 8}};
  const TransitionGraph g = point_graph(pts);
  EXPECT_DOUBLE_EQ(g.cost(0, 1), 5.0);
  EXPECT_DOUBLE_EQ(g.cost(2, 0), 10.0);
}

TEST(NeedsCoverage, WidthCriterion) {
  EXPECT_FALSE(needs_coverage(geom::Polygon(rect_ring(0, 0, 1, 10)), 2.0));
  EXPECT_TRUE(needs_coverage(geom::Polygon(rect_ring(0, 0, 10, 10)), 2.0));
  // Elongated oval 1.9 m across and 30 m long: straight flanks, round ends.
  std::vector<Point2> ellipse;
  for (int k = 0; k <= 20; ++k) {
    const double t = -std::numbers::pi / 2 + std::numbers::pi * k / 20;
    ellipse.push_back({14.05 + 0.95 * std::cos(t), 0.95 * std::sin(t)});
  }
  for (int k = 0; k <= 20; ++k) {
    const double t = std::numbers::pi / 2 + std::numbers::pi * k / 20;
    ellipse.push_back({-14.05 + 0.95 * std::cos(t), 0.95 * std::sin(t)});
  }
  const geom::Polygon e(ellipse);
  EXPECT_NEAR(geom::minimum_width(e).width, oracle::brute_width(e.vertices()), 1e-12);
  EXPECT_NEAR(geom::minimum_width(e).width, 1.9, 1e-9);
  EXPECT_FALSE(needs_coverage(e, 2.0));
}

TEST(Classify, InvariantUnderRigidMotion) {
  RawInstance raw;
  raw.field = feature("field", rect_ring(0, 0, 60, 40));
  raw.entrance = {30, 0};
  raw.patches = {feature("big", rect_ring(5, 5, 15, 15)), feature("thin", rect_ring(20, 5, 21.5, 25)),
                 feature("tri", {{30, 10}, {40, 10}, {35, 18}})};
  auto classify = [](const RawInstance& r) {
    const ProblemInstance inst = require_valid(r);
    return classify_patches(inst, build_transition_graph(inst)).needs_coverage;
  };
  const auto base = classify(raw);
  EXPECT_EQ(base, (std::vector<bool>{true, false, true}));
  RawInstance moved = raw;
  auto move = [](std::vector<Point2>& ring) {
    for (Point2& p : ring) p = geom::rotate(p, 0.83) + Point2{120, -40};
  };
  move(moved.field.ring);
  for (auto& p : moved.patches) move(p.ring);
  moved.entrance = geom::rotate(raw.entrance, 0.83) + Point2{120, -40};
  EXPECT_EQ(classify(moved), base);
}
