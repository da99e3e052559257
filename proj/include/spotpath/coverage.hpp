#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "spotpath/geom.hpp"
#include "spotpath/model.hpp"

namespace spotpath::coverage {

using geom::Point2;
using geom::Polygon;
using geom::Polyline;
using geom::Ring;

/// Headland rings of a patch: its contour offset inward by W/2. Several rings
/// when the offset disconnects; none when the patch is too thin.
std::vector<Ring> headland_path(const Polygon& patch, double operating_width);

/// Straight chord of a headland-enclosed region.
struct Lane {
  Point2 start;  // smaller coordinate along the lane direction
  Point2 end;
  double offset = 0.0;        // signed perpendicular offset in the lane frame
  std::size_t component = 0;  // index of the headland ring it belongs to
  double start_pos = 0.0;     // arc-length position of `start` on that ring
  double end_pos = 0.0;

  double length() const { return geom::distance(start, end); }
};

struct LaneSet {
  double orientation = 0.0;  // lane direction, radians in [0, pi)
  std::vector<Lane> lanes;   // ordered by offset, then along-lane position

  double total_length() const;
};

/// Lane centre offsets over a strip [lo, hi] still to be covered: the first
/// at lo + W/2, then every W; a leftover strip narrower than W gets one extra
/// lane centred on it.
std::vector<double> lane_offsets(double lo, double hi, double operating_width);

/// Chords of the headland rings at spacing W. For each ring the strip left
/// to cover is its extent across the lanes shrunk by W/2 on both sides (the
/// headland swath covers the rest).
LaneSet generate_lanes(std::span<const Ring> headlands, double operating_width, double orientation);

/// Convenience overload computing the headland first.
LaneSet generate_lanes(const Polygon& patch, double operating_width, double orientation);

/// Among the directions of the patch's convex-hull edges, the one giving the
/// fewest lanes; ties by shorter total lane length, then smaller angle.
double select_orientation(const Polygon& patch, double operating_width);

/// One headland ring with its lanes and the point where the route joins it.
struct CoverageComponent {
  Ring headland;
  std::vector<Lane> lanes;  // `component` fields refer to this component
  double attach_pos = 0.0;  // ring position nearest to the entry point
  Point2 attach_point;
};

/// Everything a coverage route is built from: the edge set shared by the
/// classic and optimised planners.
struct CoverageLayout {
  Point2 entry;
  double orientation = 0.0;
  std::vector<CoverageComponent> components;  // in visiting order

  std::size_t lane_count() const;
};

/// Headland rings, lanes and attach points for a patch entered at `entry`.
/// Components are visited in order of distance from the entry.
CoverageLayout build_layout(const Polygon& patch, Point2 entry, double operating_width);

enum class PlanKind { kClassic, kOptimised, kBoustrophedonReference };

struct CoveragePlan {
  std::size_t patch_index = 0;
  PlanKind kind = PlanKind::kClassic;
  Polyline path;  // starts and ends at the entry point (except the reference plan)
  double length = 0.0;
  std::size_t lane_count = 0;
  std::vector<Polyline> headlands;  // closed loops
  CoverageLayout layout;
  // Offsetting left nothing: the patch is handled as one that needs no coverage.
  bool reclassified = false;
  std::vector<std::string> warnings;
};

PlanKind plan_kind(model::CoverageMethod method);

/// Headland first, then lanes in spatial order joined by headland arcs,
/// then back along the headland to the entry.
CoveragePlan plan_classic(const Polygon& patch, Point2 entry, double operating_width,
                          std::size_t patch_index = 0);

/// Minimum closed walk from the entry covering every lane once and every
/// headland arc at least once: odd lane endpoints are paired by duplicating
/// the cheaper of the two alternating sets of headland arcs, then an Eulerian
/// circuit is extracted.
CoveragePlan plan_optimised(const Polygon& patch, Point2 entry, double operating_width,
                            std::size_t patch_index = 0);

CoveragePlan plan_coverage(model::CoverageMethod method, const Polygon& patch, Point2 entry,
                           double operating_width, std::size_t patch_index = 0);

/// Headland-free zigzag over lanes spanning the raw patch, lanes running along
/// `orientation` (world x-axis by default). Only for comparing coverage gaps.
CoveragePlan plan_boustrophedon_reference(const Polygon& patch, double operating_width,
                                          double orientation = 0.0);

struct CoverageMetrics {
  double covered_area = 0.0;  // m^2
  double gap_area = 0.0;      // m^2
  double overlap_area = 0.0;  // sum over pairs of swept segments of their common area inside the patch
  double gap_fraction = 0.0;  // gap_area / patch area
  double cell_size = 0.0;     // raster resolution used
};

/// Raster estimate (cell size min(W/20, 0.1 m)) of how the swath of `path`
/// covers `patch`. The swath is the path buffered by W/2 with flat ends and
/// mitred joins.
CoverageMetrics coverage_metrics(const Polyline& path, const Polygon& patch, double operating_width);
CoverageMetrics coverage_metrics(const CoveragePlan& plan, const Polygon& patch, double operating_width);

}  // namespace spotpath::coverage
