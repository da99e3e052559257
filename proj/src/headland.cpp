#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "scanline.hpp"
#include "spotpath/coverage.hpp"

namespace spotpath::coverage {
namespace {

constexpr double kMinStrip = 1e-6;
constexpr double kMinLaneLength = 1e-9;

double normalize_angle(double a) {
  a = std::fmod(a, std::numbers::pi);
  if (a < 0.0) a += std::numbers::pi;
  if (a >= std::numbers::pi - 1e-12) a = 0.0;
  return a;
}

}  // namespace

std::vector<Ring> headland_path(const Polygon& patch, double operating_width) {
  std::vector<Ring> rings;
  for (Polygon& p : geom::offset_inward(patch, 0.5 * operating_width)) rings.emplace_back(std::move(p));
  return rings;
}

double LaneSet::total_length() const {
  double total = 0.0;
  for (const Lane& l : lanes) total += l.length();
  return total;
}

std::vector<double> lane_offsets(double lo, double hi, double operating_width) {
  std::vector<double> out;
  if (hi - lo <= kMinStrip) return out;
  const double half = 0.5 * operating_width;
  for (double v = lo + half; v + half <= hi + 1e-9; v += operating_width) out.push_back(v);
  const double covered_to = out.empty() ? lo : out.back() + half;
  if (hi - covered_to > kMinStrip) out.push_back(0.5 * (covered_to + hi));
  return out;
}

LaneSet generate_lanes(std::span<const Ring> headlands, double operating_width, double orientation) {
  LaneSet set;
  set.orientation = normalize_angle(orientation);
  const double half = 0.5 * operating_width;
  for (std::size_t c = 0; c < headlands.size(); ++c) {
    const Ring& ring = headlands[c];
    const auto local = detail::rotated(ring.polygon().vertices(), -set.orientation);
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -vmin;
    for (const Point2& p : local) {
      vmin = std::min(vmin, p.y);
      vmax = std::max(vmax, p.y);
    }
    for (double v : lane_offsets(vmin + half, vmax - half, operating_width)) {
      const auto xs = detail::scanline(local, v);
      for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
        if (xs[k + 1] - xs[k] <= kMinLaneLength) continue;
        Lane lane;
        lane.start = geom::rotate({xs[k], v}, set.orientation);
        lane.end = geom::rotate({xs[k + 1], v}, set.orientation);
        lane.offset = v;
        lane.component = c;
        lane.start_pos = ring.position_of(lane.start);
        lane.end_pos = ring.position_of(lane.end);
        set.lanes.push_back(lane);
      }
    }
  }
  std::stable_sort(set.lanes.begin(), set.lanes.end(), [&](const Lane& a, const Lane& b) {
    if (a.offset != b.offset) return a.offset < b.offset;
    return geom::rotate(a.start, -set.orientation).x < geom::rotate(b.start, -set.orientation).x;
  });
  return set;
}

LaneSet generate_lanes(const Polygon& patch, double operating_width, double orientation) {
  const auto rings = headland_path(patch, operating_width);
  return generate_lanes(rings, operating_width, orientation);
}

namespace {

double select_orientation(const Polygon& patch, std::span<const Ring> rings, double operating_width) {
  const Polygon hull = geom::convex_hull(patch.vertices());
  std::vector<double> candidates;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2 e = hull.vertex(i + 1) - hull.vertex(i);
    candidates.push_back(normalize_angle(std::atan2(e.y, e.x)));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end(),
                               [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                   candidates.end());

  double best_angle = candidates.front();
  std::size_t best_count = std::numeric_limits<std::size_t>::max();
  double best_length = std::numeric_limits<double>::infinity();
  for (double angle : candidates) {
    const LaneSet set = generate_lanes(rings, operating_width, angle);
    const std::size_t count = set.lanes.size();
    const double length = set.total_length();
    const double tol = 1e-9 * std::max(1.0, best_length);
    // Candidates are visited by increasing angle, so ties keep the earlier one.
    if (count < best_count || (count == best_count && length < best_length - tol)) {
      best_angle = angle;
      best_count = count;
      best_length = length;
    }
  }
  return best_angle;
}

}  // namespace

double select_orientation(const Polygon& patch, double operating_width) {
  const auto rings = headland_path(patch, operating_width);
  return select_orientation(patch, rings, operating_width);
}

std::size_t CoverageLayout::lane_count() const {
  std::size_t n = 0;
  for (const auto& c : components) n += c.lanes.size();
  return n;
}

CoverageLayout build_layout(const Polygon& patch, Point2 entry, double operating_width) {
  CoverageLayout layout;
  layout.entry = entry;
  const auto rings = headland_path(patch, operating_width);
  if (rings.empty()) return layout;
  layout.orientation = select_orientation(patch, rings, operating_width);
  const LaneSet set = generate_lanes(rings, operating_width, layout.orientation);

  for (std::size_t c = 0; c < rings.size(); ++c) {
    CoverageComponent comp;
    comp.headland = rings[c];
    comp.attach_pos = comp.headland.position_of(entry);
    comp.attach_point = comp.headland.point_at(comp.attach_pos);
    for (const Lane& l : set.lanes) {
      if (l.component == c) comp.lanes.push_back(l);
    }
    layout.components.push_back(std::move(comp));
  }
  std::stable_sort(layout.components.begin(), layout.components.end(),
                   [&](const CoverageComponent& a, const CoverageComponent& b) {
                     return geom::distance(entry, a.attach_point) < geom::distance(entry, b.attach_point);
                   });
  for (std::size_t c = 0; c < layout.components.size(); ++c) {
    for (Lane& l : layout.components[c].lanes) l.component = c;
  }
  return layout;
}

}  // namespace spotpath::coverage
