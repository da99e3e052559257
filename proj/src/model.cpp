#include "spotpath/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace spotpath::model {
namespace {

using geom::Containment;

struct Box {
  double min_x, min_y, max_x, max_y;
};

Box bounds(const Polygon& p) {
  Box b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
        -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Point2& v : p.vertices()) {
    b.min_x = std::min(b.min_x, v.x);
    b.min_y = std::min(b.min_y, v.y);
    b.max_x = std::max(b.max_x, v.x);
    b.max_y = std::max(b.max_y, v.y);
  }
  return b;
}

bool boxes_apart(const Box& a, const Box& b, double margin) {
  return a.max_x + margin < b.min_x || b.max_x + margin < a.min_x || a.max_y + margin < b.min_y ||
         b.max_y + margin < a.min_y;
}

double overlap_area(const Polygon& a, const Polygon& b) {
  double area = 0.0;
  for (const Polygon& piece : geom::intersect(a, b)) area += piece.area();
  return area;
}

// Farthest distance of any boundary sample of `patch` lying outside `field`.
double excursion(const Polygon& patch, const Polygon& field) {
  double worst = 0.0;
  constexpr int kSamples = 16;
  for (std::size_t i = 0; i < patch.size(); ++i) {
    for (int k = 0; k < kSamples; ++k) {
      const Point2 p = geom::lerp(patch.vertex(i), patch.vertex(i + 1), double(k) / kSamples);
      if (geom::point_in_polygon(p, field) == Containment::kOutside) {
        worst = std::max(worst, geom::closest_boundary_point(p, field).distance);
      }
    }
  }
  return worst;
}

void error(Diagnostics& out, std::string feature, std::string message,
           std::optional<Point2> where = std::nullopt) {
  out.push_back({Severity::kError, std::move(feature), std::move(message), where});
}

void warn(Diagnostics& out, std::string feature, std::string message,
          std::optional<Point2> where = std::nullopt) {
  out.push_back({Severity::kWarning, std::move(feature), std::move(message), where});
}

std::optional<Polygon> normalize_feature(const RawInstance::Feature& f, Diagnostics& out) {
  try {
    return Polygon(f.ring);
  } catch (const geom::GeometryError& e) {
    error(out, f.id, e.what(), f.ring.empty() ? std::nullopt : std::optional(f.ring.front()));
    return std::nullopt;
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

std::string to_string(const Diagnostic& d) {
  std::string s = d.severity == Severity::kError ? "error" : "warning";
  if (!d.feature.empty()) s += " [" + d.feature + "]";
  s += ": " + d.message;
  if (d.location) s += " at (" + fmt(d.location->x) + ", " + fmt(d.location->y) + ")";
  return s;
}

ValidationError::ValidationError(Diagnostics diagnostics)
    : Error([&] {
        std::string msg = "invalid instance";
        for (const Diagnostic& d : diagnostics) {
          if (d.severity == Severity::kError) msg += "\n  " + to_string(d);
        }
        return msg;
      }()),
      diagnostics_(std::move(diagnostics)) {}

void validate_config(const PlannerConfig& config, Diagnostics& out) {
  if (!(config.operating_width > 0.0) || !std::isfinite(config.operating_width)) {
    error(out, "", "operating width W must satisfy W > 0 (got " + fmt(config.operating_width) + ")");
  }
  if (!(config.time_limit > 0.0) || !std::isfinite(config.time_limit)) {
    error(out, "", "time limit must satisfy T_limit > 0 (got " + fmt(config.time_limit) + ")");
  }
  if (!(config.obstacle_inflation >= 0.0) || !std::isfinite(config.obstacle_inflation)) {
    error(out, "", "obstacle inflation must be >= 0");
  }
  if (config.move_budget && *config.move_budget == 0) {
    error(out, "", "move budget must be positive");
  }
}

ValidationReport validate_instance(const RawInstance& raw) {
  ValidationReport report;
  Diagnostics& diag = report.diagnostics;
  validate_config(raw.config, diag);

  const std::optional<Polygon> field = normalize_feature(raw.field, diag);
  std::vector<std::optional<Polygon>> obstacles;
  for (const auto& f : raw.obstacles) obstacles.push_back(normalize_feature(f, diag));
  std::vector<std::optional<Polygon>> patches;
  for (const auto& f : raw.patches) patches.push_back(normalize_feature(f, diag));

  if (raw.patches.empty()) error(diag, "", "instance needs at least one patch");
  if (!std::isfinite(raw.entrance.x) || !std::isfinite(raw.entrance.y)) {
    error(diag, raw.entrance_id, "entrance has a non-finite coordinate");
  }
  if (!field) return report;

  if (geom::point_in_polygon(raw.entrance, *field) == Containment::kOutside) {
    error(diag, raw.entrance_id, "entrance lies outside the field", raw.entrance);
  }

  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    if (!obstacles[i]) continue;
    const Polygon& o = *obstacles[i];
    if (overlap_area(o, *field) < o.area() - 1e-9) {
      error(diag, raw.obstacles[i].id, "obstacle exceeds the field contour", o[0]);
    }
    if (geom::point_in_polygon(raw.entrance, o) == Containment::kInside) {
      error(diag, raw.obstacles[i].id, "entrance lies inside obstacle", raw.entrance);
    }
  }

  for (std::size_t i = 0; i < patches.size(); ++i) {
    if (!patches[i]) continue;
    const std::string& id = raw.patches[i].id;
    const Polygon& p = *patches[i];
    const double outside = p.area() - overlap_area(p, *field);
    if (outside > 1e-9) {
      const double reach = excursion(p, *field);
      if (reach > kMaxClippedExcursion) {
        error(diag, id, "patch exceeds the field contour by " + fmt(reach) + " m");
        patches[i].reset();
        continue;
      }
      auto pieces = geom::intersect(p, *field);
      if (pieces.size() != 1) {
        error(diag, id, "patch clipped to the field splits into " + std::to_string(pieces.size()) +
                            " parts");
        patches[i].reset();
        continue;
      }
      warn(diag, id, "patch exceeds the field contour by " + fmt(reach) + " m; clipped to the field");
      patches[i] = std::move(pieces.front());
    }
    if (geom::point_in_polygon(raw.entrance, *patches[i]) == Containment::kInside) {
      error(diag, id, "entrance lies inside patch", raw.entrance);
    }
  }

  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    if (!obstacles[i]) continue;
    for (std::size_t j = 0; j < patches.size(); ++j) {
      if (!patches[j]) continue;
      if (boxes_apart(bounds(*obstacles[i]), bounds(*patches[j]), 1e-9)) continue;
      if (overlap_area(*obstacles[i], *patches[j]) > 1e-9) {
        error(diag, raw.obstacles[i].id,
              "obstacle overlaps patch " + raw.patches[j].id + " (obstacles must be disjoint from patches)");
      }
    }
  }

  for (std::size_t i = 0; i < patches.size(); ++i) {
    if (!patches[i]) continue;
    const Box bi = bounds(*patches[i]);
    for (std::size_t j = i + 1; j < patches.size(); ++j) {
      if (!patches[j] || boxes_apart(bi, bounds(*patches[j]), 1e-6)) continue;
      try {
        geom::closest_boundary_points(*patches[i], *patches[j]);
      } catch (const geom::GeometryError&) {
        error(diag, raw.patches[i].id, "patch touches or overlaps patch " + raw.patches[j].id);
      }
    }
  }

  const bool failed = std::any_of(diag.begin(), diag.end(),
                                  [](const Diagnostic& d) { return d.severity == Severity::kError; });
  if (failed) return report;

  ProblemInstance inst;
  inst.field = *field;
  inst.field_id = raw.field.id;
  inst.entrance = raw.entrance;
  inst.config = raw.config;
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    inst.obstacles.push_back(*obstacles[i]);
    inst.obstacle_ids.push_back(raw.obstacles[i].id);
  }
  for (std::size_t i = 0; i < patches.size(); ++i) {
    inst.patches.push_back(*patches[i]);
    inst.patch_ids.push_back(raw.patches[i].id);
  }
  report.instance = std::move(inst);
  return report;
}

ProblemInstance require_valid(const RawInstance& raw, Diagnostics* warnings) {
  ValidationReport report = validate_instance(raw);
  if (!report.ok()) throw ValidationError(std::move(report.diagnostics));
  if (warnings) warnings->insert(warnings->end(), report.diagnostics.begin(), report.diagnostics.end());
  return std::move(*report.instance);
}

TransitionGraph::TransitionGraph(std::size_t n) : n_(n), costs_(n * n, 0.0), links_(n * n) {}

void TransitionGraph::set(std::size_t i, std::size_t j, double cost, Point2 on_i, Point2 on_j) {
  costs_[i * n_ + j] = cost;
  costs_[j * n_ + i] = cost;
  links_[i * n_ + j] = {on_i, on_j};
  links_[j * n_ + i] = {on_j, on_i};
}

TransitionGraph build_transition_graph(const ProblemInstance& instance, Diagnostics* warnings) {
  const std::size_t n = instance.patch_count() + 1;
  TransitionGraph graph(n);
  for (std::size_t i = 0; i < n; ++i) graph.set(i, i, 0.0, Point2{}, Point2{});
  auto clamp = [&](double d, std::size_t i, std::size_t j) {
    if (d >= kMinTransitionCost) return d;
    if (warnings) {
      const std::string a = i == 0 ? std::string("entrance") : instance.patch_ids[i - 1];
      warnings->push_back({Severity::kWarning, instance.patch_ids[j - 1],
                           "transition cost to " + a + " is zero; clamped to 1e-6 m", std::nullopt});
    }
    return kMinTransitionCost;
  };
  for (std::size_t j = 1; j < n; ++j) {
    const geom::BoundaryPoint bp = geom::closest_boundary_point(instance.entrance, instance.patches[j - 1]);
    graph.set(0, j, clamp(bp.distance, 0, j), instance.entrance, bp.point);
  }
  for (std::size_t i = 1; i < n; ++i) {
    graph.set(i, i, 0.0, instance.patches[i - 1][0], instance.patches[i - 1][0]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const geom::BoundaryContact c =
          geom::closest_boundary_points(instance.patches[i - 1], instance.patches[j - 1]);
      graph.set(i, j, clamp(c.distance, i, j), c.on_a, c.on_b);
    }
  }
  graph.set(0, 0, 0.0, instance.entrance, instance.entrance);
  return graph;
}

TransitionGraph point_graph(std::span<const Point2> nodes) {
  TransitionGraph graph(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    graph.set(i, i, 0.0, nodes[i], nodes[i]);
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      graph.set(i, j, std::max(geom::distance(nodes[i], nodes[j]), kMinTransitionCost), nodes[i], nodes[j]);
    }
  }
  return graph;
}

bool needs_coverage(const Polygon& patch, double operating_width) {
  const Polygon hull = geom::convex_hull(patch.vertices());
  return geom::minimum_width(hull).width > operating_width;
}

PatchClassification classify_patches(const ProblemInstance& instance,
                                     [[maybe_unused]] const TransitionGraph& graph) {
  PatchClassification out;
  out.needs_coverage.reserve(instance.patch_count());
  for (const Polygon& p : instance.patches) {
    const bool need = needs_coverage(p, instance.config.operating_width);
    out.needs_coverage.push_back(need);
    if (need) ++out.covered_count;
  }
  return out;
}

}  // namespace spotpath::model
