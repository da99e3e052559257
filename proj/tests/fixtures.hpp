// Shapes and instances shared by the unit tests and the acceptance binary.
#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "spotpath/geom.hpp"
#include "spotpath/model.hpp"

namespace fixtures {

using spotpath::geom::Point2;
using spotpath::geom::Polygon;

inline std::vector<Point2> rect_ring(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}
inline Polygon rect(double x0, double y0, double x1, double y1) { return Polygon(rect_ring(x0, y0, x1, y1)); }

/// w x h rectangle centred on `c`, rotated by `angle`.
inline std::vector<Point2> rotated_rect_ring(Point2 c, double w, double h, double angle) {
  std::vector<Point2> out;
  for (Point2 p : rect_ring(-w / 2, -h / 2, w / 2, h / 2)) out.push_back(spotpath::geom::rotate(p, angle) + c);
  return out;
}

/// L shape: a w x h rectangle with the top-right a x b corner removed.
inline std::vector<Point2> l_ring(double w, double h, double a, double b) {
  return {{0, 0}, {w, 0}, {w, h - b}, {w - a, h - b}, {w - a, h}, {0, h}};
}

/// Convex polygon with `n` vertices at jittered angles on an ellipse.
inline std::vector<Point2> random_convex_ring(std::mt19937_64& rng, Point2 c, double rx, double ry, int n) {
  std::uniform_real_distribution<double> jitter(-0.3, 0.3);
  std::vector<Point2> out;
  for (int k = 0; k < n; ++k) {
    const double t = (k + 0.5 + jitter(rng)) * 2 * std::numbers::pi / n;
    out.push_back({c.x + rx * std::cos(t), c.y + ry * std::sin(t)});
  }
  return out;
}

inline spotpath::model::RawInstance::Feature feature(std::string id, std::vector<Point2> ring) {
  return {std::move(id), std::move(ring)};
}

}  // namespace fixtures
