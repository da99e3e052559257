#include <algorithm>
#include <cmath>
#include <cstdio>

#include "spotpath/io.hpp"

namespace spotpath::io {
namespace {

class Canvas {
 public:
  Canvas(const geom::Polygon& field, double margin) : margin_(margin) {
    min_x_ = max_x_ = field[0].x;
    min_y_ = max_y_ = field[0].y;
    for (const Point2& p : field.vertices()) {
      min_x_ = std::min(min_x_, p.x);
      max_x_ = std::max(max_x_, p.x);
      min_y_ = std::min(min_y_, p.y);
      max_y_ = std::max(max_y_, p.y);
    }
  }

  double width() const { return max_x_ - min_x_ + 2 * margin_; }
  double height() const { return max_y_ - min_y_ + 2 * margin_; }

  // SVG y grows downwards; north stays up.
  std::string xy(Point2 p) const { return num(p.x - min_x_ + margin_) + " " + num(max_y_ - p.y + margin_); }

  std::string points(const geom::Polygon& poly) const {
    std::string s;
    for (const Point2& p : poly.vertices()) {
      if (!s.empty()) s += " ";
      s += num(p.x - min_x_ + margin_) + "," + num(max_y_ - p.y + margin_);
    }
    return s;
  }

  static std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
  }

 private:
  double margin_;
  double min_x_, max_x_, min_y_, max_y_;
};

struct TagStyle {
  assemble::SegmentTag::Kind kind;
  const char* cls;
  const char* color;
};

constexpr TagStyle kStyles[] = {
    {assemble::SegmentTag::Kind::kTransit, "transit", "#1f5fbf"},
    {assemble::SegmentTag::Kind::kDetour, "detour", "#e08a00"},
    {assemble::SegmentTag::Kind::kCoverage, "coverage", "#2a9d3a"},
};

}  // namespace

std::string render_svg(const assemble::MissionResult& result, const model::ProblemInstance& instance) {
  const double extent = std::max(1.0, std::sqrt(instance.field.area()));
  const Canvas c(instance.field, 0.03 * extent);
  const std::string stroke = Canvas::num(0.002 * extent);
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + Canvas::num(c.width()) + "\" height=\"" +
       Canvas::num(c.height()) + "\" viewBox=\"0 0 " + Canvas::num(c.width()) + " " + Canvas::num(c.height()) +
       "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<polygon class=\"field\" points=\"" + c.points(instance.field) +
       "\" fill=\"none\" stroke=\"black\" stroke-width=\"" + stroke + "\"/>\n";
  for (const geom::Polygon& o : instance.obstacles) {
    s += "<polygon class=\"obstacle\" points=\"" + c.points(o) + "\" fill=\"red\" fill-opacity=\"0.6\"/>\n";
  }
  const std::string font = Canvas::num(0.02 * extent);
  for (std::size_t i = 0; i < instance.patches.size(); ++i) {
    const geom::Polygon& p = instance.patches[i];
    s += "<polygon class=\"patch\" points=\"" + c.points(p) + "\" fill=\"gray\" fill-opacity=\"0.5\"/>\n";
    const std::string at = c.xy(p.centroid());
    const auto space = at.find(' ');
    s += "<text class=\"patch-label\" x=\"" + at.substr(0, space) + "\" y=\"" + at.substr(space + 1) +
         "\" font-size=\"" + font + "\" text-anchor=\"middle\">" + std::to_string(i + 1) + "</text>\n";
  }

  const auto& pts = result.path.waypoints.points;
  const auto& tags = result.path.segment_tags;
  for (const TagStyle& style : kStyles) {
    std::string d;
    bool open = false;
    for (std::size_t k = 0; k < tags.size(); ++k) {
      if (tags[k].kind != style.kind) {
        open = false;
        continue;
      }
      if (!open) d += (d.empty() ? "M" : " M") + c.xy(pts[k]);
      d += " L" + c.xy(pts[k + 1]);
      open = true;
    }
    if (d.empty()) continue;
    s += "<path class=\"path-" + std::string(style.cls) + "\" d=\"" + d + "\" fill=\"none\" stroke=\"" +
         style.color + "\" stroke-width=\"" + stroke + "\" stroke-linejoin=\"round\"/>\n";
  }
  const std::string at = c.xy(instance.entrance);
  const auto space = at.find(' ');
  s += "<circle class=\"entrance\" cx=\"" + at.substr(0, space) + "\" cy=\"" + at.substr(space + 1) + "\" r=\"" +
       Canvas::num(0.006 * extent) + "\" fill=\"black\"/>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace spotpath::io
