#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "report_fields.hpp"
#include "spotpath/io.hpp"

namespace spotpath::io {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr double kDeg = std::numbers::pi / 180.0;

// Byte offset of every element of the top-level "features" array, found by a
// lightweight scan (the JSON parser does not keep positions).
std::vector<std::size_t> feature_offsets(std::string_view text) {
  std::vector<std::size_t> offsets;
  int depth = 0;
  int features_depth = -1;
  bool expect_element = false;
  std::string last_string;
  bool last_was_key_candidate = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
    if (expect_element && depth == features_depth && c != ']') {
      offsets.push_back(i);
      expect_element = false;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      std::string s;
      while (j < text.size() && text[j] != '"') {
        if (text[j] == '\\') ++j;
        if (j < text.size()) s += text[j];
        ++j;
      }
      i = j;
      last_string = std::move(s);
      last_was_key_candidate = depth == 1;
      continue;
    }
    if (c == ':') continue;
    if (c == '{' || c == '[') {
      const bool opens_features = c == '[' && depth == 1 && last_was_key_candidate && last_string == "features";
      ++depth;
      if (opens_features && features_depth < 0) {
        features_depth = depth;
        expect_element = true;
      }
    } else if (c == '}' || c == ']') {
      --depth;
    } else if (c == ',' && depth == features_depth) {
      expect_element = true;
    }
    last_was_key_candidate = false;
  }
  return offsets;
}

struct RawFeature {
  std::string role;
  std::string id;
  std::size_t offset = 0;
  std::vector<std::vector<Point2>> rings;  // one per polygon part
  Point2 point;
};

std::string id_of(const json& props, const std::string& role, std::size_t ordinal) {
  if (props.contains("id")) {
    const json& id = props["id"];
    if (id.is_string()) return id.get<std::string>();
    if (id.is_number()) return id.dump();
  }
  return role + "-" + std::to_string(ordinal);
}

Point2 read_position(const json& pos) {
  if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
    throw std::runtime_error("position must be an array of two numbers");
  }
  return {pos[0].get<double>(), pos[1].get<double>()};
}

std::vector<Point2> read_polygon(const json& rings) {
  if (!rings.is_array() || rings.empty()) throw std::runtime_error("polygon needs an outer ring");
  if (rings.size() > 1) throw std::runtime_error("polygons with holes are not supported");
  std::vector<Point2> ring;
  for (const json& pos : rings[0]) ring.push_back(read_position(pos));
  if (ring.size() >= 2 && ring.front() == ring.back()) ring.pop_back();
  return ring;
}

Point2 ring_centroid(const std::vector<Point2>& ring) {
  double a = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point2 p = ring[i], q = ring[(i + 1) % ring.size()];
    const double w = geom::cross(p, q);
    a += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  if (std::abs(a) > 1e-18) return {cx / (3.0 * a), cy / (3.0 * a)};
  Point2 m{0.0, 0.0};
  for (const Point2& p : ring) m = m + p;
  return ring.empty() ? m : m * (1.0 / double(ring.size()));
}

json ring_json(const std::vector<Point2>& ring) {
  json coords = json::array();
  for (const Point2& p : ring) coords.push_back({p.x, p.y});
  if (!ring.empty()) coords.push_back({ring.front().x, ring.front().y});
  return json::array({coords});
}

json feature_json(const std::string& role, const std::string& id, json geometry) {
  return {{"type", "Feature"}, {"properties", {{"role", role}, {"id", id}}}, {"geometry", std::move(geometry)}};
}

}  // namespace

ParseError::ParseError(std::vector<Issue> issues)
    : Error([&] {
        std::string msg = "invalid instance document";
        for (const Issue& i : issues) {
          msg += "\n  ";
          if (!i.feature.empty()) msg += "[" + i.feature + "] ";
          msg += "at byte " + std::to_string(i.offset) + ": " + i.message;
        }
        return msg;
      }()),
      issues_(std::move(issues)) {}

Point2 LocalFrame::project(double lon, double lat) const {
  return {kEarthRadius * (lon - lon0) * kDeg * std::cos(lat0 * kDeg), kEarthRadius * (lat - lat0) * kDeg};
}

void LocalFrame::unproject(Point2 p, double& lon, double& lat) const {
  lon = lon0 + p.x / (kEarthRadius * kDeg * std::cos(lat0 * kDeg));
  lat = lat0 + p.y / (kEarthRadius * kDeg);
}

ParsedInstance read_instance_document(std::string_view text, const model::PlannerConfig& config) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError({{"", e.byte, e.what()}});
  }
  std::vector<ParseError::Issue> issues;
  if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" || !doc.contains("features") ||
      !doc["features"].is_array()) {
    throw ParseError({{"", 0, "document must be a FeatureCollection with a features array"}});
  }
  bool lonlat = false;
  if (doc.contains("crs")) {
    const json& crs = doc["crs"];
    const std::string name = crs.is_string() ? crs.get<std::string>() : std::string("?");
    if (name == "lonlat") {
      lonlat = true;
    } else if (name != "meters") {
      issues.push_back({"", 0, "crs must be \"meters\" or \"lonlat\""});
    }
  }

  const std::vector<std::size_t> offsets = feature_offsets(text);
  std::vector<RawFeature> features;
  std::size_t counts[4] = {0, 0, 0, 0};
  const json& list = doc["features"];
  for (std::size_t k = 0; k < list.size(); ++k) {
    const json& f = list[k];
    const std::size_t offset = k < offsets.size() ? offsets[k] : 0;
    const json props = f.is_object() && f.contains("properties") && f["properties"].is_object()
                           ? f["properties"]
                           : json::object();
    const std::string role = props.contains("role") && props["role"].is_string() ? props["role"].get<std::string>() : "";
    int slot = -1;
    if (role == "field") slot = 0;
    if (role == "entrance") slot = 1;
    if (role == "obstacle") slot = 2;
    if (role == "patch") slot = 3;
    const std::string id = id_of(props, role.empty() ? "feature" : role, slot >= 0 ? ++counts[slot] : k + 1);
    if (slot < 0) {
      issues.push_back({id, offset, role.empty() ? "feature has no role property" : "unknown role \"" + role + "\""});
      continue;
    }
    try {
      if (!f.contains("geometry") || !f["geometry"].is_object()) throw std::runtime_error("missing geometry");
      const json& g = f["geometry"];
      const std::string type = g.value("type", "");
      if (!g.contains("coordinates")) throw std::runtime_error("geometry has no coordinates");
      const json& c = g["coordinates"];
      RawFeature rf{role, id, offset, {}, {}};
      if (role == "entrance") {
        if (type != "Point") throw std::runtime_error("entrance must be a Point, got " + type);
        rf.point = read_position(c);
      } else if (type == "Polygon") {
        rf.rings.push_back(read_polygon(c));
      } else if (type == "MultiPolygon" && role != "field") {
        if (!c.is_array() || c.empty()) throw std::runtime_error("empty MultiPolygon");
        for (const json& part : c) rf.rings.push_back(read_polygon(part));
      } else {
        throw std::runtime_error(role + " must be a Polygon" + (role == "field" ? "" : " or MultiPolygon") +
                                 ", got " + type);
      }
      features.push_back(std::move(rf));
    } catch (const std::exception& e) {
      issues.push_back({id, offset, e.what()});
    }
  }

  const char* names[2] = {"field", "entrance"};
  for (int r = 0; r < 2; ++r) {
    if (counts[r] == 0) issues.push_back({"", 0, std::string("missing required ") + names[r] + " feature"});
    if (counts[r] > 1) issues.push_back({"", 0, std::string("more than one ") + names[r] + " feature"});
  }
  if (counts[3] == 0) issues.push_back({"", 0, "document needs at least one patch feature"});
  if (!issues.empty()) throw ParseError(std::move(issues));

  ParsedInstance out;
  out.lonlat = lonlat;
  out.raw.config = config;
  if (lonlat) {
    for (const RawFeature& f : features) {
      if (f.role == "field") {
        const Point2 c = ring_centroid(f.rings.front());
        out.frame = {c.x, c.y};
      }
    }
  }
  auto map = [&](Point2 p) { return lonlat ? out.frame.project(p.x, p.y) : p; };
  auto map_ring = [&](const std::vector<Point2>& ring) {
    std::vector<Point2> r;
    for (const Point2& p : ring) r.push_back(map(p));
    return r;
  };
  for (const RawFeature& f : features) {
    if (f.role == "entrance") {
      out.raw.entrance = map(f.point);
      out.raw.entrance_id = f.id;
      continue;
    }
    for (std::size_t part = 0; part < f.rings.size(); ++part) {
      const std::string id = f.rings.size() > 1 ? f.id + "#" + std::to_string(part + 1) : f.id;
      model::RawInstance::Feature feature{id, map_ring(f.rings[part])};
      if (f.role == "field") out.raw.field = std::move(feature);
      if (f.role == "obstacle") out.raw.obstacles.push_back(std::move(feature));
      if (f.role == "patch") out.raw.patches.push_back(std::move(feature));
    }
  }
  return out;
}

model::ProblemInstance parse_instance(std::string_view text, const model::PlannerConfig& config,
                                      model::Diagnostics* warnings) {
  return model::require_valid(read_instance_document(text, config).raw, warnings);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("failed writing " + path.string());
}

std::string write_instance(const model::RawInstance& raw) {
  json features = json::array();
  features.push_back(feature_json("field", raw.field.id, {{"type", "Polygon"}, {"coordinates", ring_json(raw.field.ring)}}));
  features.push_back(feature_json("entrance", raw.entrance_id,
                                  {{"type", "Point"}, {"coordinates", {raw.entrance.x, raw.entrance.y}}}));
  for (const auto& o : raw.obstacles) {
    features.push_back(feature_json("obstacle", o.id, {{"type", "Polygon"}, {"coordinates", ring_json(o.ring)}}));
  }
  for (const auto& p : raw.patches) {
    features.push_back(feature_json("patch", p.id, {{"type", "Polygon"}, {"coordinates", ring_json(p.ring)}}));
  }
  json doc = {{"type", "FeatureCollection"}, {"crs", "meters"}, {"features", std::move(features)}};
  return doc.dump(1) + "\n";
}

std::string write_path(const assemble::MissionResult& result, const model::ProblemInstance& instance) {
  json coords = json::array();
  for (const Point2& p : result.path.waypoints.points) coords.push_back({p.x, p.y});
  json tags = json::array();
  for (const auto& t : result.path.segment_tags) tags.push_back(assemble::to_string(t));
  json order = json::array();
  const auto& seq = result.path.visit_order.sequence;
  for (std::size_t k = 1; k + 1 < seq.size(); ++k) order.push_back(instance.patch_ids[seq[k] - 1]);

  ordered_json props;
  props["role"] = "path";
  props["segment_tags"] = std::move(tags);
  props["visit_order"] = std::move(order);
  props["report"] = detail::report_row(result.report, result.report.config.coverage_method);
  ordered_json feature;
  feature["type"] = "Feature";
  feature["properties"] = std::move(props);
  feature["geometry"] = {{"type", "LineString"}, {"coordinates", std::move(coords)}};
  ordered_json doc;
  doc["type"] = "FeatureCollection";
  doc["crs"] = "meters";
  doc["features"] = ordered_json::array({std::move(feature)});
  return doc.dump(1) + "\n";
}

PathDocument read_path(std::string_view text) {
  PathDocument out;
  try {
    const json doc = json::parse(text);
    const json& f = doc.at("features").at(0);
    for (const json& pos : f.at("geometry").at("coordinates")) out.waypoints.push_back(read_position(pos));
    for (const json& t : f.at("properties").at("segment_tags")) out.segment_tags.push_back(t.get<std::string>());
  } catch (const std::exception& e) {
    throw Error(std::string("invalid path document: ") + e.what());
  }
  return out;
}

}  // namespace spotpath::io
