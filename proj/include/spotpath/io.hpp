#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "spotpath/assemble.hpp"
#include "spotpath/model.hpp"

namespace spotpath::io {

using geom::Point2;

/// Schema problems in an instance document. Each entry names the feature and
/// the byte offset where it starts.
class ParseError : public Error {
 public:
  struct Issue {
    std::string feature;  // id, or "" for document-level problems
    std::size_t offset = 0;
    std::string message;
  };
  explicit ParseError(std::vector<Issue> issues);
  const std::vector<Issue>& issues() const { return issues_; }

 private:
  std::vector<Issue> issues_;
};

/// Local east-north frame for lon/lat input: equirectangular about an origin.
struct LocalFrame {
  static constexpr double kEarthRadius = 6371008.8;  // mean radius, meters
  double lon0 = 0.0;
  double lat0 = 0.0;

  Point2 project(double lon, double lat) const;
  void unproject(Point2 p, double& lon, double& lat) const;
};

struct ParsedInstance {
  model::RawInstance raw;  // planar meters
  bool lonlat = false;
  LocalFrame frame;        // meaningful when lonlat
};

/// Reads a GeoJSON FeatureCollection. Roles come from properties.role
/// (field, entrance, obstacle, patch); a top-level "crs" of "lonlat" switches
/// on projection about the field centroid. Throws ParseError.
ParsedInstance read_instance_document(std::string_view text, const model::PlannerConfig& config = {});

/// read_instance_document followed by validation (throws ValidationError).
model::ProblemInstance parse_instance(std::string_view text, const model::PlannerConfig& config = {},
                                      model::Diagnostics* warnings = nullptr);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Instance document in meters; reading it back gives the same coordinates.
std::string write_instance(const model::RawInstance& raw);

/// One LineString feature with per-segment tags, the visiting order and the
/// report fields as properties.
std::string write_path(const assemble::MissionResult& result, const model::ProblemInstance& instance);

struct PathDocument {
  std::vector<Point2> waypoints;
  std::vector<std::string> segment_tags;
};
PathDocument read_path(std::string_view text);

/// Fixed report columns, in order.
const std::vector<std::string>& report_columns();

/// Header plus one row for the configured coverage method, or one row per
/// method (classic, then optimised) when `compare` is set.
std::string report_csv(const assemble::MissionReport& report, bool compare);

/// Field outline, obstacles in red, numbered gray patches and one path
/// element per segment tag class. Byte-stable for identical input.
std::string render_svg(const assemble::MissionResult& result, const model::ProblemInstance& instance);

/// Command-line driver. Returns 0 on success, 2 on usage or validation
/// errors, 1 on internal errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spotpath::io
