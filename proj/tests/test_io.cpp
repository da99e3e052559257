#include <gtest/gtest.h>

#include <filesystem>
#include <map>
#include <sstream>

#include "fixtures.hpp"
#include "oracles/oracles.hpp"
#include "spotpath/io.hpp"

using namespace spotpath;
using namespace spotpath::io;
using fixtures::feature;
using fixtures::rect_ring;
using geom::Point2;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"({
  "type": "FeatureCollection",
  "features": [
    {"type": "Feature", "properties": {"role": "field", "id": "f"},
     "geometry": {"type": "Polygon", "coordinates": [[[0,0],[40,0],[40,30],[0,30],[0,0]]]}},
    {"type": "Feature", "properties": {"role": "entrance"},
     "geometry": {"type": "Point", "coordinates": [20, 0]}},
    {"type": "Feature", "properties": {"role": "patch", "id": "p"},
     "geometry": {"type": "Polygon", "coordinates": [[[10,10],[20,10],[20,20],[10,20],[10,10]]]}}
  ]
})";

model::RawInstance three_patch_raw() {
  model::RawInstance raw;
  raw.field = feature("field", rect_ring(0, 0, 80, 50));
  raw.entrance = {40, 0};
  raw.entrance_id = "gate";
  raw.patches = {feature("a", rect_ring(5, 5, 20, 17)), feature("b", fixtures::rotated_rect_ring({60, 30}, 16, 9, 0.5)),
                 feature("c", fixtures::l_ring(14, 12, 6, 5))};
  for (Point2& p : raw.patches[2].ring) p = p + Point2{30, 25};
  raw.obstacles = {feature("pond", rect_ring(36, 8, 44, 14))};
  return raw;
}

// Runs the CLI inside a fresh temporary directory.
struct CliRun {
  int code = -1;
  std::string out, err;
  fs::path dir;
};

CliRun run_in_temp(const std::string& name, std::vector<std::string> args) {
  CliRun r;
  r.dir = fs::temp_directory_path() / ("spotpath_" + name);
  fs::remove_all(r.dir);
  fs::create_directories(r.dir);
  const fs::path old = fs::current_path();
  fs::current_path(r.dir);
  args.insert(args.begin(), "spotpath");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  fs::current_path(old);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::map<std::string, std::string>> read_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char ch : s) {
      if (ch == '"') quoted = !quoted;
      else if (ch == ',' && !quoted) {
        cells.push_back(cell);
        cell.clear();
      } else cell += ch;
    }
    cells.push_back(cell);
    return cells;
  };
  std::getline(in, line);
  header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    EXPECT_EQ(cells.size(), header.size());
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) row[header[i]] = cells[i];
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(Parse, MinimalDocument) {
  const model::ProblemInstance inst = parse_instance(kMinimal);
  EXPECT_EQ(inst.patch_count(), 1u);
  EXPECT_EQ(inst.patch_ids[0], "p");
  EXPECT_EQ(inst.entrance, (Point2{20, 0}));
  EXPECT_EQ(inst.field_id, "f");
}

TEST(Parse, MissingEntranceNamesRole) {
  std::string doc = kMinimal;
  const auto a = doc.find("{\"type\": \"Feature\", \"properties\": {\"role\": \"entrance\"");
  const auto b = doc.find("{\"type\": \"Feature\", \"properties\": {\"role\": \"patch\"");
  doc.erase(a, b - a);
  try {
    parse_instance(doc);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("entrance"), std::string::npos);
  }
}

TEST(Parse, UnknownRoleCarriesOffset) {
  std::string doc = kMinimal;
  const auto at = doc.find("\"patch\"");
  doc.replace(at, 7, "\"weeds\"");
  try {
    read_instance_document(doc);
    FAIL();
  } catch (const ParseError& e) {
    ASSERT_FALSE(e.issues().empty());
    const auto& issue = e.issues().front();
    EXPECT_NE(issue.message.find("weeds"), std::string::npos);
    EXPECT_EQ(doc.compare(issue.offset, 1, "{"), 0);
    EXPECT_LT(issue.offset, at);
    EXPECT_GT(issue.offset, doc.find("\"entrance\""));
  }
}

TEST(Parse, MalformedJson) { EXPECT_THROW(read_instance_document("{\"type\": "), ParseError); }

TEST(Parse, RoundTripKeepsCoordinates) {
  model::RawInstance raw = three_patch_raw();
  raw.patches[0].ring[1] = {20.123456789012345, 5.000000001};
  const ParsedInstance back = read_instance_document(write_instance(raw));
  ASSERT_EQ(back.raw.patches.size(), raw.patches.size());
  for (std::size_t k = 0; k < raw.patches.size(); ++k) {
    ASSERT_EQ(back.raw.patches[k].ring.size(), raw.patches[k].ring.size());
    EXPECT_EQ(back.raw.patches[k].id, raw.patches[k].id);
    for (std::size_t i = 0; i < raw.patches[k].ring.size(); ++i) {
      EXPECT_LE(geom::distance(back.raw.patches[k].ring[i], raw.patches[k].ring[i]), 1e-9);
    }
  }
  EXPECT_LE(geom::distance(back.raw.entrance, raw.entrance), 1e-9);
  EXPECT_EQ(back.raw.entrance_id, "gate");
  EXPECT_EQ(back.raw.obstacles.at(0).id, "pond");
}

TEST(Parse, LonLatPreservesDistances) {
  // About 500 m across at 48 degrees north.
  const double lon0 = 11.0, lat0 = 48.0, dlon = 0.0067, dlat = 0.0045;
  auto pt = [](double lon, double lat) {
    std::ostringstream s;
    s.precision(17);
    s << "[" << lon << "," << lat << "]";
    return s.str();
  };
  const std::vector<std::pair<double, double>> corners{
      {lon0, lat0}, {lon0 + dlon, lat0}, {lon0 + dlon, lat0 + dlat}, {lon0, lat0 + dlat}};
  std::string ring = "[";
  for (const auto& [lo, la] : corners) ring += pt(lo, la) + ",";
  ring += pt(lon0, lat0) + "]";
  const std::vector<std::pair<double, double>> patch{
      {lon0 + 0.001, lat0 + 0.001}, {lon0 + 0.002, lat0 + 0.001}, {lon0 + 0.002, lat0 + 0.002}, {lon0 + 0.001, lat0 + 0.002}};
  std::string pring = "[";
  for (const auto& [lo, la] : patch) pring += pt(lo, la) + ",";
  pring += pt(patch[0].first, patch[0].second) + "]";
  const std::string doc = R"({"type":"FeatureCollection","crs":"lonlat","features":[
    {"type":"Feature","properties":{"role":"field"},"geometry":{"type":"Polygon","coordinates":[)" + ring + R"(]}},
    {"type":"Feature","properties":{"role":"entrance"},"geometry":{"type":"Point","coordinates":)" +
                          pt(lon0 + dlon / 2, lat0) + R"(}},
    {"type":"Feature","properties":{"role":"patch"},"geometry":{"type":"Polygon","coordinates":[)" + pring + R"(]}}]})";
  const ParsedInstance parsed = read_instance_document(doc);
  ASSERT_TRUE(parsed.lonlat);
  std::vector<std::pair<double, double>> all = corners;
  all.insert(all.end(), patch.begin(), patch.end());
  std::vector<Point2> xy = parsed.raw.field.ring;
  xy.insert(xy.end(), parsed.raw.patches[0].ring.begin(), parsed.raw.patches[0].ring.end());
  ASSERT_EQ(xy.size(), all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const double h = oracle::haversine(all[i].first, all[i].second, all[j].first, all[j].second);
      if (h < 1.0) continue;
      EXPECT_NEAR(geom::distance(xy[i], xy[j]) / h, 1.0, 1e-3) << i << "," << j;
    }
  }
  double lon = 0, lat = 0;
  parsed.frame.unproject(parsed.frame.project(11.003, 48.002), lon, lat);
  EXPECT_NEAR(lon, 11.003, 1e-12);
  EXPECT_NEAR(lat, 48.002, 1e-12);
}

TEST(PathDocument, RoundTrip) {
  model::RawInstance raw = three_patch_raw();
  raw.config.move_budget = 100;
  const model::ProblemInstance inst = model::require_valid(raw);
  const auto result = assemble::plan_mission(inst);
  const PathDocument doc = read_path(write_path(result, inst));
  EXPECT_EQ(doc.waypoints, result.path.waypoints.points);
  ASSERT_EQ(doc.segment_tags.size(), result.path.segment_tags.size());
  for (std::size_t i = 0; i < doc.segment_tags.size(); ++i) {
    EXPECT_EQ(doc.segment_tags[i], assemble::to_string(result.path.segment_tags[i]));
  }
}

TEST(Report, ColumnsAndRows) {
  model::RawInstance raw = three_patch_raw();
  raw.config.move_budget = 100;
  const model::ProblemInstance inst = model::require_valid(raw);
  const auto result = assemble::plan_mission(inst);
  const auto rows = read_csv(report_csv(result.report, false));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].size(), report_columns().size());
  EXPECT_EQ(rows[0].at("coverage_method"), "optimised");
  EXPECT_EQ(std::stod(rows[0].at("L_total_m")), result.report.total_length);
  EXPECT_EQ(std::stoul(rows[0].at("N_patches_all")), 3u);
  const auto both = read_csv(report_csv(result.report, true));
  ASSERT_EQ(both.size(), 2u);
  EXPECT_EQ(both[0].at("coverage_method"), "classic");
  EXPECT_EQ(both[1].at("coverage_method"), "optimised");
  EXPECT_EQ(std::stod(both[0].at("L_total_m")), result.report.total_classic);
}

TEST(Svg, DeterministicWithOnePathPerClass) {
  model::RawInstance raw = three_patch_raw();
  raw.config.move_budget = 100;
  const model::ProblemInstance inst = model::require_valid(raw);
  const auto result = assemble::plan_mission(inst);
  const std::string a = render_svg(result, inst);
  EXPECT_EQ(a, render_svg(assemble::plan_mission(inst), inst));
  EXPECT_NE(a.find("class=\"patch-label\""), std::string::npos);
  EXPECT_NE(a.find("fill=\"red\""), std::string::npos);

  // The demo needs all three tag classes; each gets exactly one path element.
  model::PlannerConfig cfg;
  cfg.move_budget = 100;
  const model::ProblemInstance demo =
      parse_instance(read_file(fs::path(SPOTPATH_DATA_DIR) / "demo_field.geojson"), cfg);
  const std::string d = render_svg(assemble::plan_mission(demo), demo);
  for (const char* cls : {"class=\"path-transit\"", "class=\"path-coverage\"", "class=\"path-detour\""}) {
    const auto first = d.find(cls);
    EXPECT_NE(first, std::string::npos) << cls;
    EXPECT_EQ(d.find(cls, first + 1), std::string::npos) << cls;
  }

  raw.obstacles.clear();
  const model::ProblemInstance bare = model::require_valid(raw);
  const std::string b = render_svg(assemble::plan_mission(bare), bare);
  EXPECT_EQ(b.find("red"), std::string::npos);
  EXPECT_EQ(b.find("class=\"obstacle\""), std::string::npos);
}

TEST(Cli, DefaultsWriteThreeFiles) {
  const fs::path input = fs::path(SPOTPATH_DATA_DIR) / "demo_field.geojson";
  const CliRun r = run_in_temp("defaults", {"--input", input.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(r.dir / "demo_field_path.geojson"));
  EXPECT_TRUE(fs::exists(r.dir / "demo_field_report.csv"));
  EXPECT_TRUE(fs::exists(r.dir / "demo_field.svg"));
  const auto rows = read_csv(read_file(r.dir / "demo_field_report.csv"));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].at("width_m"), "2");
  EXPECT_EQ(rows[0].at("time_limit_s"), "10");
  EXPECT_EQ(rows[0].at("seed"), "0");
  EXPECT_EQ(rows[0].at("tsp_init"), "nn");
  EXPECT_EQ(rows[0].at("tsp_refine"), "h4");
  EXPECT_EQ(rows[0].at("exit_transition"), "straight");
}

TEST(Cli, ZeroWidthIsRejected) {
  const fs::path input = fs::path(SPOTPATH_DATA_DIR) / "demo_field.geojson";
  const CliRun r = run_in_temp("zero_width", {"--input", input.string(), "--width", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("W > 0"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_in_temp("usage1", {}).code, 2);
  const fs::path input = fs::path(SPOTPATH_DATA_DIR) / "demo_field.geojson";
  EXPECT_EQ(run_in_temp("usage2", {"--input", input.string(), "--tsp-init", "best"}).code, 2);
  EXPECT_EQ(run_in_temp("usage3", {"--input", input.string(), "--tsp-refine", "h9"}).code, 2);
}

TEST(Cli, CompareCoverageOnThreePatches) {
  model::RawInstance raw = three_patch_raw();
  const fs::path input = fs::temp_directory_path() / "spotpath_three.geojson";
  write_file(input, write_instance(raw));
  const CliRun r = run_in_temp("compare", {"--input", input.string(), "--compare-coverage", "--move-budget", "500",
                                           "--tsp-refine", "h2,h4", "--report", "r.csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = read_csv(read_file(r.dir / "r.csv"));
  ASSERT_EQ(rows.size(), 2u);
  const auto& row = rows[1];
  const double classic = std::stod(row.at("sum_L_classic_m"));
  const double optim = std::stod(row.at("sum_L_optim_m"));
  EXPECT_LE(optim, classic);
  EXPECT_EQ(std::stod(row.at("savings_m")), classic - optim);
  EXPECT_EQ(std::stod(row.at("savings_pct")), 100.0 * (classic - optim) / classic);
  const double share = std::stod(row.at("coverage_share"));
  EXPECT_GT(share, 0.0);
  EXPECT_LT(share, 1.0);
  EXPECT_EQ(std::stod(row.at("L_total_optim_m")), std::stod(row.at("L_transit_m")) + optim);

  // The same configuration through the library gives the same numbers.
  raw.config.move_budget = 500;
  raw.config.tsp_refine = {model::Refinement::kRemoveReinsert, model::Refinement::kUncross};
  const auto result = assemble::plan_mission(model::require_valid(raw));
  EXPECT_EQ(classic, result.report.sum_classic);
  EXPECT_EQ(optim, result.report.sum_optimised);
  EXPECT_EQ(share, result.report.coverage_share);
  fs::remove(input);
}
