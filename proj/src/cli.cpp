#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "report_fields.hpp"
#include "spotpath/io.hpp"

namespace spotpath::io {
namespace {

template <typename E>
std::map<std::string, E> choices(std::initializer_list<E> values) {
  std::map<std::string, E> out;
  for (E v : values) out[detail::name(v)] = v;
  return out;
}

std::vector<model::Refinement> parse_refine(const std::string& csv) {
  const auto table = choices({model::Refinement::kRandomSwap, model::Refinement::kRemoveReinsert,
                              model::Refinement::kAdjacentFlip, model::Refinement::kUncross});
  std::vector<model::Refinement> out;
  if (csv == "none") return out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto it = table.find(item);
    if (it == table.end()) throw CLI::ValidationError("--tsp-refine", "unknown heuristic \"" + item + "\" (use h1..h4)");
    out.push_back(it->second);
  }
  return out;
}

void print(std::ostream& err, const model::Diagnostics& diagnostics) {
  for (const model::Diagnostic& d : diagnostics) err << model::to_string(d) << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Plans a spot-spraying mission over the patches of a field."};
  model::PlannerConfig cfg;
  std::string input, svg_path, out_path, report_path, refine = "h4";
  std::uint64_t move_budget = 0;
  bool compare = false;
  app.add_option("--input", input, "instance GeoJSON FeatureCollection")->required()->check(CLI::ExistingFile);
  app.add_option("--width", cfg.operating_width, "operating width W in meters")->capture_default_str();
  app.add_option("--time-limit", cfg.time_limit, "seconds per sampling heuristic")->capture_default_str();
  app.add_option("--seed", cfg.rng_seed, "random seed")->capture_default_str();
  app.add_option("--tsp-init", cfg.tsp_init, "tour initialisation: nn or denn")
      ->transform(CLI::CheckedTransformer(choices({model::TspInit::kNearestNeighbour,
                                                   model::TspInit::kDoubleEndedNearestNeighbour})))
      ->default_str("nn");
  app.add_option("--tsp-refine", refine, "comma-separated refinements from h1,h2,h3,h4 (or none)")
      ->capture_default_str();
  app.add_option("--coverage", cfg.coverage_method, "coverage planner: classic or optimised")
      ->transform(CLI::CheckedTransformer(
          choices({model::CoverageMethod::kClassic, model::CoverageMethod::kOptimised})))
      ->default_str("optimised");
  app.add_option("--exit-transition", cfg.exit_transition, "patch exit transition: straight or headland")
      ->transform(CLI::CheckedTransformer(
          choices({model::ExitTransition::kStraight, model::ExitTransition::kHeadland})))
      ->default_str("straight");
  app.add_option("--avoidance", cfg.avoidance, "obstacle avoidance: tangent or contour")
      ->transform(CLI::CheckedTransformer(
          choices({model::AvoidanceMethod::kTangent, model::AvoidanceMethod::kContourFollowing})))
      ->default_str("tangent");
  app.add_option("--inflation", cfg.obstacle_inflation, "obstacle safety margin in meters")->capture_default_str();
  app.add_option("--move-budget", move_budget,
                 "moves per sampling heuristic instead of the time limit (reproducible runs)");
  app.add_flag("--compare-coverage", compare, "report both coverage methods and the savings");
  app.add_option("--svg", svg_path, "SVG rendering output");
  app.add_option("--out", out_path, "path GeoJSON output");
  app.add_option("--report", report_path, "CSV report output");

  try {
    app.parse(argc, argv);
    cfg.tsp_refine = parse_refine(refine);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  if (app.count("--move-budget")) cfg.move_budget = move_budget;

  const std::filesystem::path in(input);
  const std::string stem = in.stem().string();
  if (out_path.empty()) out_path = stem + "_path.geojson";
  if (report_path.empty()) report_path = stem + "_report.csv";
  if (svg_path.empty()) svg_path = stem + ".svg";

  try {
    model::Diagnostics warnings;
    const model::ProblemInstance instance = parse_instance(read_file(in), cfg, &warnings);
    print(err, warnings);
    const assemble::MissionResult result = assemble::plan_mission(instance);
    print(err, result.warnings);
    write_file(out_path, write_path(result, instance));
    write_file(report_path, report_csv(result.report, compare));
    write_file(svg_path, render_svg(result, instance));

    const assemble::MissionReport& r = result.report;
    out << "patches: " << r.patches_all << " (" << r.patches_covered << " covered)\n"
        << "L_total: " << r.total_length << " m, transit " << r.transit_length << " m, coverage share "
        << r.coverage_share << "\n";
    if (compare) {
      out << "coverage classic " << r.sum_classic << " m, optimised " << r.sum_optimised << " m, savings "
          << r.savings_m << " m (" << r.savings_pct << " %)\n";
    }
    out << "wrote " << out_path << ", " << report_path << ", " << svg_path << "\n";
    return 0;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const model::ValidationError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace spotpath::io
