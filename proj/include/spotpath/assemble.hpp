#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spotpath/avoid.hpp"
#include "spotpath/coverage.hpp"
#include "spotpath/model.hpp"
#include "spotpath/tsp.hpp"

namespace spotpath::assemble {

using geom::Point2;
using geom::Polyline;

struct SegmentTag {
  enum class Kind { kTransit, kDetour, kCoverage };
  Kind kind = Kind::kTransit;
  std::size_t patch = 0;  // instance patch index, coverage segments only

  friend bool operator==(const SegmentTag&, const SegmentTag&) = default;
};

/// "transit", "detour" or "coverage:<patch number>" (1-based).
std::string to_string(const SegmentTag& tag);

struct MissionPath {
  Polyline waypoints;                   // entrance ... entrance
  std::vector<SegmentTag> segment_tags; // one per segment
  double total_length = 0.0;            // sum of segment lengths
  tsp::Tour visit_order;
};

struct PatchReport {
  std::size_t patch = 0;  // instance index
  std::string id;
  bool covered = false;   // needs coverage and got a plan
  bool reclassified = false;
  Point2 entry;
  Point2 exit;
  std::size_t lanes = 0;
  double exit_transition = 0.0;
  double classic = 0.0;    // L_i with classic coverage (plan + exit transition)
  double optimised = 0.0;  // L_i with optimised coverage
};

struct MissionReport {
  model::PlannerConfig config;
  double tsp_runtime = 0.0;     // T, seconds spent in init + refinement
  std::uint64_t tsp_iterations = 0;
  double tsp_length = 0.0;      // L_TSP: tour cost over the transition graph
  double transit_length = 0.0;  // obstacle-corrected transit, incl. chords of uncovered patches
  std::vector<PatchReport> patches;  // in visiting order
  double sum_classic = 0.0;
  double sum_optimised = 0.0;
  double savings_m = 0.0;    // sum_classic - sum_optimised
  double savings_pct = 0.0;  // 100 * savings_m / sum_classic
  double total_classic = 0.0;    // transit + sum_classic
  double total_optimised = 0.0;  // transit + sum_optimised
  double coverage_share_classic = 0.0;    // sum_classic / total_classic
  double coverage_share_optimised = 0.0;
  double total_length = 0.0;     // the configured method's total
  double coverage_share = 0.0;   // the configured method's share
  std::size_t patches_all = 0;
  std::size_t patches_covered = 0;
  double runtime = 0.0;          // whole pipeline, seconds
};

struct MissionResult {
  MissionPath path;
  MissionReport report;
  std::vector<coverage::CoveragePlan> plans;  // configured method, covered patches only
  std::vector<avoid::ObstacleHull> hulls;
  model::Diagnostics warnings;
};

/// Error from one pipeline stage; the message starts with the stage name.
class PipelineError : public Error {
 public:
  PipelineError(std::string stage, const std::string& what);
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Path from the coverage plan's end (the entry point) to the exit point.
/// Straight: the chord. Headland: to the headland, along its shorter arc to
/// the position nearest the exit, then out. Empty when entry == exit.
Polyline exit_transition(const coverage::CoveragePlan& plan, Point2 entry, Point2 exit,
                         model::ExitTransition mode);

/// Transition graph, classification, tour, coverage at the tour's entry
/// points, exit transitions, obstacle and field correction of transit legs.
MissionResult plan_mission(const model::ProblemInstance& instance);

}  // namespace spotpath::assemble
