#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spotpath/geom.hpp"

namespace spotpath::model {

using geom::Point2;
using geom::Polygon;

enum class TspInit { kNearestNeighbour, kDoubleEndedNearestNeighbour };

/// Tour refinement moves.
enum class Refinement {
  kRandomSwap,      // h1: swap two random positions
  kRemoveReinsert,  // h2: move one node to another random position
  kAdjacentFlip,    // h3: swap two consecutive nodes
  kUncross,         // h4: deterministic 2-opt sweep over non-parallel edge pairs
};

enum class CoverageMethod { kClassic, kOptimised };
enum class ExitTransition { kStraight, kHeadland };
enum class AvoidanceMethod { kTangent, kContourFollowing };

struct PlannerConfig {
  double operating_width = 2.0;  // W, meters
  double time_limit = 10.0;      // seconds per sampling heuristic
  std::uint64_t rng_seed = 0;
  TspInit tsp_init = TspInit::kNearestNeighbour;
  std::vector<Refinement> tsp_refine{Refinement::kUncross};
  CoverageMethod coverage_method = CoverageMethod::kOptimised;
  ExitTransition exit_transition = ExitTransition::kStraight;
  // When set, sampling heuristics stop after this many drawn moves instead of
  // the wall-clock limit, which makes runs reproducible.
  std::optional<std::uint64_t> move_budget;
  AvoidanceMethod avoidance = AvoidanceMethod::kTangent;
  double obstacle_inflation = 0.0;  // safety margin around obstacle hulls, meters
};

enum class Severity { kWarning, kError };

struct Diagnostic {
  Severity severity = Severity::kWarning;
  std::string feature;  // feature identifier, empty for instance-level issues
  std::string message;
  std::optional<Point2> location;
};
using Diagnostics = std::vector<Diagnostic>;

std::string to_string(const Diagnostic& d);

class ValidationError : public Error {
 public:
  explicit ValidationError(Diagnostics diagnostics);
  const Diagnostics& diagnostics() const { return diagnostics_; }

 private:
  Diagnostics diagnostics_;
};

/// Geometry as read from an input document, before normalization.
struct RawInstance {
  struct Feature {
    std::string id;
    std::vector<Point2> ring;
  };
  Feature field;
  std::vector<Feature> obstacles;
  std::vector<Feature> patches;
  Point2 entrance;
  std::string entrance_id = "entrance";
  PlannerConfig config;
};

/// Validated planning problem. Patch k (0-based) is transition-graph node k+1;
/// node 0 is the entrance.
struct ProblemInstance {
  Polygon field;
  std::vector<Polygon> obstacles;
  std::vector<Polygon> patches;
  Point2 entrance;
  PlannerConfig config;

  std::string field_id = "field";
  std::vector<std::string> obstacle_ids;
  std::vector<std::string> patch_ids;

  std::size_t patch_count() const { return patches.size(); }
};

struct ValidationReport {
  std::optional<ProblemInstance> instance;
  Diagnostics diagnostics;

  bool ok() const { return instance.has_value(); }
};

/// Largest excursion of a patch beyond the field that is clipped (with a
/// warning) rather than rejected.
inline constexpr double kMaxClippedExcursion = 0.5;
/// Lower bound applied to transition costs of touching features.
inline constexpr double kMinTransitionCost = 1e-6;

/// Checks planner parameters; appends one error per violated invariant.
void validate_config(const PlannerConfig& config, Diagnostics& out);

/// Normalizes and checks every feature. Errors leave `instance` empty;
/// warnings (such as clipped patches) accompany a valid instance.
ValidationReport validate_instance(const RawInstance& raw);

/// validate_instance that throws ValidationError on failure and appends
/// warnings to `warnings` when given.
ProblemInstance require_valid(const RawInstance& raw, Diagnostics* warnings = nullptr);

struct Link {
  Point2 from;  // projection point on the first node
  Point2 to;    // projection point on the second node
};

/// Complete symmetric graph over the entrance (node 0) and the patches.
class TransitionGraph {
 public:
  TransitionGraph() = default;
  explicit TransitionGraph(std::size_t n);

  std::size_t size() const { return n_; }
  double cost(std::size_t i, std::size_t j) const { return costs_[i * n_ + j]; }
  /// Projection points realizing cost(i, j); `from` lies on node i.
  const Link& link(std::size_t i, std::size_t j) const { return links_[i * n_ + j]; }

  /// Sets both directions of the pair.
  void set(std::size_t i, std::size_t j, double cost, Point2 on_i, Point2 on_j);

 private:
  std::size_t n_ = 0;
  std::vector<double> costs_;
  std::vector<Link> links_;
};

TransitionGraph build_transition_graph(const ProblemInstance& instance,
                                       Diagnostics* warnings = nullptr);

/// Graph over point-like nodes with Euclidean costs; nodes[0] is the entrance.
TransitionGraph point_graph(std::span<const Point2> nodes);

struct PatchClassification {
  std::vector<bool> needs_coverage;  // indexed by patch (0-based)
  std::size_t covered_count = 0;     // N_patches,covg
};

/// True when the patch's convex hull is wider than W in every direction, i.e.
/// a single pass cannot spray it.
bool needs_coverage(const Polygon& patch, double operating_width);

PatchClassification classify_patches(const ProblemInstance& instance, const TransitionGraph& graph);

}  // namespace spotpath::model
