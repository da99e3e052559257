#include "spotpath/assemble.hpp"

#include <chrono>

namespace spotpath::assemble {
namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(name, e.what());
  }
}

class Builder {
 public:
  explicit Builder(Point2 start) { path_.waypoints.points.push_back(start); }

  // Appends `leg` (which must start at the current end) with one tag.
  void add(const std::vector<Point2>& leg, SegmentTag tag) {
    auto& pts = path_.waypoints.points;
    for (const Point2& p : leg) {
      const Point2 last = pts.back();
      if (geom::distance(last, p) <= 1e-9) continue;
      pts.push_back(p);
      path_.segment_tags.push_back(tag);
      const double len = geom::distance(last, p);
      path_.total_length += len;
      (tag.kind == SegmentTag::Kind::kCoverage ? coverage_ : transit_) += len;
    }
  }

  MissionPath& path() { return path_; }
  double transit() const { return transit_; }
  double coverage() const { return coverage_; }

 private:
  MissionPath path_;
  double transit_ = 0.0;
  double coverage_ = 0.0;
};

}  // namespace

std::string to_string(const SegmentTag& tag) {
  switch (tag.kind) {
    case SegmentTag::Kind::kTransit:
      return "transit";
    case SegmentTag::Kind::kDetour:
      return "detour";
    case SegmentTag::Kind::kCoverage:
      return "coverage:" + std::to_string(tag.patch + 1);
  }
  return "transit";
}

PipelineError::PipelineError(std::string stage, const std::string& what)
    : Error(stage + ": " + what), stage_(std::move(stage)) {}

Polyline exit_transition(const coverage::CoveragePlan& plan, Point2 entry, Point2 exit,
                         model::ExitTransition mode) {
  if (geom::distance(entry, exit) <= 1e-9) return {};
  if (mode == model::ExitTransition::kStraight || plan.layout.components.empty()) {
    return {{entry, exit}};
  }
  const coverage::CoverageComponent& comp = plan.layout.components.front();
  const geom::Ring& ring = comp.headland;
  std::vector<Point2> pts{entry};
  geom::append_point(pts, comp.attach_point);
  for (const Point2& p : ring.walk_shorter(comp.attach_pos, ring.position_of(exit))) {
    geom::append_point(pts, p);
  }
  geom::append_point(pts, exit);
  return {std::move(pts)};
}

MissionResult plan_mission(const model::ProblemInstance& instance) {
  const auto t0 = Clock::now();
  const model::PlannerConfig& cfg = instance.config;
  const double W = cfg.operating_width;
  MissionResult result;
  MissionReport& report = result.report;
  report.config = cfg;
  report.patches_all = instance.patch_count();

  const model::TransitionGraph graph =
      stage("transition graph", [&] { return model::build_transition_graph(instance, &result.warnings); });
  const model::PatchClassification classes =
      stage("classification", [&] { return model::classify_patches(instance, graph); });

  const tsp::RefineOutcome refined = stage("tour", [&] {
    const auto start = Clock::now();
    tsp::Rng rng(cfg.rng_seed);
    const tsp::SearchBudget budget =
        cfg.move_budget ? tsp::SearchBudget::moves(*cfg.move_budget) : tsp::SearchBudget::wall_clock(cfg.time_limit);
    tsp::RefineOutcome out =
        tsp::refine_pipeline(graph, tsp::initial_tour(graph, cfg.tsp_init), cfg.tsp_refine, rng, budget);
    out.runtime = std::chrono::duration<double>(Clock::now() - start).count();
    return out;
  });
  const std::vector<std::size_t>& seq = refined.tour.sequence;
  report.tsp_runtime = refined.runtime;
  report.tsp_iterations = refined.iterations;
  report.tsp_length = refined.tour.cost;

  stage("obstacle hulls", [&] {
    for (std::size_t i = 0; i < instance.obstacles.size(); ++i) {
      result.hulls.push_back(
          avoid::make_hull(instance.obstacles[i], cfg.obstacle_inflation, instance.obstacle_ids[i]));
    }
    return 0;
  });

  Builder builder(instance.entrance);
  auto transit_leg = [&](Point2 from, Point2 to) {
    if (geom::distance(from, to) <= 1e-9) return;
    std::vector<std::string> notes;
    const Polyline leg = stage("obstacle avoidance", [&] {
      const Polyline around = avoid::detour_segment(from, to, result.hulls, cfg.avoidance, &notes);
      return avoid::contain_in_field(around, instance.field);
    });
    for (const std::string& n : notes) result.warnings.push_back({model::Severity::kWarning, "", n, from});
    const bool straight = leg.points.size() == 2;
    builder.add(leg.points, {straight ? SegmentTag::Kind::kTransit : SegmentTag::Kind::kDetour, 0});
  };

  std::size_t covered = 0;
  for (std::size_t k = 1; k + 1 < seq.size(); ++k) {
    const std::size_t node = seq[k];
    const std::size_t patch = node - 1;
    PatchReport pr;
    pr.patch = patch;
    pr.id = instance.patch_ids[patch];
    pr.entry = graph.link(seq[k - 1], node).to;
    pr.exit = graph.link(node, seq[k + 1]).from;
    transit_leg(builder.path().waypoints.points.back(), pr.entry);

    std::optional<coverage::CoveragePlan> chosen;
    if (classes.needs_coverage[patch]) {
      const std::string label = "coverage of patch " + pr.id;
      auto classic = stage(label.c_str(), [&] { return coverage::plan_classic(instance.patches[patch], pr.entry, W, patch); });
      auto optimised =
          stage(label.c_str(), [&] { return coverage::plan_optimised(instance.patches[patch], pr.entry, W, patch); });
      for (const std::string& w : optimised.warnings) {
        result.warnings.push_back({model::Severity::kWarning, pr.id, w, pr.entry});
      }
      if (!optimised.reclassified) {
        const Polyline exit_leg = exit_transition(optimised, pr.entry, pr.exit, cfg.exit_transition);
        pr.exit_transition = exit_leg.length();
        pr.classic = classic.length + pr.exit_transition;
        pr.optimised = optimised.length + pr.exit_transition;
        pr.lanes = optimised.lane_count;
        pr.covered = true;
        ++covered;
        chosen = cfg.coverage_method == model::CoverageMethod::kClassic ? std::move(classic) : std::move(optimised);
        const SegmentTag tag{SegmentTag::Kind::kCoverage, patch};
        builder.add(chosen->path.points, tag);
        builder.add(exit_leg.points, tag);
        result.plans.push_back(std::move(*chosen));
      } else {
        pr.reclassified = true;
      }
    }
    if (!pr.covered) {
      builder.add({pr.entry, pr.exit}, {SegmentTag::Kind::kTransit, 0});
      pr.exit_transition = geom::distance(pr.entry, pr.exit);
    }
    report.patches.push_back(std::move(pr));
  }
  transit_leg(builder.path().waypoints.points.back(), instance.entrance);

  report.patches_covered = covered;
  report.transit_length = builder.transit();
  for (const PatchReport& pr : report.patches) {
    report.sum_classic += pr.classic;
    report.sum_optimised += pr.optimised;
  }
  report.savings_m = report.sum_classic - report.sum_optimised;
  report.savings_pct = report.sum_classic > 0.0 ? 100.0 * report.savings_m / report.sum_classic : 0.0;
  report.total_classic = report.transit_length + report.sum_classic;
  report.total_optimised = report.transit_length + report.sum_optimised;
  report.coverage_share_classic = report.total_classic > 0.0 ? report.sum_classic / report.total_classic : 0.0;
  report.coverage_share_optimised =
      report.total_optimised > 0.0 ? report.sum_optimised / report.total_optimised : 0.0;
  report.total_length = builder.transit() + builder.coverage();
  report.coverage_share = report.total_length > 0.0 ? builder.coverage() / report.total_length : 0.0;

  result.path = std::move(builder.path());
  result.path.visit_order = refined.tour;
  report.runtime = std::chrono::duration<double>(Clock::now() - t0).count();
  return result;
}

}  // namespace spotpath::assemble
