#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "scanline.hpp"
#include "spotpath/coverage.hpp"

namespace spotpath::coverage {
namespace {

struct Step {
  enum class Kind { kArc, kLoop, kLane };
  Kind kind = Kind::kArc;
  double from = 0.0;
  double to = 0.0;
  bool ccw = true;
  std::size_t lane = 0;
  bool forward = true;
};

Step arc_step(const Ring& ring, double from, double to) {
  const double d = ring.ccw_distance(from, to);
  return {Step::Kind::kArc, from, to, d <= ring.perimeter() - d, 0, true};
}

void realize(const CoverageComponent& comp, const std::vector<Step>& steps,
             std::vector<Point2>& out) {
  for (const Step& s : steps) {
    switch (s.kind) {
      case Step::Kind::kArc:
        for (const Point2& p : comp.headland.walk(s.from, s.to, s.ccw)) geom::append_point(out, p);
        break;
      case Step::Kind::kLoop: {
        auto loop = comp.headland.full_loop(s.from);
        if (!s.ccw) std::reverse(loop.begin(), loop.end());
        for (const Point2& p : loop) geom::append_point(out, p);
        break;
      }
      case Step::Kind::kLane: {
        const Lane& l = comp.lanes[s.lane];
        geom::append_point(out, s.forward ? l.start : l.end);
        geom::append_point(out, s.forward ? l.end : l.start);
        break;
      }
    }
  }
}

std::vector<Step> classic_steps(const CoverageComponent& comp) {
  const Ring& ring = comp.headland;
  std::vector<Step> steps{{Step::Kind::kLoop, comp.attach_pos, comp.attach_pos, true, 0, true}};
  const std::size_t k = comp.lanes.size();
  if (k == 0) return steps;

  // Start at whichever end lane endpoint is closest (along the headland) to
  // where the loop finished.
  struct Option {
    std::size_t lane;
    bool from_start;
  };
  const Option options[] = {{0, true}, {0, false}, {k - 1, true}, {k - 1, false}};
  Option first = options[0];
  double best = std::numeric_limits<double>::infinity();
  for (const Option& o : options) {
    const Lane& l = comp.lanes[o.lane];
    const double d = ring.shorter_distance(comp.attach_pos, o.from_start ? l.start_pos : l.end_pos);
    if (d < best - 1e-12) {
      best = d;
      first = o;
    }
  }
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  if (first.lane == k - 1 && k > 1) std::reverse(order.begin(), order.end());

  double cur = comp.attach_pos;
  for (std::size_t idx = 0; idx < k; ++idx) {
    const Lane& l = comp.lanes[order[idx]];
    bool from_start = first.from_start;
    if (idx > 0) {
      from_start = ring.shorter_distance(cur, l.start_pos) <= ring.shorter_distance(cur, l.end_pos);
    }
    steps.push_back(arc_step(ring, cur, from_start ? l.start_pos : l.end_pos));
    steps.push_back({Step::Kind::kLane, 0.0, 0.0, true, order[idx], from_start});
    cur = from_start ? l.end_pos : l.start_pos;
  }
  steps.push_back(arc_step(ring, cur, comp.attach_pos));
  return steps;
}

// Chinese-postman route over the lanes and the headland cycle. Node 0 is the
// attach point, nodes 2k+1 / 2k+2 are the start / end of lane k.
std::vector<Step> optimised_steps(const CoverageComponent& comp) {
  const Ring& ring = comp.headland;
  const double perimeter = ring.perimeter();
  const std::size_t lanes = comp.lanes.size();
  const std::size_t m = 1 + 2 * lanes;

  std::vector<double> pos(m);
  pos[0] = comp.attach_pos;
  for (std::size_t k = 0; k < lanes; ++k) {
    pos[2 * k + 1] = comp.lanes[k].start_pos;
    pos[2 * k + 2] = comp.lanes[k].end_pos;
  }
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pos[a] < pos[b]; });

  struct Edge {
    std::size_t u, v;
    bool is_lane;
    std::size_t lane;
    double length;  // arcs: counter-clockwise length from u to v
  };
  std::vector<Edge> edges;
  std::vector<double> arc_length(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t u = order[i];
    const std::size_t v = order[(i + 1) % m];
    arc_length[i] = i + 1 < m ? pos[v] - pos[u] : perimeter - (pos[order[m - 1]] - pos[order[0]]);
    edges.push_back({u, v, false, 0, arc_length[i]});
  }
  for (std::size_t k = 0; k < lanes; ++k) {
    edges.push_back({2 * k + 1, 2 * k + 2, true, k, comp.lanes[k].length()});
  }

  // Every lane endpoint has odd degree. On a cycle the only T-joins are the
  // two alternating arc sets between consecutive odd nodes; keep the cheaper.
  std::vector<std::size_t> odd_at;  // cycle indices of odd nodes
  for (std::size_t i = 0; i < m; ++i) {
    if (order[i] != 0) odd_at.push_back(i);
  }
  auto arcs_between = [&](std::size_t from_idx, std::size_t to_idx) {
    std::vector<std::size_t> arcs;
    for (std::size_t i = from_idx; i != to_idx; i = (i + 1) % m) arcs.push_back(i);
    return arcs;
  };
  std::vector<std::size_t> join_a, join_b;
  const std::size_t q = odd_at.size();
  for (std::size_t t = 0; t < q; t += 2) {
    for (std::size_t a : arcs_between(odd_at[t], odd_at[t + 1])) join_a.push_back(a);
    for (std::size_t a : arcs_between(odd_at[t + 1], odd_at[(t + 2) % q])) join_b.push_back(a);
  }
  auto join_cost = [&](const std::vector<std::size_t>& arcs) {
    double c = 0.0;
    for (std::size_t a : arcs) c += arc_length[a];
    return c;
  };
  const auto& join = join_cost(join_a) <= join_cost(join_b) ? join_a : join_b;
  for (std::size_t a : join) edges.push_back(edges[a]);

  // Hierholzer from the attach node.
  std::vector<std::vector<std::size_t>> adj(m);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].u].push_back(e);
    if (edges[e].v != edges[e].u) adj[edges[e].v].push_back(e);
  }
  std::vector<std::size_t> next(m, 0);
  std::vector<bool> used(edges.size(), false);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, kNone}};  // (node, edge used to arrive)
  std::vector<std::pair<std::size_t, std::size_t>> circuit;             // reversed traversal
  while (!stack.empty()) {
    const std::size_t v = stack.back().first;
    while (next[v] < adj[v].size() && used[adj[v][next[v]]]) ++next[v];
    if (next[v] < adj[v].size()) {
      const std::size_t e = adj[v][next[v]];
      used[e] = true;
      const std::size_t w = edges[e].u == v ? edges[e].v : edges[e].u;
      stack.push_back({w, e});
    } else {
      if (stack.back().second != kNone) circuit.push_back(stack.back());
      stack.pop_back();
    }
  }
  std::reverse(circuit.begin(), circuit.end());

  std::vector<Step> steps;
  std::size_t at = 0;
  for (const auto& [arrive, e] : circuit) {
    const Edge& edge = edges[e];
    if (edge.is_lane) {
      steps.push_back({Step::Kind::kLane, 0.0, 0.0, true, edge.lane, at == edge.u});
    } else if (edge.u == edge.v || (edge.length > 0.5 * perimeter &&
                                    ring.ccw_distance(pos[edge.u], pos[edge.v]) < 1e-9)) {
      steps.push_back({Step::Kind::kLoop, pos[at], pos[at], at == edge.u, 0, true});
    } else {
      const bool ccw = at == edge.u;
      steps.push_back({Step::Kind::kArc, pos[at], pos[arrive], ccw, 0, true});
    }
    at = arrive;
  }
  return steps;
}

template <typename Route>
CoveragePlan make_plan(PlanKind kind, const Polygon& patch, Point2 entry, double operating_width,
                       std::size_t patch_index, Route&& route) {
  CoveragePlan plan;
  plan.patch_index = patch_index;
  plan.kind = kind;
  plan.layout = build_layout(patch, entry, operating_width);
  if (plan.layout.components.empty()) {
    plan.reclassified = true;
    plan.path.points = {entry};
    plan.warnings.push_back("patch leaves no headland at W/2; treated as needing no coverage");
    return plan;
  }
  if (plan.layout.components.size() > 1) {
    plan.warnings.push_back("headland splits into " + std::to_string(plan.layout.components.size()) +
                            " parts; each is reached from the entry by a straight stub");
  }
  std::vector<Point2> pts{entry};
  for (const CoverageComponent& comp : plan.layout.components) {
    geom::append_point(pts, comp.attach_point);
    realize(comp, route(comp), pts);
    geom::append_point(pts, comp.attach_point);
    geom::append_point(pts, entry);
    plan.headlands.push_back({comp.headland.full_loop(0.0)});
  }
  if (pts.size() == 1) pts.push_back(entry);
  plan.path.points = std::move(pts);
  plan.length = plan.path.length();
  plan.lane_count = plan.layout.lane_count();
  return plan;
}

}  // namespace

PlanKind plan_kind(model::CoverageMethod method) {
  return method == model::CoverageMethod::kClassic ? PlanKind::kClassic : PlanKind::kOptimised;
}

CoveragePlan plan_classic(const Polygon& patch, Point2 entry, double operating_width,
                          std::size_t patch_index) {
  return make_plan(PlanKind::kClassic, patch, entry, operating_width, patch_index, classic_steps);
}

CoveragePlan plan_optimised(const Polygon& patch, Point2 entry, double operating_width,
                            std::size_t patch_index) {
  return make_plan(PlanKind::kOptimised, patch, entry, operating_width, patch_index, optimised_steps);
}

CoveragePlan plan_coverage(model::CoverageMethod method, const Polygon& patch, Point2 entry,
                           double operating_width, std::size_t patch_index) {
  return method == model::CoverageMethod::kClassic
             ? plan_classic(patch, entry, operating_width, patch_index)
             : plan_optimised(patch, entry, operating_width, patch_index);
}

CoveragePlan plan_boustrophedon_reference(const Polygon& patch, double operating_width,
                                          double orientation) {
  CoveragePlan plan;
  plan.kind = PlanKind::kBoustrophedonReference;
  plan.layout.orientation = orientation;
  const auto local = detail::rotated(patch.vertices(), -orientation);
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -vmin;
  for (const Point2& p : local) {
    vmin = std::min(vmin, p.y);
    vmax = std::max(vmax, p.y);
  }
  std::vector<Point2> pts;
  bool forward = true;
  for (double v : lane_offsets(vmin, vmax, operating_width)) {
    const auto xs = detail::scanline(local, v);
    std::vector<std::pair<double, double>> chords;
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      if (xs[k + 1] - xs[k] > 1e-9) chords.emplace_back(xs[k], xs[k + 1]);
    }
    if (!forward) std::reverse(chords.begin(), chords.end());
    for (const auto& [a, b] : chords) {
      const Point2 s = geom::rotate({forward ? a : b, v}, orientation);
      const Point2 e = geom::rotate({forward ? b : a, v}, orientation);
      geom::append_point(pts, s);
      geom::append_point(pts, e);
      ++plan.lane_count;
    }
    forward = !forward;
  }
  plan.path.points = std::move(pts);
  plan.length = plan.path.length();
  return plan;
}

}  // namespace spotpath::coverage
