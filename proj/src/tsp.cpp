#include "spotpath/tsp.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <string>

namespace spotpath::tsp {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Unchecked re-summation for candidates that are valid by construction.
double sum_costs(const TransitionGraph& graph, const std::vector<std::size_t>& seq) {
  double total = 0.0;
  for (std::size_t k = 1; k < seq.size(); ++k) total += graph.cost(seq[k - 1], seq[k]);
  return total;
}

// Shared driver for the sampling heuristics: `propose` mutates a copy of the
// sequence and returns false for a no-op draw.
template <typename Propose>
RefineOutcome sample(const TransitionGraph& graph, const Tour& tour, SearchBudget budget,
                     Propose&& propose) {
  const auto start = Clock::now();
  RefineOutcome out{tour, 0.0, 0, {{0.0, tour.cost}}};
  const std::size_t patches = tour.sequence.size() >= 2 ? tour.sequence.size() - 2 : 0;
  if (patches < 2) {
    out.runtime = seconds_since(start);
    return out;
  }
  std::vector<std::size_t> candidate = out.tour.sequence;
  while (!budget.exhausted(out.iterations, seconds_since(start))) {
    ++out.iterations;
    if (!propose(candidate, patches)) continue;
    const double c = sum_costs(graph, candidate);
    if (c < out.tour.cost) {
      out.tour.sequence = candidate;
      out.tour.cost = c;
      out.trace.push_back({seconds_since(start), c});
    } else {
      candidate = out.tour.sequence;
    }
  }
  out.runtime = seconds_since(start);
  return out;
}

}  // namespace

void check_tour(const TransitionGraph& graph, std::span<const std::size_t> sequence) {
  const std::size_t n = graph.size();
  if (sequence.size() != n + 1) {
    throw TourError("tour must list " + std::to_string(n + 1) + " entries, got " +
                    std::to_string(sequence.size()));
  }
  if (sequence.front() != 0 || sequence.back() != 0) {
    throw TourError("tour must start and end at the entrance (node 0)");
  }
  std::vector<bool> seen(n, false);
  for (std::size_t k = 1; k + 1 < sequence.size(); ++k) {
    const std::size_t v = sequence[k];
    if (v == 0 || v >= n || seen[v]) {
      throw TourError("tour entry " + std::to_string(k) + " (node " + std::to_string(v) +
                      ") breaks the permutation");
    }
    seen[v] = true;
  }
}

double tour_cost(const TransitionGraph& graph, std::span<const std::size_t> sequence) {
  check_tour(graph, sequence);
  double total = 0.0;
  for (std::size_t k = 1; k < sequence.size(); ++k) total += graph.cost(sequence[k - 1], sequence[k]);
  return total;
}

Tour make_tour(const TransitionGraph& graph, std::vector<std::size_t> sequence) {
  const double c = tour_cost(graph, sequence);
  return {std::move(sequence), c};
}

Tour init_nn(const TransitionGraph& graph) {
  const std::size_t n = graph.size();
  std::vector<bool> used(n, false);
  std::vector<std::size_t> seq{0};
  used[0] = true;
  for (std::size_t step = 1; step < n; ++step) {
    const std::size_t from = seq.back();
    std::size_t best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t v = 1; v < n; ++v) {
      if (!used[v] && graph.cost(from, v) < best_cost) {
        best = v;
        best_cost = graph.cost(from, v);
      }
    }
    used[best] = true;
    seq.push_back(best);
  }
  seq.push_back(0);
  return make_tour(graph, std::move(seq));
}

Tour init_denn(const TransitionGraph& graph) {
  const std::size_t n = graph.size();
  std::vector<bool> used(n, false);
  used[0] = true;
  std::vector<std::size_t> branch_a{0};
  std::vector<std::size_t> branch_b{0};
  auto nearest = [&](std::size_t from) {
    std::pair<std::size_t, double> best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t v = 1; v < n; ++v) {
      if (!used[v] && graph.cost(from, v) < best.second) best = {v, graph.cost(from, v)};
    }
    return best;
  };
  for (std::size_t step = 1; step < n; ++step) {
    const auto [va, ca] = nearest(branch_a.back());
    const auto [vb, cb] = nearest(branch_b.back());
    if (ca <= cb) {
      branch_a.push_back(va);
      used[va] = true;
    } else {
      branch_b.push_back(vb);
      used[vb] = true;
    }
  }
  // Join: out along branch a, back along branch b.
  std::vector<std::size_t> seq = branch_a;
  seq.insert(seq.end(), branch_b.rbegin(), branch_b.rend());
  return make_tour(graph, std::move(seq));
}

Tour initial_tour(const TransitionGraph& graph, model::TspInit init) {
  return init == model::TspInit::kNearestNeighbour ? init_nn(graph) : init_denn(graph);
}

RefineOutcome refine_random_swap(const TransitionGraph& graph, const Tour& tour, Rng& rng,
                                 SearchBudget budget) {
  return sample(graph, tour, budget, [&rng](std::vector<std::size_t>& s, std::size_t n) {
    std::uniform_int_distribution<std::size_t> pos(1, n);
    const std::size_t i = pos(rng);
    const std::size_t j = pos(rng);
    if (i == j) return false;
    std::swap(s[i], s[j]);
    return true;
  });
}

RefineOutcome refine_remove_reinsert(const TransitionGraph& graph, const Tour& tour, Rng& rng,
                                     SearchBudget budget) {
  return sample(graph, tour, budget, [&rng](std::vector<std::size_t>& s, std::size_t n) {
    std::uniform_int_distribution<std::size_t> pos(1, n);
    const std::size_t i = pos(rng);
    const std::size_t j = pos(rng);
    if (i == j) return false;
    const std::size_t node = s[i];
    s.erase(s.begin() + static_cast<std::ptrdiff_t>(i));
    s.insert(s.begin() + static_cast<std::ptrdiff_t>(j), node);
    return true;
  });
}

RefineOutcome refine_adjacent_flip(const TransitionGraph& graph, const Tour& tour, Rng& rng,
                                   SearchBudget budget) {
  return sample(graph, tour, budget, [&rng](std::vector<std::size_t>& s, std::size_t n) {
    std::uniform_int_distribution<std::size_t> pos(1, n - 1);
    const std::size_t i = pos(rng);
    std::swap(s[i], s[i + 1]);
    return true;
  });
}

RefineOutcome refine_uncross(const TransitionGraph& graph, const Tour& tour,
                             std::span<const geom::Point2> positions) {
  const auto start = Clock::now();
  RefineOutcome out{tour, 0.0, 0, {{0.0, tour.cost}}};
  std::vector<std::size_t>& s = out.tour.sequence;
  const std::size_t n = s.size() >= 2 ? s.size() - 2 : 0;

  auto parallel = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    const geom::Point2 pa = positions[a], pb = positions[b], pc = positions[c], pd = positions[d];
    // A zero-length representative edge has no direction; treat as non-parallel.
    if (pa == pb || pc == pd) return false;
    return geom::segments_parallel(pa, pb, pc, pd);
  };

  bool updated = true;
  while (updated) {
    updated = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) {
        const std::size_t a = s[i], b = s[i + 1], c = s[j], d = s[j + 1];
        if (parallel(a, b, c, d)) continue;
        ++out.iterations;
        const double delta = graph.cost(a, c) + graph.cost(b, d) - graph.cost(a, b) - graph.cost(c, d);
        if (delta >= -1e-12) continue;
        std::vector<std::size_t> candidate = s;
        std::reverse(candidate.begin() + static_cast<std::ptrdiff_t>(i + 1),
                     candidate.begin() + static_cast<std::ptrdiff_t>(j + 1));
        const double cost = sum_costs(graph, candidate);
        if (cost < out.tour.cost) {
          s = std::move(candidate);
          out.tour.cost = cost;
          out.trace.push_back({seconds_since(start), cost});
          updated = true;
          break;
        }
      }
    }
  }
  out.runtime = seconds_since(start);
  return out;
}

std::vector<geom::Point2> entry_positions(const TransitionGraph& graph, const Tour& tour) {
  std::vector<geom::Point2> pos(graph.size());
  const auto& s = tour.sequence;
  if (s.size() >= 2) pos[0] = graph.link(s[0], s[1]).from;
  for (std::size_t k = 1; k + 1 < s.size(); ++k) pos[s[k]] = graph.link(s[k - 1], s[k]).to;
  return pos;
}

RefineOutcome refine_pipeline(const TransitionGraph& graph, const Tour& tour,
                              std::span<const model::Refinement> heuristics, Rng& rng,
                              SearchBudget budget) {
  RefineOutcome total{tour, 0.0, 0, {{0.0, tour.cost}}};
  for (model::Refinement h : heuristics) {
    RefineOutcome step;
    switch (h) {
      case model::Refinement::kRandomSwap:
        step = refine_random_swap(graph, total.tour, rng, budget);
        break;
      case model::Refinement::kRemoveReinsert:
        step = refine_remove_reinsert(graph, total.tour, rng, budget);
        break;
      case model::Refinement::kAdjacentFlip:
        step = refine_adjacent_flip(graph, total.tour, rng, budget);
        break;
      case model::Refinement::kUncross: {
        const auto pos = entry_positions(graph, total.tour);
        step = refine_uncross(graph, total.tour, pos);
        break;
      }
    }
    for (std::size_t k = 1; k < step.trace.size(); ++k) {
      total.trace.push_back({total.runtime + step.trace[k].elapsed, step.trace[k].cost});
    }
    total.runtime += step.runtime;
    total.iterations += step.iterations;
    total.tour = std::move(step.tour);
  }
  return total;
}

}  // namespace spotpath::tsp
