#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "spotpath/model.hpp"

namespace spotpath::tsp {

using model::TransitionGraph;

/// Closed visiting order S = (0, s1, ..., sN, 0) over transition-graph nodes.
struct Tour {
  std::vector<std::size_t> sequence;
  double cost = 0.0;
};

class TourError : public Error {
 public:
  using Error::Error;
};

/// Throws TourError unless `sequence` starts and ends at node 0 and visits
/// every other node exactly once.
void check_tour(const TransitionGraph& graph, std::span<const std::size_t> sequence);

/// Sum of edge costs along the closed sequence (validated first).
double tour_cost(const TransitionGraph& graph, std::span<const std::size_t> sequence);

Tour make_tour(const TransitionGraph& graph, std::vector<std::size_t> sequence);

/// Greedy nearest neighbour from the entrance; ties go to the lowest index.
Tour init_nn(const TransitionGraph& graph);

/// Two nearest-neighbour branches grown from the entrance; the branch end with
/// the cheaper extension moves (ties: first branch, then lowest index). The
/// branches are joined once every node is placed.
Tour init_denn(const TransitionGraph& graph);

Tour initial_tour(const TransitionGraph& graph, model::TspInit init);

/// Stop rule for the sampling heuristics.
class SearchBudget {
 public:
  static SearchBudget wall_clock(double seconds) { return SearchBudget(seconds, 0); }
  static SearchBudget moves(std::uint64_t count) { return SearchBudget(0.0, count); }

  bool exhausted(std::uint64_t drawn, double elapsed_seconds) const {
    return move_limit_ > 0 ? drawn >= move_limit_ : elapsed_seconds >= seconds_;
  }
  bool is_move_count() const { return move_limit_ > 0; }

 private:
  SearchBudget(double seconds, std::uint64_t moves) : seconds_(seconds), move_limit_(moves) {}
  double seconds_;
  std::uint64_t move_limit_;
};

struct TracePoint {
  double elapsed = 0.0;  // seconds since the refinement started
  double cost = 0.0;
};

struct RefineOutcome {
  Tour tour;
  double runtime = 0.0;         // seconds
  std::uint64_t iterations = 0; // moves drawn or reroutes attempted
  std::vector<TracePoint> trace;  // initial cost, then every accepted move
};

using Rng = std::mt19937_64;

/// h1: swap two uniformly drawn positions; keep strict improvements.
RefineOutcome refine_random_swap(const TransitionGraph& graph, const Tour& tour, Rng& rng,
                                 SearchBudget budget);
/// h2: remove a random node and reinsert it at a random position.
RefineOutcome refine_remove_reinsert(const TransitionGraph& graph, const Tour& tour, Rng& rng,
                                     SearchBudget budget);
/// h3: swap the nodes at a random position i and i+1.
RefineOutcome refine_adjacent_flip(const TransitionGraph& graph, const Tour& tour, Rng& rng,
                                   SearchBudget budget);

/// h4: for each edge (s[i], s[i+1]) scan later edges (s[j], s[j+1]); when the
/// lines through the nodes' positions are not parallel, try reversing
/// s[i+1..j] and keep it if the tour gets strictly cheaper, then move on to
/// the next i. Passes repeat until one makes no change.
RefineOutcome refine_uncross(const TransitionGraph& graph, const Tour& tour,
                             std::span<const geom::Point2> positions);

/// Planar representative of every node: the point where `tour` enters it.
std::vector<geom::Point2> entry_positions(const TransitionGraph& graph, const Tour& tour);

/// Applies the heuristics in order. Sampling heuristics each get `budget`;
/// h4 uses entry positions of the tour it receives. Runtimes add up.
RefineOutcome refine_pipeline(const TransitionGraph& graph, const Tour& tour,
                              std::span<const model::Refinement> heuristics, Rng& rng,
                              SearchBudget budget);

}  // namespace spotpath::tsp
