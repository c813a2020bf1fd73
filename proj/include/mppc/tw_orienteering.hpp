#pragma once

#include <vector>

#include "mppc/instance.hpp"
#include "mppc/metric.hpp"

namespace mppc {

enum class Strategy { exact_dp, insertion, bucketed };

std::string to_string(Strategy strategy);
Strategy strategy_from_string(const std::string& text);

// One per-vehicle reward-route query over a site subset.
struct OrienteeringQuery {
    const Instance* instance = nullptr;
    const DistanceMatrix* matrix = nullptr;
    std::vector<int> subset;
    Strategy strategy = Strategy::exact_dp;
    int max_exact_subset = 16; // exact/heuristic crossover

    OrienteeringQuery(const Instance& inst, const DistanceMatrix& m, std::vector<int> sites)
        : instance(&inst), matrix(&m), subset(std::move(sites)) {}
};

// Profit-optimal depot loop over any sub-subset of the query, every visit
// inside its window (waiting allowed). State (visited set, last site) keeps
// a Pareto frontier over (arrival, cost), capped at 64 entries. Equal-profit
// routes resolve toward fewer visits, then the lexicographically smaller
// visit sequence. Returns the empty route when no positive-profit route
// exists. Guarded to |subset| <= max_exact_subset.
Route solve_exact_dp(const OrienteeringQuery& query);

// Cheapest-feasible-insertion heuristic: repeatedly inserts the site with
// the best (marginal capped revenue - detour cost) score, stopping when no
// insertion has a positive score. Feasible by construction.
Route solve_insertion(const OrienteeringQuery& query);

// Sites grouped by the dyadic interval (T/2^(g+1), T/2^g] containing their
// deadline; the last group absorbs everything down to deadline 0. Groups
// are ordered by decreasing deadline and empty groups are dropped.
struct DeadlineBuckets {
    std::vector<std::vector<int>> groups;
};

DeadlineBuckets bucket_by_deadline(const std::vector<int>& subset, const Instance& inst);

// Deadline-bucketed wrapper: solves each bucket alone (exact when the group
// fits the crossover, insertion otherwise), concatenates the sub-paths
// earliest-deadline group first, re-checks feasibility, and returns the
// best of the concatenation, each solo group route, and a direct insertion
// route over the whole subset.
Route solve_bucketed(const OrienteeringQuery& query);

// Dispatches on query.strategy; exact_dp falls through to the bucketed
// wrapper above the crossover size so pipeline calls never hit the guard.
Route solve_orienteering(const OrienteeringQuery& query);

// Drops every visit whose (recomputed, waiting-aware) arrival misses its
// window and splices predecessor to successor, repeating to fixpoint.
// Output always passes check_feasibility.
Route repair_route(const Route& route, const Instance& inst, const DistanceMatrix& matrix);

} // namespace mppc
