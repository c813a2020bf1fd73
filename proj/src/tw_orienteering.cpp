#include "mppc/tw_orienteering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "mppc/errors.hpp"

namespace mppc {

namespace {

constexpr double kProfitTol = 1e-12;

// Profit ties resolve toward fewer visits, then the lexicographically
// smaller visit sequence.
bool route_preferred(const Route& candidate, const Route& incumbent) {
    if (candidate.profit() > incumbent.profit() + kProfitTol) return true;
    if (candidate.profit() < incumbent.profit() - kProfitTol) return false;
    if (candidate.visits.size() != incumbent.visits.size())
        return candidate.visits.size() < incumbent.visits.size();
    return candidate.visits < incumbent.visits;
}

struct ParetoEntry {
    double arrival;
    double cost;
    int prev_last;  // position in the subset, -1 for the depot
    int prev_entry;
};

// Frontier over (arrival, cost), both minimized; sorted by arrival
// ascending, cost strictly descending.
class Frontier {
public:
    static constexpr std::size_t kCap = 64;

    bool insert(ParetoEntry entry) {
        for (const auto& e : entries_)
            if (e.arrival <= entry.arrival + kProfitTol && e.cost <= entry.cost + kProfitTol)
                return false;
        std::erase_if(entries_, [&](const ParetoEntry& e) {
            return entry.arrival <= e.arrival + kProfitTol && entry.cost <= e.cost + kProfitTol;
        });
        entries_.push_back(entry);
        std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
            return a.arrival < b.arrival;
        });
        if (entries_.size() > kCap) {
            // Drop the worst profit, i.e. the highest cost.
            auto worst = std::max_element(entries_.begin(), entries_.end(),
                                          [](const auto& a, const auto& b) {
                                              return a.cost < b.cost;
                                          });
            entries_.erase(worst);
        }
        return true;
    }

    const std::vector<ParetoEntry>& entries() const { return entries_; }

private:
    std::vector<ParetoEntry> entries_;
};

} // namespace

std::string to_string(Strategy strategy) {
    switch (strategy) {
    case Strategy::exact_dp: return "exact";
    case Strategy::insertion: return "insertion";
    case Strategy::bucketed: return "bucketed";
    }
    return "exact";
}

Strategy strategy_from_string(const std::string& text) {
    if (text == "exact" || text == "exact_dp") return Strategy::exact_dp;
    if (text == "insertion") return Strategy::insertion;
    if (text == "bucketed") return Strategy::bucketed;
    throw ParameterError("unknown strategy '" + text + "'");
}

Route solve_exact_dp(const OrienteeringQuery& query) {
    const Instance& inst = *query.instance;
    const DistanceMatrix& matrix = *query.matrix;
    const int k = static_cast<int>(query.subset.size());
    if (k > query.max_exact_subset)
        throw SizeLimitError("exact DP is guarded to subsets of " +
                             std::to_string(query.max_exact_subset) + " sites");

    Route best; // the empty depot loop, profit 0
    if (k == 0) return best;

    std::vector<int> subset = query.subset;
    std::sort(subset.begin(), subset.end());

    const std::size_t masks = std::size_t{1} << k;
    std::vector<Frontier> states(masks * k);
    std::vector<double> mask_quantity(masks, 0.0);
    for (std::size_t mask = 1; mask < masks; ++mask) {
        const int low = std::countr_zero(mask);
        mask_quantity[mask] = mask_quantity[mask & (mask - 1)] + inst.sites[subset[low]].quantity;
    }

    auto state = [&](std::size_t mask, int last) -> Frontier& {
        return states[mask * k + last];
    };

    for (int j = 0; j < k; ++j) {
        const Site& site = inst.sites[subset[j]];
        const int node = DistanceMatrix::site_node(subset[j]);
        const double arrival =
            std::max(static_cast<double>(site.open), matrix.time(DistanceMatrix::depot_node, node));
        if (arrival > site.close + kTimeTol) continue;
        state(std::size_t{1} << j, j)
            .insert({arrival, matrix.distance(DistanceMatrix::depot_node, node), -1, -1});
    }

    for (std::size_t mask = 1; mask < masks; ++mask)
        for (int last = 0; last < k; ++last) {
            if (!(mask & (std::size_t{1} << last))) continue;
            const auto& frontier = state(mask, last).entries();
            if (frontier.empty()) continue;
            const int last_node = DistanceMatrix::site_node(subset[last]);
            for (int next = 0; next < k; ++next) {
                if (mask & (std::size_t{1} << next)) continue;
                const Site& site = inst.sites[subset[next]];
                const int next_node = DistanceMatrix::site_node(subset[next]);
                const double leg_time = matrix.time(last_node, next_node);
                const double leg_cost = matrix.distance(last_node, next_node);
                for (std::size_t e = 0; e < frontier.size(); ++e) {
                    const double arrival =
                        std::max(static_cast<double>(site.open), frontier[e].arrival + leg_time);
                    if (arrival > site.close + kTimeTol) continue;
                    state(mask | (std::size_t{1} << next), next)
                        .insert({arrival, frontier[e].cost + leg_cost, last, static_cast<int>(e)});
                }
            }
        }

    // Final sweep: profit = min(Q, sum q) - (cost + return leg).
    double best_profit = 0.0;
    struct Final {
        std::size_t mask;
        int last;
        int entry;
    };
    std::vector<Final> finals;
    for (std::size_t mask = 1; mask < masks; ++mask) {
        const double revenue = std::min(inst.capacity, mask_quantity[mask]);
        for (int last = 0; last < k; ++last) {
            if (!(mask & (std::size_t{1} << last))) continue;
            const int last_node = DistanceMatrix::site_node(subset[last]);
            const auto& frontier = state(mask, last).entries();
            for (std::size_t e = 0; e < frontier.size(); ++e) {
                const double profit =
                    revenue - frontier[e].cost -
                    matrix.distance(last_node, DistanceMatrix::depot_node);
                if (profit > best_profit + kProfitTol) {
                    best_profit = profit;
                    finals.clear();
                }
                if (profit > kProfitTol && profit >= best_profit - kProfitTol)
                    finals.push_back({mask, last, static_cast<int>(e)});
            }
        }
    }
    if (finals.empty()) return best;

    // Keep only the fewest-visit candidates, then compare reconstructed
    // sequences.
    std::size_t min_bits = std::numeric_limits<std::size_t>::max();
    for (const auto& f : finals)
        min_bits = std::min(min_bits, static_cast<std::size_t>(std::popcount(f.mask)));

    bool have_best = false;
    for (const auto& f : finals) {
        if (static_cast<std::size_t>(std::popcount(f.mask)) != min_bits) continue;
        std::vector<int> visits;
        std::size_t mask = f.mask;
        int last = f.last;
        int entry = f.entry;
        while (last >= 0) {
            visits.push_back(subset[last]);
            const ParetoEntry& e = state(mask, last).entries()[entry];
            mask &= ~(std::size_t{1} << last);
            last = e.prev_last;
            entry = e.prev_entry;
        }
        std::reverse(visits.begin(), visits.end());
        Route candidate = timed_route(inst, matrix, std::move(visits));
        if (!have_best || route_preferred(candidate, best)) {
            best = std::move(candidate);
            have_best = true;
        }
    }
    return best;
}

namespace {

// Arrival chain for `visits` with `site` inserted at `position`; true when
// every window still holds.
bool insertion_feasible(const Instance& inst, const DistanceMatrix& matrix,
                        const std::vector<int>& visits, int site, std::size_t position) {
    double clock = 0.0;
    int prev = DistanceMatrix::depot_node;
    auto advance = [&](int site_id) {
        const Site& s = inst.sites[site_id];
        const int node = DistanceMatrix::site_node(site_id);
        clock = std::max(static_cast<double>(s.open), clock + matrix.time(prev, node));
        prev = node;
        return clock <= s.close + kTimeTol;
    };
    for (std::size_t i = 0; i <= visits.size(); ++i) {
        if (i == position && !advance(site)) return false;
        if (i < visits.size() && !advance(visits[i])) return false;
    }
    return true;
}

} // namespace

Route solve_insertion(const OrienteeringQuery& query) {
    const Instance& inst = *query.instance;
    const DistanceMatrix& matrix = *query.matrix;

    std::vector<int> subset = query.subset;
    std::sort(subset.begin(), subset.end());

    std::vector<int> visits;
    std::vector<bool> routed(subset.size(), false);
    double raw_load = 0.0;

    while (true) {
        double best_score = kProfitTol;
        int best_site = -1;
        std::size_t best_pos = 0;
        for (std::size_t s = 0; s < subset.size(); ++s) {
            if (routed[s]) continue;
            const int site_id = subset[s];
            const double marginal =
                std::min(inst.capacity, raw_load + inst.sites[site_id].quantity) -
                std::min(inst.capacity, raw_load);
            const int node = DistanceMatrix::site_node(site_id);
            for (std::size_t pos = 0; pos <= visits.size(); ++pos) {
                const int before = pos == 0 ? DistanceMatrix::depot_node
                                            : DistanceMatrix::site_node(visits[pos - 1]);
                const int after = pos == visits.size()
                                      ? DistanceMatrix::depot_node
                                      : DistanceMatrix::site_node(visits[pos]);
                const double delta = matrix.distance(before, node) +
                                     matrix.distance(node, after) -
                                     matrix.distance(before, after);
                const double score = marginal - delta;
                if (score <= best_score) continue;
                if (!insertion_feasible(inst, matrix, visits, site_id, pos)) continue;
                best_score = score;
                best_site = static_cast<int>(s);
                best_pos = pos;
            }
        }
        if (best_site < 0) break;
        visits.insert(visits.begin() + best_pos, subset[best_site]);
        raw_load += inst.sites[subset[best_site]].quantity;
        routed[best_site] = true;
    }
    return timed_route(inst, matrix, std::move(visits));
}

DeadlineBuckets bucket_by_deadline(const std::vector<int>& subset, const Instance& inst) {
    const int horizon = inst.horizon;
    if (horizon < 1) throw ParameterError("horizon must be at least 1");
    const int group_count =
        std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(horizon)))));

    DeadlineBuckets buckets;
    std::vector<std::vector<int>> groups(group_count);
    std::vector<int> ordered = subset;
    std::sort(ordered.begin(), ordered.end());
    for (int site_id : ordered) {
        const double deadline = inst.sites[site_id].close;
        int g = group_count - 1; // the last group absorbs down to deadline 0
        for (int candidate = 0; candidate < group_count - 1; ++candidate) {
            const double upper = horizon / std::pow(2.0, candidate);
            const double lower = horizon / std::pow(2.0, candidate + 1);
            if (deadline > lower && deadline <= upper) {
                g = candidate;
                break;
            }
        }
        groups[g].push_back(site_id);
    }
    for (auto& group : groups)
        if (!group.empty()) buckets.groups.push_back(std::move(group));
    return buckets;
}

namespace {

Route solve_group(const OrienteeringQuery& query, const std::vector<int>& group) {
    OrienteeringQuery sub(*query.instance, *query.matrix, group);
    sub.max_exact_subset = query.max_exact_subset;
    if (static_cast<int>(group.size()) <= query.max_exact_subset)
        return solve_exact_dp(sub);
    return solve_insertion(sub);
}

} // namespace

Route solve_bucketed(const OrienteeringQuery& query) {
    const Instance& inst = *query.instance;
    const DistanceMatrix& matrix = *query.matrix;

    const DeadlineBuckets buckets = bucket_by_deadline(query.subset, inst);

    std::vector<Route> candidates;
    std::vector<int> concatenated;
    // Earliest deadlines first: groups are ordered by decreasing deadline,
    // so concatenate back to front.
    for (auto it = buckets.groups.rbegin(); it != buckets.groups.rend(); ++it) {
        Route solo = solve_group(query, *it);
        concatenated.insert(concatenated.end(), solo.visits.begin(), solo.visits.end());
        candidates.push_back(std::move(solo));
    }
    const Route stitched = timed_route(inst, matrix, std::move(concatenated));
    candidates.push_back(repair_route(stitched, inst, matrix));

    OrienteeringQuery direct(inst, matrix, query.subset);
    direct.max_exact_subset = query.max_exact_subset;
    candidates.push_back(solve_insertion(direct));

    Route best;
    for (auto& candidate : candidates)
        if (route_preferred(candidate, best) ||
            (best.empty() && !candidate.empty() && candidate.profit() > kProfitTol))
            best = std::move(candidate);
    return best;
}

Route solve_orienteering(const OrienteeringQuery& query) {
    switch (query.strategy) {
    case Strategy::insertion:
        return solve_insertion(query);
    case Strategy::bucketed:
        return solve_bucketed(query);
    case Strategy::exact_dp:
        if (static_cast<int>(query.subset.size()) <= query.max_exact_subset)
            return solve_exact_dp(query);
        return solve_bucketed(query);
    }
    return solve_insertion(query);
}

Route repair_route(const Route& route, const Instance& inst, const DistanceMatrix& matrix) {
    std::vector<int> visits = route.visits;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> kept;
        kept.reserve(visits.size());
        double clock = 0.0;
        int prev = DistanceMatrix::depot_node;
        for (int site_id : visits) {
            const Site& site = inst.sites[site_id];
            const int node = DistanceMatrix::site_node(site_id);
            const double arrival =
                std::max(static_cast<double>(site.open), clock + matrix.time(prev, node));
            if (arrival > site.close + kTimeTol) {
                changed = true; // splice predecessor to successor
                continue;
            }
            kept.push_back(site_id);
            clock = arrival;
            prev = node;
        }
        visits = std::move(kept);
    }
    return timed_route(inst, matrix, std::move(visits), route.vehicle);
}

} // namespace mppc
