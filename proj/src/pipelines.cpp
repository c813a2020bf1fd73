#include "mppc/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "mppc/bin_packing.hpp"
#include "mppc/errors.hpp"
#include "mppc/metric.hpp"
#include "mppc/wspd.hpp"

namespace mppc {

std::string to_string(Algorithm algorithm) {
    switch (algorithm) {
    case Algorithm::alg1: return "alg1";
    case Algorithm::alg2: return "alg2";
    case Algorithm::alg3: return "alg3";
    }
    return "alg1";
}

Algorithm algorithm_from_string(const std::string& text) {
    if (text == "1" || text == "alg1") return Algorithm::alg1;
    if (text == "2" || text == "alg2") return Algorithm::alg2;
    if (text == "3" || text == "alg3") return Algorithm::alg3;
    throw ParameterError("unknown algorithm '" + text + "'");
}

std::string to_string(Packer packer) {
    switch (packer) {
    case Packer::ffd: return "ffd";
    case Packer::mffd: return "mffd";
    case Packer::aptas: return "aptas";
    case Packer::exact: return "exact";
    }
    return "mffd";
}

Packer packer_from_string(const std::string& text) {
    if (text == "ffd") return Packer::ffd;
    if (text == "mffd") return Packer::mffd;
    if (text == "aptas") return Packer::aptas;
    if (text == "exact") return Packer::exact;
    throw ParameterError("unknown packer '" + text + "'");
}

void SolverConfig::validate() const {
    AssumptionParams{epsilon, p, alpha}.validate();
    if (max_exact_subset < 1 || max_exact_subset > 18)
        throw ParameterError("exact/heuristic crossover must lie in 1..18");
    if (separation_override && *separation_override <= 0.0)
        throw ParameterError("separation override must be positive");
}

namespace {

Route solve_subset(const Instance& inst, const DistanceMatrix& matrix,
                   std::vector<int> subset, const SolverConfig& cfg) {
    OrienteeringQuery query(inst, matrix, std::move(subset));
    query.strategy = cfg.strategy;
    query.max_exact_subset = cfg.max_exact_subset;
    return solve_orienteering(query);
}

// Shared tail of algorithms 1 and 2: one reward route per bin, repair,
// drop empty vehicles, account profit.
SolveResult route_packing(const Instance& inst, const DistanceMatrix& matrix,
                          const Packing& packing, const SolverConfig& cfg,
                          SolveDiagnostics diagnostics) {
    SolveResult result;
    result.diagnostics = std::move(diagnostics);
    result.diagnostics.groups = packing.bin_count();
    for (const auto& bin : packing.bins) {
        std::vector<int> subset = bin;
        std::sort(subset.begin(), subset.end());
        Route route = solve_subset(inst, matrix, std::move(subset), cfg);
        route = repair_route(route, inst, matrix);
        if (route.empty()) continue;
        route.vehicle = static_cast<int>(result.solution.routes.size());
        result.solution.routes.push_back(std::move(route));
    }
    result.solution.profit = compute_profit(inst, result.solution, &matrix);
    return result;
}

std::vector<double> site_quantities(const Instance& inst) {
    std::vector<double> q;
    q.reserve(inst.sites.size());
    for (const auto& site : inst.sites) q.push_back(site.quantity);
    return q;
}

} // namespace

namespace {

Packing run_packer(Packer packer, const Instance& inst, const SolverConfig& cfg,
                   SolveDiagnostics& diagnostics) {
    const auto quantities = site_quantities(inst);
    switch (packer) {
    case Packer::ffd:
        return pack_ffd(quantities, inst.capacity);
    case Packer::mffd:
        return pack_mffd(quantities, inst.capacity);
    case Packer::exact:
        return pack_exact(quantities, inst.capacity);
    case Packer::aptas: {
        diagnostics.eta = 2.0 / std::sqrt(10.0 + cfg.p);
        bool fell_back = false;
        Packing packing = pack_aptas(quantities, inst.capacity, diagnostics.eta, &fell_back);
        if (fell_back) {
            if (!cfg.allow_aptas_fallback)
                throw SizeLimitError("APTAS enumeration above budget and fallback disabled");
            diagnostics.flags.push_back("aptas_fallback_mffd");
        }
        return packing;
    }
    }
    throw ParameterError("unknown packer");
}

} // namespace

SolveResult run_algorithm1(const Instance& inst, const SolverConfig& cfg) {
    cfg.validate();
    inst.validate();
    const DistanceMatrix matrix = build_metric(inst);
    SolveDiagnostics diagnostics;
    const Packing packing =
        run_packer(cfg.packer_override.value_or(Packer::mffd), inst, cfg, diagnostics);
    return route_packing(inst, matrix, packing, cfg, std::move(diagnostics));
}

SolveResult run_algorithm2(const Instance& inst, const SolverConfig& cfg) {
    cfg.validate();
    inst.validate();
    const DistanceMatrix matrix = build_metric(inst);
    SolveDiagnostics diagnostics;
    const Packing packing =
        run_packer(cfg.packer_override.value_or(Packer::aptas), inst, cfg, diagnostics);
    return route_packing(inst, matrix, packing, cfg, std::move(diagnostics));
}

namespace {

// Step 3 probe: a side is "large" when its load exceeds Q or when no
// ordering can visit every site inside its window.
class SideLabeler {
public:
    SideLabeler(const Instance& inst, const DistanceMatrix& matrix, const SolverConfig& cfg)
        : inst_(inst), matrix_(matrix), cfg_(cfg) {}

    bool is_small(const std::vector<int>& side) {
        const auto key = side;
        if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
        bool small = true;
        double load = 0.0;
        for (int site_id : side) load += inst_.sites[site_id].quantity;
        if (load > inst_.capacity + kTimeTol)
            small = false;
        else
            small = all_visitable(side);
        cache_.emplace(key, small);
        return small;
    }

private:
    bool all_visitable(const std::vector<int>& side) {
        if (static_cast<int>(side.size()) <= cfg_.max_exact_subset)
            return exact_reachable(side);
        // Earliest-deadline-first chain as a cheap sufficiency check.
        std::vector<int> order = side;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (inst_.sites[a].close != inst_.sites[b].close)
                return inst_.sites[a].close < inst_.sites[b].close;
            return a < b;
        });
        double clock = 0.0;
        int prev = DistanceMatrix::depot_node;
        for (int site_id : order) {
            const Site& site = inst_.sites[site_id];
            const int node = DistanceMatrix::site_node(site_id);
            clock = std::max(static_cast<double>(site.open), clock + matrix_.time(prev, node));
            if (clock > site.close + kTimeTol) return false;
            prev = node;
        }
        return true;
    }

    // Bitmask reachability with minimal-arrival states.
    bool exact_reachable(const std::vector<int>& side) {
        const int k = static_cast<int>(side.size());
        const std::size_t masks = std::size_t{1} << k;
        constexpr double kUnreached = std::numeric_limits<double>::infinity();
        std::vector<double> arrival(masks * k, kUnreached);

        for (int j = 0; j < k; ++j) {
            const Site& site = inst_.sites[side[j]];
            const double t = std::max(
                static_cast<double>(site.open),
                matrix_.time(DistanceMatrix::depot_node, DistanceMatrix::site_node(side[j])));
            if (t <= site.close + kTimeTol) arrival[(std::size_t{1} << j) * k + j] = t;
        }
        for (std::size_t mask = 1; mask < masks; ++mask)
            for (int last = 0; last < k; ++last) {
                const double t = arrival[mask * k + last];
                if (!(mask & (std::size_t{1} << last)) || t == kUnreached) continue;
                if (mask + 1 == masks) return true;
                for (int next = 0; next < k; ++next) {
                    if (mask & (std::size_t{1} << next)) continue;
                    const Site& site = inst_.sites[side[next]];
                    const double t2 = std::max(
                        static_cast<double>(site.open),
                        t + matrix_.time(DistanceMatrix::site_node(side[last]),
                                         DistanceMatrix::site_node(side[next])));
                    if (t2 > site.close + kTimeTol) continue;
                    auto& slot = arrival[(mask | (std::size_t{1} << next)) * k + next];
                    slot = std::min(slot, t2);
                }
            }
        // Full mask reachable iff some state on it got a finite arrival.
        for (int last = 0; last < k; ++last)
            if (arrival[(masks - 1) * k + last] != kUnreached) return true;
        return k == 0;
    }

    const Instance& inst_;
    const DistanceMatrix& matrix_;
    const SolverConfig& cfg_;
    std::map<std::vector<int>, bool> cache_;
};

} // namespace

SolveResult run_algorithm3(const Instance& inst, const SolverConfig& cfg) {
    cfg.validate();
    inst.validate();
    const DistanceMatrix matrix = build_metric(inst);

    SolveResult result;
    SolveDiagnostics& diagnostics = result.diagnostics;

    const double total = inst.total_quantity();
    const int target_m = static_cast<int>(std::ceil(total / inst.capacity - kTimeTol));
    if (target_m < 1) {
        // Nothing worth collecting.
        result.solution.profit = 0.0;
        return result;
    }
    const int vehicle_budget = 2 * target_m;

    std::vector<Point> points;
    points.reserve(inst.sites.size());
    for (const auto& site : inst.sites) points.push_back({site.x, site.y});

    double separation;
    if (cfg.separation_override) {
        separation = *cfg.separation_override;
    } else {
        const CalibrationResult calibration = calibrate_separation(points, target_m);
        separation = calibration.separation;
        if (calibration.clamped) diagnostics.flags.push_back("wspd_calibration_clamped");
    }
    diagnostics.separation = separation;

    const SplitTree tree(points);
    std::vector<WspdPair> pairs = compute_wspd(tree, separation);
    diagnostics.groups = static_cast<int>(pairs.size());
    std::stable_sort(pairs.begin(), pairs.end(), [](const WspdPair& a, const WspdPair& b) {
        return a.a.size() + a.b.size() < b.a.size() + b.b.size();
    });

    SideLabeler labeler(inst, matrix, cfg);
    std::set<int> covered;
    const auto all_covered = [&] { return static_cast<int>(covered.size()) == inst.n(); };

    auto assign_side = [&](const std::vector<int>& side) {
        if (static_cast<int>(result.solution.routes.size()) >= vehicle_budget) return;
        std::vector<int> fresh;
        for (int site_id : side)
            if (!covered.contains(site_id)) fresh.push_back(site_id);
        if (fresh.empty()) return;
        covered.insert(side.begin(), side.end());
        Route route = solve_subset(inst, matrix, std::move(fresh), cfg);
        route = repair_route(route, inst, matrix);
        if (route.empty()) return;
        route.vehicle = static_cast<int>(result.solution.routes.size());
        result.solution.routes.push_back(std::move(route));
    };

    for (const auto& pair : pairs) {
        if (all_covered()) break;
        if (labeler.is_small(pair.a)) assign_side(pair.a);
        if (all_covered()) break;
        if (labeler.is_small(pair.b)) assign_side(pair.b);
    }

    // Pairs exhausted with sites uncovered: pack the leftovers as extra
    // vehicles inside the same budget.
    if (!all_covered()) {
        diagnostics.flags.push_back("wspd_fallback_bins");
        std::vector<int> remaining;
        for (int id = 0; id < inst.n(); ++id)
            if (!covered.contains(id)) remaining.push_back(id);
        std::vector<double> quantities;
        quantities.reserve(remaining.size());
        for (int id : remaining) quantities.push_back(inst.sites[id].quantity);
        const Packing packing = pack_mffd(quantities, inst.capacity);
        for (const auto& bin : packing.bins) {
            if (static_cast<int>(result.solution.routes.size()) >= vehicle_budget) {
                diagnostics.flags.push_back("vehicle_budget_exhausted");
                break;
            }
            std::vector<int> side;
            side.reserve(bin.size());
            for (int pos : bin) side.push_back(remaining[pos]);
            std::sort(side.begin(), side.end());
            assign_side(side);
        }
    }

    result.solution.profit = compute_profit(inst, result.solution, &matrix);

    // When the budget ran out before every site was covered, an MFFD
    // routing of the whole set also fits the budget (a first-fit family
    // packing leaves at most one bin half-empty, so it opens at most
    // 2 ceil(sum q / Q) bins). Keep whichever solution earns more.
    if (!all_covered()) {
        Solution whole;
        const Packing packing = pack_mffd(site_quantities(inst), inst.capacity);
        std::set<int> assigned;
        for (const auto& bin : packing.bins) {
            if (static_cast<int>(whole.routes.size()) >= vehicle_budget) break;
            std::vector<int> subset = bin;
            std::sort(subset.begin(), subset.end());
            assigned.insert(subset.begin(), subset.end());
            Route route = solve_subset(inst, matrix, std::move(subset), cfg);
            route = repair_route(route, inst, matrix);
            if (route.empty()) continue;
            route.vehicle = static_cast<int>(whole.routes.size());
            whole.routes.push_back(std::move(route));
        }
        whole.profit = compute_profit(inst, whole, &matrix);
        if (whole.profit > result.solution.profit) {
            result.solution = std::move(whole);
            covered = std::move(assigned);
            diagnostics.flags.push_back("wspd_replaced_by_mffd");
        }
    }

    for (int id = 0; id < inst.n(); ++id)
        if (!covered.contains(id)) diagnostics.uncovered_sites.push_back(id);

    return result;
}

SolveResult run_pipeline(const Instance& inst, const SolverConfig& cfg) {
    switch (cfg.algorithm) {
    case Algorithm::alg1: return run_algorithm1(inst, cfg);
    case Algorithm::alg2: return run_algorithm2(inst, cfg);
    case Algorithm::alg3: return run_algorithm3(inst, cfg);
    }
    throw ParameterError("unknown algorithm");
}

} // namespace mppc
