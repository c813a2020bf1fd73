#include "mppc/instance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "mppc/errors.hpp"
#include "mppc/metric.hpp"

namespace mppc {

std::string to_string(MetricMode mode) {
    switch (mode) {
    case MetricMode::euclidean: return "euclidean";
    case MetricMode::matrix: return "matrix";
    case MetricMode::haversine: return "haversine";
    }
    return "euclidean";
}

MetricMode metric_mode_from_string(const std::string& text) {
    if (text == "euclidean") return MetricMode::euclidean;
    if (text == "matrix") return MetricMode::matrix;
    if (text == "haversine") return MetricMode::haversine;
    throw ParseError("unknown metric mode '" + text + "'");
}

double Instance::total_quantity() const {
    double total = 0.0;
    for (const auto& site : sites) total += site.quantity;
    return total;
}

void Instance::validate() const {
    if (capacity <= 0.0) throw ValidationError("capacity must be positive");
    if (speed <= 0.0) throw ValidationError("speed must be positive");
    if (horizon < 1) throw ValidationError("horizon must be a positive integer");

    std::unordered_set<int> seen;
    for (const auto& site : sites) {
        std::ostringstream where;
        where << "site " << site.id << ": ";
        if (site.id < 0 || site.id >= n())
            throw ValidationError(where.str() + "id outside 0..n-1");
        if (!seen.insert(site.id).second)
            throw ValidationError(where.str() + "duplicate id");
        if (site.quantity < 0.0)
            throw ValidationError(where.str() + "negative quantity");
        if (site.open < 0 || site.open > site.close)
            throw ValidationError(where.str() + "window must satisfy 0 <= open <= close");
        if (site.close > horizon)
            throw ValidationError(where.str() + "window close exceeds horizon");
    }

    if (metric_mode == MetricMode::matrix) {
        if (!matrix) throw ValidationError("matrix metric mode without a matrix");
        const std::size_t dim = sites.size() + 1;
        if (matrix->size() != dim)
            throw ValidationError("explicit matrix must be (n+1) x (n+1)");
        for (const auto& row : *matrix)
            if (row.size() != dim)
                throw ValidationError("explicit matrix must be (n+1) x (n+1)");
    }
}

Route timed_route(const Instance& inst, const DistanceMatrix& matrix,
                  std::vector<int> visits, int vehicle) {
    Route route;
    route.vehicle = vehicle;
    route.visits = std::move(visits);
    route.arrivals.reserve(route.visits.size());

    double clock = 0.0;
    double raw_load = 0.0;
    int prev = DistanceMatrix::depot_node;
    for (int site_id : route.visits) {
        const int node = DistanceMatrix::site_node(site_id);
        const Site& site = inst.sites[site_id];
        clock = std::max(static_cast<double>(site.open), clock + matrix.time(prev, node));
        route.arrivals.push_back(clock);
        route.cost += matrix.distance(prev, node);
        raw_load += site.quantity;
        prev = node;
    }
    if (!route.visits.empty())
        route.cost += matrix.distance(prev, DistanceMatrix::depot_node);
    route.load = std::min(inst.capacity, raw_load);
    route.revenue = route.load;
    return route;
}

std::string to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::time_window: return "time_window";
    case ViolationKind::capacity: return "capacity";
    case ViolationKind::disjointness: return "disjointness";
    case ViolationKind::arrival_mismatch: return "arrival_mismatch";
    }
    return "unknown";
}

std::string Violation::describe() const {
    std::ostringstream out;
    out << to_string(kind) << " at route " << route_index;
    if (site_id >= 0) out << ", site " << site_id;
    out << " (value " << value << ", bound " << bound << ")";
    return out.str();
}

namespace {

void require_known_sites(const Instance& inst, const Solution& sol) {
    for (const auto& route : sol.routes) {
        if (route.arrivals.size() != route.visits.size() && !route.arrivals.empty())
            throw ValidationError("route arrivals and visits differ in length");
        for (int site_id : route.visits)
            if (site_id < 0 || site_id >= inst.n())
                throw ValidationError("unknown site id " + std::to_string(site_id));
    }
}

} // namespace

std::vector<Violation> check_feasibility(const Instance& inst, const Solution& sol,
                                         const DistanceMatrix* matrix) {
    require_known_sites(inst, sol);
    DistanceMatrix local = matrix ? *matrix : build_metric(inst);
    const DistanceMatrix& m = matrix ? *matrix : local;

    std::vector<Violation> violations;
    std::unordered_set<int> visited;
    for (std::size_t r = 0; r < sol.routes.size(); ++r) {
        const Route& route = sol.routes[r];
        for (int site_id : route.visits) {
            if (!visited.insert(site_id).second)
                violations.push_back({ViolationKind::disjointness, static_cast<int>(r),
                                      site_id, 0.0, 0.0});
        }

        const Route timed = timed_route(inst, m, route.visits, route.vehicle);
        for (std::size_t v = 0; v < timed.visits.size(); ++v) {
            const Site& site = inst.sites[timed.visits[v]];
            const double arrival = timed.arrivals[v];
            if (arrival > site.close + kTimeTol)
                violations.push_back({ViolationKind::time_window, static_cast<int>(r),
                                      site.id, arrival, static_cast<double>(site.close)});
            if (!route.arrivals.empty() &&
                std::fabs(route.arrivals[v] - arrival) > 1e-6)
                violations.push_back({ViolationKind::arrival_mismatch, static_cast<int>(r),
                                      site.id, route.arrivals[v], arrival});
        }

        if (route.load > inst.capacity + kTimeTol)
            violations.push_back({ViolationKind::capacity, static_cast<int>(r), -1,
                                  route.load, inst.capacity});
        else if (route.load > 0.0 && std::fabs(route.load - timed.load) > 1e-6)
            violations.push_back({ViolationKind::capacity, static_cast<int>(r), -1,
                                  route.load, timed.load});
    }
    return violations;
}

double compute_profit(const Instance& inst, const Solution& sol,
                      const DistanceMatrix* matrix) {
    require_known_sites(inst, sol);
    DistanceMatrix local = matrix ? *matrix : build_metric(inst);
    const DistanceMatrix& m = matrix ? *matrix : local;

    double profit = 0.0;
    for (const auto& route : sol.routes) {
        const Route timed = timed_route(inst, m, route.visits, route.vehicle);
        profit += timed.revenue - timed.cost;
    }
    return profit;
}

void AssumptionParams::validate() const {
    if (epsilon <= 0.0) throw ParameterError("epsilon must be positive");
    if (p <= 0.0) throw ParameterError("p must be positive");
    if (alpha <= 0.0) throw ParameterError("alpha must be positive");
}

std::string to_string(AssumptionStatus status) {
    switch (status) {
    case AssumptionStatus::holds: return "holds";
    case AssumptionStatus::violated: return "violated";
    case AssumptionStatus::unknown: return "unknown";
    }
    return "unknown";
}

bool AssumptionReport::any_violated() const {
    return a1.status == AssumptionStatus::violated ||
           a2.status == AssumptionStatus::violated ||
           a3.status == AssumptionStatus::violated;
}

AssumptionReport validate_assumptions(const Instance& inst, const DistanceMatrix& matrix,
                                      const AssumptionParams& params,
                                      double growth_constant,
                                      std::optional<int> optimal_vehicles) {
    params.validate();
    AssumptionReport report;

    // Assumption 1 over the non-zero rewards.
    double q_min = 0.0, q_max = 0.0;
    bool any_positive = false;
    for (const auto& site : inst.sites) {
        if (site.quantity <= 0.0) continue;
        if (!any_positive) {
            q_min = q_max = site.quantity;
            any_positive = true;
        } else {
            q_min = std::min(q_min, site.quantity);
            q_max = std::max(q_max, site.quantity);
        }
    }
    if (!any_positive) {
        report.a1 = {AssumptionStatus::holds, "no non-zero rewards; holds vacuously"};
    } else {
        std::ostringstream witness;
        const double growth_bound = growth_constant * std::pow(inst.n(), params.p) * q_min;
        if (q_max > inst.capacity) {
            witness << "q_max " << q_max << " > Q " << inst.capacity;
            report.a1 = {AssumptionStatus::violated, witness.str()};
        } else if (q_max > growth_bound) {
            witness << "q_max " << q_max << " > C n^p q_min " << growth_bound;
            report.a1 = {AssumptionStatus::violated, witness.str()};
        } else {
            witness << "q_max " << q_max << " <= min(Q " << inst.capacity
                    << ", C n^p q_min " << growth_bound << ")";
            report.a1 = {AssumptionStatus::holds, witness.str()};
        }
    }

    // Assumption 2: c_ij <= eps/2 q_j for every head site j and every tail,
    // the depot included.
    report.a2 = {AssumptionStatus::holds, "c_ij <= eps/2 q_j for all pairs"};
    for (const auto& head : inst.sites) {
        const double bound = 0.5 * params.epsilon * head.quantity;
        const int head_node = DistanceMatrix::site_node(head.id);
        for (int tail_node = 0; tail_node < matrix.nodes(); ++tail_node) {
            if (tail_node == head_node) continue;
            const double c = matrix.cost(tail_node, head_node);
            if (c > bound + 1e-12) {
                std::ostringstream witness;
                witness << "c(" << (tail_node == 0 ? "depot" : std::to_string(tail_node - 1))
                        << ", " << head.id << ") = " << c << " > eps/2 q_j = " << bound;
                report.a2 = {AssumptionStatus::violated, witness.str()};
                break;
            }
        }
        if (report.a2.status == AssumptionStatus::violated) break;
    }

    // Assumption 3 references the unobservable optimal vehicle count.
    const double threshold = std::sqrt(10.0 + params.p) / params.alpha;
    if (!optimal_vehicles) {
        report.a3 = {AssumptionStatus::unknown, "not checkable without optimum"};
    } else {
        std::ostringstream witness;
        witness << "m* = " << *optimal_vehicles << " vs sqrt(10+p)/alpha = " << threshold;
        report.a3 = {*optimal_vehicles >= threshold ? AssumptionStatus::holds
                                                    : AssumptionStatus::violated,
                     witness.str()};
    }
    return report;
}

} // namespace mppc
