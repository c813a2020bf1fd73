#pragma once

#include <optional>
#include <string>
#include <vector>

namespace mppc {

class DistanceMatrix;

// Comparison tolerance for arrival times and load bookkeeping.
inline constexpr double kTimeTol = 1e-9;

enum class MetricMode { euclidean, matrix, haversine };

std::string to_string(MetricMode mode);
MetricMode metric_mode_from_string(const std::string& text);

// A supplier site. Quantities are in product units (unit price 1),
// coordinates in km for the euclidean mode and (longitude, latitude)
// degrees for the haversine mode.
struct Site {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    double quantity = 0.0;
    int open = 0;  // e_i
    int close = 0; // l_i
};

struct Instance {
    std::string name;
    double depot_x = 0.0;
    double depot_y = 0.0;
    double capacity = 0.0; // Q
    double speed = 1.0;    // s_v, km per time unit
    int horizon = 0;       // T
    MetricMode metric_mode = MetricMode::euclidean;
    std::optional<std::vector<std::vector<double>>> matrix; // (n+1)^2, index 0 = depot
    std::vector<Site> sites;

    int n() const { return static_cast<int>(sites.size()); }
    double total_quantity() const;

    // Checks every type invariant (id range, window ordering, Q > 0, ...).
    // Throws ValidationError on the first breach.
    void validate() const;
};

// One depot-to-depot tour. The depot is implicit at both ends; visits and
// arrivals are parallel arrays over site ids.
struct Route {
    int vehicle = 0;
    std::vector<int> visits;
    std::vector<double> arrivals;
    double load = 0.0;    // min(Q, sum of visited quantities)
    double cost = 0.0;    // travel distance including both depot legs
    double revenue = 0.0; // collected quantity at unit price

    bool empty() const { return visits.empty(); }
    double profit() const { return revenue - cost; }
};

struct Solution {
    std::vector<Route> routes;
    double profit = 0.0;
};

// Recomputes arrivals (waiting before the window open), load, cost and
// revenue for a visit sequence. Arrivals are filled even when late; use
// check_feasibility to detect violations.
Route timed_route(const Instance& inst, const DistanceMatrix& matrix,
                  std::vector<int> visits, int vehicle = 0);

enum class ViolationKind {
    time_window,
    capacity,
    disjointness,
    arrival_mismatch,
};

std::string to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    int route_index = -1;
    int site_id = -1;
    double value = 0.0;
    double bound = 0.0;

    std::string describe() const;
};

// Empty result iff every route respects time windows (with waiting),
// the capacity bookkeeping, and routes are pairwise vertex-disjoint.
// Unknown site ids are structural and throw ValidationError.
std::vector<Violation> check_feasibility(const Instance& inst, const Solution& sol,
                                         const DistanceMatrix* matrix = nullptr);

// P = sum_k (min(Q, sum q_i) - sum of consecutive-pair costs).
double compute_profit(const Instance& inst, const Solution& sol,
                      const DistanceMatrix* matrix = nullptr);

struct AssumptionParams {
    double epsilon = 0.5;
    double p = 6.0;
    double alpha = 1.0;

    void validate() const;
};

enum class AssumptionStatus { holds, violated, unknown };

std::string to_string(AssumptionStatus status);

struct AssumptionCheck {
    AssumptionStatus status = AssumptionStatus::unknown;
    std::string witness;
};

struct AssumptionReport {
    AssumptionCheck a1; // q_max <= Q and q_max <= C n^p q_min
    AssumptionCheck a2; // c_ij <= eps/2 q_j for all i, j
    AssumptionCheck a3; // m* >= sqrt(10+p)/alpha, needs an oracle m*

    bool any_violated() const;
};

// Evaluates the three model assumptions. a3 stays unknown unless the
// optimal vehicle count is supplied. `growth_constant` is the C in
// q_max <= C n^p q_min.
AssumptionReport validate_assumptions(const Instance& inst, const DistanceMatrix& matrix,
                                      const AssumptionParams& params,
                                      double growth_constant = 1.0,
                                      std::optional<int> optimal_vehicles = std::nullopt);

} // namespace mppc
