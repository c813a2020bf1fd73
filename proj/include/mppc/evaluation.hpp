#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mppc/instance.hpp"
#include "mppc/metric.hpp"

namespace mppc {

// Certified profit upper bound. Every visited site pays at least half of
// its two smallest incident distances, capped by the depot round trip that
// a single-visit route would cost, so the bound dominates any feasible
// vertex-disjoint route set.
double upper_bound(const Instance& inst, const DistanceMatrix& matrix);

struct OracleResult {
    double optimal_profit = 0.0;
    int optimal_vehicles = 0;      // fewest vehicles among profit-optimal solutions
    double optimal_distance = 0.0; // smallest total distance among those
    std::vector<Route> routes;
};

// Exhaustive search over every ordered, vertex-disjoint route set, pruned
// by time windows and by full loads. Guarded to n <= 8.
OracleResult brute_force_optimum(const Instance& inst, const DistanceMatrix* matrix = nullptr);

struct RouteDiagnostics {
    int vehicle = 0;
    int visit_count = 0;
    double load = 0.0;
    double cost = 0.0;
    double profit = 0.0;
};

struct EvaluationReport {
    std::string problem;
    int n = 0;
    double profit = 0.0;      // P
    double upper = 0.0;       // U
    double rho = 0.0;         // U/P, infinity when P = 0
    std::int64_t time_ms = 0;
    int horizon = 0;          // T
    std::string algorithm;
    std::vector<RouteDiagnostics> route_diagnostics;
    std::vector<std::string> flags;

    static EvaluationReport make(std::string problem, int n, double profit, double upper,
                                 std::int64_t time_ms, int horizon, std::string algorithm);
};

struct RenderedReport {
    std::string text; // aligned table
    std::string json; // lossless machine-readable form
};

RenderedReport render_report(const std::vector<EvaluationReport>& reports);

// Inverse of the machine-readable form emitted by render_report.
std::vector<EvaluationReport> parse_reports(const std::string& json_text);

} // namespace mppc
