#include "mppc/evaluation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "mppc/errors.hpp"
#include "mppc/metric.hpp"

namespace mppc {

double upper_bound(const Instance& inst, const DistanceMatrix& matrix) {
    double bound = 0.0;
    for (const auto& site : inst.sites) {
        const int node = DistanceMatrix::site_node(site.id);
        double nn1 = std::numeric_limits<double>::infinity();
        double nn2 = std::numeric_limits<double>::infinity();
        for (int other = 0; other < matrix.nodes(); ++other) {
            if (other == node) continue;
            const double d = matrix.distance(node, other);
            if (d < nn1) {
                nn2 = nn1;
                nn1 = d;
            } else if (d < nn2) {
                nn2 = d;
            }
        }
        if (!std::isfinite(nn2)) nn2 = nn1; // only the depot exists
        // A visited site pays half of two incident edges, which is at least
        // (nn1 + nn2)/2 on a multi-visit route and exactly the depot round
        // trip on a single-visit one; the min keeps the deduction valid for
        // both shapes.
        const double deduction =
            0.5 * std::min(nn1 + nn2, 2.0 * matrix.depot_to_site(site.id));
        bound += std::max(0.0, site.quantity - deduction);
    }
    return bound;
}

namespace {

struct OracleValue {
    double profit = 0.0;
    int vehicles = 0;
    double distance = 0.0;

    bool better_than(const OracleValue& other) const {
        if (profit > other.profit + 1e-12) return true;
        if (profit < other.profit - 1e-12) return false;
        if (vehicles != other.vehicles) return vehicles < other.vehicles;
        return distance < other.distance - 1e-12;
    }
};

// Exhaustive multi-route search, memoized on the set of sites still
// available. Each step either omits the lowest available site or routes it
// within some ordered sequence; sequences are grown depth-first with time
// window pruning and no extensions of already-full loads.
class BruteForce {
public:
    BruteForce(const Instance& inst, const DistanceMatrix& matrix)
        : inst_(inst), matrix_(matrix) {}

    OracleResult run() {
        const int n = inst_.n();
        memo_.assign(std::size_t{1} << n, {});
        done_.assign(std::size_t{1} << n, false);
        choice_route_.assign(std::size_t{1} << n, {});
        const OracleValue value = best(full_mask());

        OracleResult result;
        result.optimal_profit = value.profit;
        result.optimal_vehicles = value.vehicles;
        result.optimal_distance = value.distance;
        std::size_t mask = full_mask();
        while (mask != 0) {
            const auto& route_visits = choice_route_[mask];
            std::size_t next = mask;
            if (route_visits.empty()) {
                next &= mask - 1; // lowest site omitted
            } else {
                Route route = timed_route(inst_, matrix_, route_visits,
                                          static_cast<int>(result.routes.size()));
                for (int site_id : route_visits) next &= ~(std::size_t{1} << site_id);
                result.routes.push_back(std::move(route));
            }
            mask = next;
        }
        return result;
    }

private:
    std::size_t full_mask() const { return (std::size_t{1} << inst_.n()) - 1; }

    const OracleValue& best(std::size_t mask) {
        if (done_[mask]) return memo_[mask];
        done_[mask] = true;
        if (mask == 0) return memo_[mask];

        const int low = std::countr_zero(mask);
        // Omit the lowest site entirely.
        OracleValue incumbent = best(mask & (mask - 1));
        std::vector<int> best_route;

        std::vector<int> sequence;
        grow(mask, low, sequence, 0.0, 0.0, 0.0, DistanceMatrix::depot_node,
             incumbent, best_route);

        memo_[mask] = incumbent;
        choice_route_[mask] = best_route; // empty means "omit lowest"
        return memo_[mask];
    }

    // Extends `sequence` with every feasible next site; whenever the
    // sequence contains `low`, closing it as a route is a candidate.
    void grow(std::size_t mask, int low, std::vector<int>& sequence, double clock,
              double cost, double raw_load, int prev_node, OracleValue& incumbent,
              std::vector<int>& best_route) {
        const bool contains_low =
            std::find(sequence.begin(), sequence.end(), low) != sequence.end();
        if (contains_low) {
            const double revenue = std::min(inst_.capacity, raw_load);
            const double closed_cost =
                cost + matrix_.distance(prev_node, DistanceMatrix::depot_node);
            std::size_t rest = mask;
            for (int site_id : sequence) rest &= ~(std::size_t{1} << site_id);
            const OracleValue& tail = best(rest);
            const OracleValue candidate{revenue - closed_cost + tail.profit,
                                        tail.vehicles + 1, closed_cost + tail.distance};
            if (candidate.better_than(incumbent)) {
                incumbent = candidate;
                best_route = sequence;
            }
        }
        if (raw_load >= inst_.capacity - kTimeTol) return; // full: extensions only add cost
        for (int next = 0; next < inst_.n(); ++next) {
            if (!(mask & (std::size_t{1} << next))) continue;
            if (std::find(sequence.begin(), sequence.end(), next) != sequence.end()) continue;
            const Site& site = inst_.sites[next];
            const int node = DistanceMatrix::site_node(next);
            const double arrival =
                std::max(static_cast<double>(site.open), clock + matrix_.time(prev_node, node));
            if (arrival > site.close + kTimeTol) continue;
            sequence.push_back(next);
            grow(mask, low, sequence, arrival, cost + matrix_.distance(prev_node, node),
                 raw_load + site.quantity, node, incumbent, best_route);
            sequence.pop_back();
        }
    }

    const Instance& inst_;
    const DistanceMatrix& matrix_;
    std::vector<OracleValue> memo_;
    std::vector<bool> done_;
    std::vector<std::vector<int>> choice_route_;
};

} // namespace

OracleResult brute_force_optimum(const Instance& inst, const DistanceMatrix* matrix) {
    inst.validate();
    if (inst.n() > 8) throw SizeLimitError("brute-force optimum is guarded to n <= 8");
    DistanceMatrix local = matrix ? *matrix : build_metric(inst);
    BruteForce search(inst, local);
    OracleResult result = search.run();
    if (result.routes.empty()) {
        result.optimal_vehicles = 0;
        result.optimal_distance = 0.0;
    }
    return result;
}

EvaluationReport EvaluationReport::make(std::string problem, int n, double profit,
                                        double upper, std::int64_t time_ms, int horizon,
                                        std::string algorithm) {
    EvaluationReport report;
    report.problem = std::move(problem);
    report.n = n;
    report.profit = profit;
    report.upper = upper;
    report.rho = profit > 0.0 ? upper / profit : std::numeric_limits<double>::infinity();
    report.time_ms = time_ms;
    report.horizon = horizon;
    report.algorithm = std::move(algorithm);
    return report;
}

namespace {

std::string trimmed_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6g", value);
    return buffer;
}

std::string rho_text(double rho) {
    if (std::isinf(rho)) return "inf";
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.2f", rho);
    return buffer;
}

} // namespace

RenderedReport render_report(const std::vector<EvaluationReport>& reports) {
    const std::vector<std::string> header = {"problem", "n", "P", "U", "rho", "time (ms)", "T"};
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : reports)
        rows.push_back({r.problem, std::to_string(r.n), trimmed_number(r.profit),
                        trimmed_number(r.upper), rho_text(r.rho),
                        std::to_string(r.time_ms), std::to_string(r.horizon)});

    std::vector<std::size_t> widths(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) widths[c] = header[c].size();
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            widths[c] = std::max(widths[c], row[c].size());

    std::ostringstream text;
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            text << row[c] << std::string(widths[c] - row[c].size(), ' ');
            text << (c + 1 == row.size() ? "\n" : "  ");
        }
    };
    emit(header);
    for (const auto& row : rows) emit(row);

    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json entry{{"problem", r.problem},
                             {"n", r.n},
                             {"P", r.profit},
                             {"U", r.upper},
                             {"time_ms", r.time_ms},
                             {"T", r.horizon},
                             {"algorithm", r.algorithm},
                             {"flags", r.flags}};
        if (std::isinf(r.rho))
            entry["rho"] = "inf";
        else
            entry["rho"] = r.rho;
        entry["routes"] = nlohmann::json::array();
        for (const auto& d : r.route_diagnostics)
            entry["routes"].push_back({{"vehicle", d.vehicle},
                                       {"visits", d.visit_count},
                                       {"load", d.load},
                                       {"cost", d.cost},
                                       {"profit", d.profit}});
        doc.push_back(std::move(entry));
    }

    return {text.str(), doc.dump(2) + "\n"};
}

std::vector<EvaluationReport> parse_reports(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError("report: expected a JSON array");

    std::vector<EvaluationReport> reports;
    try {
        for (const auto& entry : doc) {
            EvaluationReport r;
            r.problem = entry.at("problem").get<std::string>();
            r.n = entry.at("n").get<int>();
            r.profit = entry.at("P").get<double>();
            r.upper = entry.at("U").get<double>();
            r.rho = entry.at("rho").is_string() ? std::numeric_limits<double>::infinity()
                                                : entry.at("rho").get<double>();
            r.time_ms = entry.at("time_ms").get<std::int64_t>();
            r.horizon = entry.at("T").get<int>();
            r.algorithm = entry.at("algorithm").get<std::string>();
            r.flags = entry.at("flags").get<std::vector<std::string>>();
            for (const auto& d : entry.at("routes")) {
                RouteDiagnostics diag;
                diag.vehicle = d.at("vehicle").get<int>();
                diag.visit_count = d.at("visits").get<int>();
                diag.load = d.at("load").get<double>();
                diag.cost = d.at("cost").get<double>();
                diag.profit = d.at("profit").get<double>();
                r.route_diagnostics.push_back(diag);
            }
            reports.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report: ") + e.what());
    }
    return reports;
}

} // namespace mppc
