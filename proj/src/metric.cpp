#include "mppc/metric.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "mppc/errors.hpp"

namespace mppc {

namespace {

constexpr double kMetricTol = 1e-9;
constexpr double kEarthRadiusKm = 6371.0;

double haversine_km(double lon1, double lat1, double lon2, double lat2) {
    const double to_rad = std::acos(-1.0) / 180.0;
    const double phi1 = lat1 * to_rad;
    const double phi2 = lat2 * to_rad;
    const double dphi = (lat2 - lat1) * to_rad;
    const double dlambda = (lon2 - lon1) * to_rad;
    const double a = std::sin(dphi / 2) * std::sin(dphi / 2) +
                     std::cos(phi1) * std::cos(phi2) *
                         std::sin(dlambda / 2) * std::sin(dlambda / 2);
    return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

// In-place Floyd-Warshall closure.
void shortest_path_closure(std::vector<double>& d, int n) {
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            const double dik = d[i * n + k];
            if (!std::isfinite(dik)) continue;
            for (int j = 0; j < n; ++j) {
                const double via = dik + d[k * n + j];
                if (via < d[i * n + j]) d[i * n + j] = via;
            }
        }
}

} // namespace

DistanceMatrix::DistanceMatrix(int site_count, std::vector<double> values, double speed)
    : nodes_(site_count + 1), speed_(speed), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>(nodes_) * nodes_)
        throw MetricError("distance matrix has wrong dimension");
    if (speed_ <= 0.0) throw MetricError("speed must be positive");
}

void DistanceMatrix::validate() const {
    const int n = nodes_;
    for (int i = 0; i < n; ++i) {
        if (std::fabs(distance(i, i)) > kMetricTol)
            throw MetricError("nonzero diagonal at node " + std::to_string(i));
        for (int j = 0; j < n; ++j) {
            if (distance(i, j) < -kMetricTol)
                throw MetricError("negative distance at (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ")");
            if (std::fabs(distance(i, j) - distance(j, i)) > kMetricTol)
                throw MetricError("asymmetric entry at (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ")");
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (distance(i, j) > distance(i, k) + distance(k, j) + kMetricTol) {
                    std::ostringstream what;
                    what << "triangle inequality violated for (" << i << ", " << j
                         << ", " << k << "): " << distance(i, j) << " > "
                         << distance(i, k) + distance(k, j);
                    throw MetricError(what.str());
                }
}

DistanceMatrix build_metric(const Instance& inst) {
    inst.validate();
    const int n = inst.n() + 1;
    std::vector<double> values(static_cast<std::size_t>(n) * n, 0.0);

    auto coord = [&](int node) {
        if (node == 0) return std::pair<double, double>{inst.depot_x, inst.depot_y};
        const Site& s = inst.sites[node - 1];
        return std::pair<double, double>{s.x, s.y};
    };

    switch (inst.metric_mode) {
    case MetricMode::euclidean:
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                auto [xi, yi] = coord(i);
                auto [xj, yj] = coord(j);
                values[i * n + j] = values[j * n + i] = std::hypot(xi - xj, yi - yj);
            }
        break;
    case MetricMode::haversine:
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                auto [xi, yi] = coord(i);
                auto [xj, yj] = coord(j);
                values[i * n + j] = values[j * n + i] = haversine_km(xi, yi, xj, yj);
            }
        break;
    case MetricMode::matrix:
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                values[i * n + j] = (*inst.matrix)[i][j];
        break;
    }

    DistanceMatrix matrix(inst.n(), std::move(values), inst.speed);
    matrix.validate();
    return matrix;
}

DistanceMatrix import_directions_cache(std::istream& source, const Instance& inst) {
    inst.validate();
    nlohmann::json doc;
    try {
        source >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("directions cache: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError("directions cache must be a JSON array");

    const int n = inst.n() + 1;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> d(static_cast<std::size_t>(n) * n, inf);
    for (int i = 0; i < n; ++i) d[i * n + i] = 0.0;

    auto node_of = [&](int id) {
        if (id == -1) return 0;
        if (id < 0 || id >= inst.n())
            throw ParseError("directions cache references unknown site id " +
                             std::to_string(id));
        return id + 1;
    };

    for (const auto& entry : doc) {
        try {
            const int a = node_of(entry.at("from").get<int>());
            const int b = node_of(entry.at("to").get<int>());
            const double dist = entry.at("distance_km").get<double>();
            if (entry.contains("duration_min") && entry["duration_min"].get<double>() < 0.0)
                throw ParseError("directions cache: negative duration");
            if (dist < 0.0) throw ParseError("directions cache: negative distance");
            if (a == b) continue;
            // Undirected edge; duplicates keep the shorter leg.
            d[a * n + b] = std::min(d[a * n + b], dist);
            d[b * n + a] = std::min(d[b * n + a], dist);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("directions cache entry: ") + e.what());
        }
    }

    shortest_path_closure(d, n);

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!std::isfinite(d[i * n + j])) {
                auto label = [](int node) {
                    return node == 0 ? std::string("depot") : std::to_string(node - 1);
                };
                throw IncompleteCacheError("directions cache leaves pair (" + label(i) +
                                           ", " + label(j) + ") unreachable");
            }

    DistanceMatrix matrix(inst.n(), std::move(d), inst.speed);
    matrix.validate();
    return matrix;
}

} // namespace mppc
