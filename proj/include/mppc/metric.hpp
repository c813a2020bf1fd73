#pragma once

#include <iosfwd>
#include <vector>

#include "mppc/instance.hpp"

namespace mppc {

// Complete-graph distances over depot + sites. Node 0 is the depot,
// site i sits at node i + 1. Immutable after construction.
class DistanceMatrix {
public:
    DistanceMatrix(int site_count, std::vector<double> values, double speed);

    static constexpr int depot_node = 0;
    static int site_node(int site_id) { return site_id + 1; }

    int nodes() const { return nodes_; }
    int site_count() const { return nodes_ - 1; }

    double distance(int a, int b) const { return values_[a * nodes_ + b]; }
    double cost(int a, int b) const { return distance(a, b); }
    double time(int a, int b) const { return distance(a, b) / speed_; }

    double depot_to_site(int site_id) const { return distance(depot_node, site_node(site_id)); }
    double site_to_site(int i, int j) const { return distance(site_node(i), site_node(j)); }

    double speed() const { return speed_; }

    // Throws MetricError naming the offending pair/triple when symmetry,
    // nonnegativity, zero diagonal or the triangle inequality fail (1e-9).
    void validate() const;

private:
    int nodes_;
    double speed_;
    std::vector<double> values_;
};

// Builds the matrix from the instance's metric mode. Euclidean uses planar
// km coordinates; haversine treats (x, y) as (longitude, latitude) degrees
// on a 6371 km sphere; matrix mode validates and passes the explicit
// matrix through verbatim.
DistanceMatrix build_metric(const Instance& inst);

// Assembles a matrix from an offline directions-cache document: a JSON
// array of {from, to, distance_km, duration_min} with site ids and -1 for
// the depot. Missing pairs are filled by symmetry, then by shortest path
// over the present entries; the result is the all-pairs shortest-path
// closure, so it is always a metric. A pair left unreachable raises
// IncompleteCacheError naming it.
DistanceMatrix import_directions_cache(std::istream& source, const Instance& inst);

} // namespace mppc
