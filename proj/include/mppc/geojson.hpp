#pragma once

#include <string>

#include "mppc/instance.hpp"

namespace mppc {

// Feature collection with one point per site (id, quantity, window), the
// depot, and one line string per route (vehicle, profit, visit order).
// Coordinates pass through unchanged. Refuses infeasible solutions with a
// ValidationError listing the violations.
std::string export_geojson(const Instance& inst, const Solution& sol);

} // namespace mppc
