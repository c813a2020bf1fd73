#include "mppc/geojson.hpp"

#include <sstream>

#include <json.hpp>

#include "mppc/errors.hpp"
#include "mppc/metric.hpp"

namespace mppc {

std::string export_geojson(const Instance& inst, const Solution& sol) {
    const DistanceMatrix matrix = build_metric(inst);
    const auto violations = check_feasibility(inst, sol, &matrix);
    if (!violations.empty()) {
        std::ostringstream what;
        what << "refusing to export an infeasible solution:";
        for (const auto& v : violations) what << "\n  " << v.describe();
        throw ValidationError(what.str());
    }

    using nlohmann::json;
    json features = json::array();

    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "Point"},
                                      {"coordinates", {inst.depot_x, inst.depot_y}}}},
                        {"properties", {{"role", "depot"}}}});
    for (const auto& site : inst.sites)
        features.push_back({{"type", "Feature"},
                            {"geometry", {{"type", "Point"},
                                          {"coordinates", {site.x, site.y}}}},
                            {"properties", {{"role", "site"},
                                            {"id", site.id},
                                            {"quantity", site.quantity},
                                            {"open", site.open},
                                            {"close", site.close}}}});

    for (const auto& route : sol.routes) {
        const Route timed = timed_route(inst, matrix, route.visits, route.vehicle);
        json coords = json::array();
        coords.push_back({inst.depot_x, inst.depot_y});
        for (int site_id : route.visits)
            coords.push_back({inst.sites[site_id].x, inst.sites[site_id].y});
        coords.push_back({inst.depot_x, inst.depot_y});
        features.push_back({{"type", "Feature"},
                            {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
                            {"properties", {{"vehicle", route.vehicle},
                                            {"profit", timed.profit()},
                                            {"visits", route.visits}}}});
    }

    const json doc{{"type", "FeatureCollection"}, {"features", features}};
    return doc.dump(2) + "\n";
}

} // namespace mppc
