#include "mppc/io.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "mppc/errors.hpp"

namespace mppc {

namespace {

using nlohmann::json;

json parse_document(std::istream& source, const char* what) {
    json doc;
    try {
        source >> doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
    return doc;
}

void require_version(const json& doc, const char* what) {
    if (!doc.contains("version") || !doc["version"].is_number_integer())
        throw ParseError(std::string(what) + ": missing integer 'version'");
    if (doc["version"].get<int>() != 1)
        throw ParseError(std::string(what) + ": unsupported version " +
                         doc["version"].dump());
}

std::ifstream open_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return in;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

} // namespace

Instance load_instance(std::istream& source) {
    const json doc = parse_document(source, "instance");
    require_version(doc, "instance");
    Instance inst;
    try {
        inst.name = doc.value("name", std::string{});
        inst.depot_x = doc.at("depot").at("x").get<double>();
        inst.depot_y = doc.at("depot").at("y").get<double>();
        inst.capacity = doc.at("capacity").get<double>();
        inst.speed = doc.at("speed").get<double>();
        inst.horizon = doc.at("horizon").get<int>();
        inst.metric_mode = metric_mode_from_string(doc.at("metric").at("mode").get<std::string>());
        if (doc.at("metric").contains("matrix"))
            inst.matrix = doc["metric"]["matrix"].get<std::vector<std::vector<double>>>();
        for (const auto& entry : doc.at("sites")) {
            Site site;
            site.id = entry.at("id").get<int>();
            site.x = entry.at("x").get<double>();
            site.y = entry.at("y").get<double>();
            site.quantity = entry.at("quantity").get<double>();
            site.open = entry.at("open").get<int>();
            site.close = entry.at("close").get<int>();
            inst.sites.push_back(site);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("instance: ") + e.what());
    }
    inst.validate();
    return inst;
}

Instance load_instance_file(const std::string& path) {
    auto in = open_file(path);
    return load_instance(in);
}

std::string serialize_instance(const Instance& inst) {
    json doc;
    doc["version"] = 1;
    doc["name"] = inst.name;
    doc["depot"] = {{"x", inst.depot_x}, {"y", inst.depot_y}};
    doc["capacity"] = inst.capacity;
    doc["speed"] = inst.speed;
    doc["horizon"] = inst.horizon;
    doc["metric"] = {{"mode", to_string(inst.metric_mode)}};
    if (inst.matrix) doc["metric"]["matrix"] = *inst.matrix;
    doc["sites"] = json::array();
    for (const auto& site : inst.sites)
        doc["sites"].push_back({{"id", site.id},
                                {"x", site.x},
                                {"y", site.y},
                                {"quantity", site.quantity},
                                {"open", site.open},
                                {"close", site.close}});
    return doc.dump(2) + "\n";
}

void save_instance_file(const Instance& inst, const std::string& path) {
    write_file(path, serialize_instance(inst));
}

SolutionDocument load_solution(std::istream& source) {
    const json doc = parse_document(source, "solution");
    require_version(doc, "solution");
    SolutionDocument out;
    try {
        out.instance_name = doc.value("instance_name", std::string{});
        out.algorithm = doc.value("algorithm", std::string{});
        out.solution.profit = doc.at("profit").get<double>();
        for (const auto& entry : doc.at("routes")) {
            Route route;
            route.vehicle = entry.at("vehicle").get<int>();
            route.visits = entry.at("visits").get<std::vector<int>>();
            route.arrivals = entry.at("arrivals").get<std::vector<double>>();
            if (route.arrivals.size() != route.visits.size())
                throw ParseError("solution: route visits/arrivals length mismatch");
            out.solution.routes.push_back(std::move(route));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("solution: ") + e.what());
    }
    return out;
}

SolutionDocument load_solution_file(const std::string& path) {
    auto in = open_file(path);
    return load_solution(in);
}

std::string serialize_solution(const SolutionDocument& doc) {
    json out;
    out["version"] = 1;
    out["instance_name"] = doc.instance_name;
    out["algorithm"] = doc.algorithm;
    out["routes"] = json::array();
    for (const auto& route : doc.solution.routes)
        out["routes"].push_back({{"vehicle", route.vehicle},
                                 {"visits", route.visits},
                                 {"arrivals", route.arrivals}});
    out["profit"] = doc.solution.profit;
    return out.dump(2) + "\n";
}

void save_solution_file(const SolutionDocument& doc, const std::string& path) {
    write_file(path, serialize_solution(doc));
}

} // namespace mppc
