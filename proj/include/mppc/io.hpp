#pragma once

#include <iosfwd>
#include <string>

#include "mppc/instance.hpp"

namespace mppc {

// Versioned JSON instance document:
// {version, name, depot:{x,y}, capacity, speed, horizon,
//  metric:{mode, matrix?}, sites:[{id,x,y,quantity,open,close}]}.
Instance load_instance(std::istream& source);
Instance load_instance_file(const std::string& path);
std::string serialize_instance(const Instance& inst);
void save_instance_file(const Instance& inst, const std::string& path);

struct SolutionDocument {
    std::string instance_name;
    std::string algorithm;
    Solution solution;
};

// Versioned JSON solution document:
// {version, instance_name, algorithm, routes:[{vehicle,visits,arrivals}], profit}.
SolutionDocument load_solution(std::istream& source);
SolutionDocument load_solution_file(const std::string& path);
std::string serialize_solution(const SolutionDocument& doc);
void save_solution_file(const SolutionDocument& doc, const std::string& path);

} // namespace mppc
