#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mppc/instance.hpp"
#include "mppc/tw_orienteering.hpp"

namespace mppc {

enum class Algorithm { alg1, alg2, alg3 };

std::string to_string(Algorithm algorithm);
Algorithm algorithm_from_string(const std::string& text);

enum class Packer { ffd, mffd, aptas, exact };

std::string to_string(Packer packer);
Packer packer_from_string(const std::string& text);

struct SolverConfig {
    Algorithm algorithm = Algorithm::alg1;
    double epsilon = 0.5;
    double p = 6.0;
    double alpha = 1.0;
    Strategy strategy = Strategy::exact_dp;
    std::optional<double> separation_override; // algorithm 3 only
    std::optional<Packer> packer_override;     // algorithms 1 and 2, step (a)
    int max_exact_subset = 16;
    bool allow_aptas_fallback = true;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SolveDiagnostics {
    std::vector<std::string> flags;
    std::vector<int> uncovered_sites;
    int groups = 0;        // bins (alg1/2) or WSPD pairs (alg3)
    double eta = 0.0;      // APTAS eta actually used (alg2)
    double separation = 0.0; // WSPD s actually used (alg3)
};

struct SolveResult {
    Solution solution;
    SolveDiagnostics diagnostics;
};

// Algorithm 1: MFFD packing of the quantities, one reward route per bin,
// then the window-repair pass. Empty routes are dropped.
SolveResult run_algorithm1(const Instance& inst, const SolverConfig& cfg);

// Algorithm 2: identical pipeline with the APTAS packer at
// eta = 2 / sqrt(10 + p); the capped-enumeration fallback is flagged.
SolveResult run_algorithm2(const Instance& inst, const SolverConfig& cfg);

// Algorithm 3: WSPD partition calibrated to ceil(sum q / Q) pairs, pairs
// sorted ascending by size, sides labeled large/small by load and a
// deadline probe, small sides assigned to vehicles in order until all
// sites are covered. Sites left over when the pairs are exhausted are
// MFFD-packed as extra vehicles (flagged), and the total vehicle count
// never exceeds 2 ceil(sum q / Q).
SolveResult run_algorithm3(const Instance& inst, const SolverConfig& cfg);

SolveResult run_pipeline(const Instance& inst, const SolverConfig& cfg);

} // namespace mppc
