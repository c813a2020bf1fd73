#pragma once

#include <cstdint>
#include <string>

#include "mppc/instance.hpp"

namespace mppc {

// Random-instance recipe: site coordinates uniform in a box of side
// box_size km with the depot at its center, window opens uniform integers
// in [0, floor(T/2)], closes uniform in [ceil(T/2), T], quantities uniform
// reals in [q_lo, q_hi]. Deterministic under seed across platforms.
struct GeneratorSpec {
    int n = 10;
    int horizon = 12;          // T
    double box_size = 20.0;    // km
    double q_lo = 20.0;
    double q_hi = 200.0;
    double capacity = 300.0;   // Q
    double speed = 10.0;       // s_v
    std::uint64_t seed = 1;
    std::string name;          // derived from the parameters when empty

    void validate() const;
};

Instance generate_instance(const GeneratorSpec& spec);

} // namespace mppc
