#include "mppc/generator.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "mppc/errors.hpp"

namespace mppc {

namespace {

// Samplers written out so instances reproduce bit-exactly across standard
// library implementations.
double next_unit(std::mt19937_64& rng) {
    return (rng() >> 11) * 0x1.0p-53;
}

double next_real(std::mt19937_64& rng, double lo, double hi) {
    return lo + next_unit(rng) * (hi - lo);
}

int next_int(std::mt19937_64& rng, int lo, int hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return lo + static_cast<int>(draw % range);
}

} // namespace

void GeneratorSpec::validate() const {
    if (n < 1) throw ParameterError("generator: n must be at least 1");
    if (horizon < 2) throw ParameterError("generator: horizon must be at least 2");
    if (q_lo <= 0.0 || q_hi < q_lo)
        throw ParameterError("generator: quantity range must satisfy 0 < q_lo <= q_hi");
    if (box_size <= 0.0) throw ParameterError("generator: box size must be positive");
    if (capacity <= 0.0) throw ParameterError("generator: capacity must be positive");
    if (speed <= 0.0) throw ParameterError("generator: speed must be positive");
}

Instance generate_instance(const GeneratorSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);

    Instance inst;
    if (spec.name.empty()) {
        std::ostringstream name;
        name << "rand_n" << spec.n << "_T" << spec.horizon << "_seed" << spec.seed;
        inst.name = name.str();
    } else {
        inst.name = spec.name;
    }
    inst.depot_x = spec.box_size / 2.0;
    inst.depot_y = spec.box_size / 2.0;
    inst.capacity = spec.capacity;
    inst.speed = spec.speed;
    inst.horizon = spec.horizon;
    inst.metric_mode = MetricMode::euclidean;

    const int open_hi = spec.horizon / 2;                 // floor(T/2)
    const int close_lo = (spec.horizon + 1) / 2;          // ceil(T/2)
    for (int id = 0; id < spec.n; ++id) {
        Site site;
        site.id = id;
        site.x = next_real(rng, 0.0, spec.box_size);
        site.y = next_real(rng, 0.0, spec.box_size);
        site.quantity = next_real(rng, spec.q_lo, spec.q_hi);
        site.open = next_int(rng, 0, open_hi);
        site.close = next_int(rng, close_lo, spec.horizon);
        inst.sites.push_back(site);
    }
    inst.validate();
    return inst;
}

} // namespace mppc
