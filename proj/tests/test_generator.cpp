#include <doctest.h>

#include <vector>

#include "mppc/errors.hpp"
#include "mppc/generator.hpp"
#include "mppc/io.hpp"

using namespace mppc;

TEST_CASE("generation is deterministic under a seed") {
    GeneratorSpec spec;
    spec.n = 6;
    spec.seed = 42;
    const Instance a = generate_instance(spec);
    const Instance b = generate_instance(spec);
    CHECK(serialize_instance(a) == serialize_instance(b));

    spec.seed = 43;
    const Instance c = generate_instance(spec);
    CHECK(serialize_instance(a) != serialize_instance(c));
}

TEST_CASE("window sampling respects the half-horizon split") {
    GeneratorSpec spec;
    spec.n = 200;
    spec.horizon = 15;
    spec.seed = 5;
    const Instance inst = generate_instance(spec);
    for (const auto& site : inst.sites) {
        CHECK(site.open >= 0);
        CHECK(site.open <= 7);   // floor(15/2)
        CHECK(site.close >= 8);  // ceil(15/2)
        CHECK(site.close <= 15);
        CHECK(site.quantity >= spec.q_lo);
        CHECK(site.quantity <= spec.q_hi);
        CHECK(site.x >= 0.0);
        CHECK(site.x <= spec.box_size);
    }
}

TEST_CASE("window opens are uniform over their range") {
    GeneratorSpec spec;
    spec.horizon = 15; // opens uniform over {0..7}
    spec.n = 200;

    std::vector<int> counts(8, 0);
    int samples = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        spec.seed = seed;
        const Instance inst = generate_instance(spec);
        for (const auto& site : inst.sites) {
            ++counts[site.open];
            ++samples;
        }
    }
    REQUIRE(samples == 10000);
    const double expected = samples / 8.0;
    double chi2 = 0.0;
    for (int count : counts)
        chi2 += (count - expected) * (count - expected) / expected;
    // 99.9% quantile of chi-squared with 7 degrees of freedom.
    CHECK(chi2 < 24.32);
}

TEST_CASE("invalid generator parameters are rejected") {
    GeneratorSpec spec;
    spec.n = 0;
    CHECK_THROWS_AS(generate_instance(spec), ParameterError);
    spec = {};
    spec.horizon = 1;
    CHECK_THROWS_AS(generate_instance(spec), ParameterError);
    spec = {};
    spec.q_lo = 0.0;
    CHECK_THROWS_AS(generate_instance(spec), ParameterError);
    spec = {};
    spec.q_lo = 10.0;
    spec.q_hi = 5.0;
    CHECK_THROWS_AS(generate_instance(spec), ParameterError);
}
