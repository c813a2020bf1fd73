#include <doctest.h>

#include <random>

#include "mppc/errors.hpp"
#include "mppc/evaluation.hpp"
#include "mppc/metric.hpp"
#include "mppc/pipelines.hpp"
#include "oracles.hpp"

using namespace mppc;

TEST_CASE("upper bound on a single site dominates the round trip") {
    const Instance inst = oracles::planar_instance({{3, 0, 10, 0, 10}}, 50, 10);
    const DistanceMatrix m = build_metric(inst);
    CHECK(upper_bound(inst, m) == doctest::Approx(7.0)); // 10 - 3
    const OracleResult oracle = brute_force_optimum(inst, &m);
    CHECK(oracle.optimal_profit == doctest::Approx(4.0)); // 10 - 6
    CHECK(upper_bound(inst, m) >= oracle.optimal_profit);
}

TEST_CASE("upper bound clamps zero-quantity sites") {
    const Instance inst = oracles::planar_instance(
        {{3, 0, 0, 0, 10}, {0, 5, 0, 0, 10}}, 50, 10);
    const DistanceMatrix m = build_metric(inst);
    CHECK(upper_bound(inst, m) == 0.0);
}

TEST_CASE("upper bound dominates the optimum on random instances") {
    std::mt19937 rng(131);
    for (int trial = 0; trial < 200; ++trial) {
        const Instance inst = oracles::random_instance(rng, 3 + trial % 6, 10, 12.0);
        const DistanceMatrix m = build_metric(inst);
        const OracleResult oracle = brute_force_optimum(inst, &m);
        CHECK(upper_bound(inst, m) >= oracle.optimal_profit - 1e-9);
    }
}

TEST_CASE("brute force on degenerate instances") {
    SUBCASE("one profitable site") {
        const Instance inst = oracles::planar_instance({{2, 0, 10, 0, 10}}, 50, 10);
        const OracleResult oracle = brute_force_optimum(inst);
        CHECK(oracle.optimal_profit == doctest::Approx(6.0));
        CHECK(oracle.optimal_vehicles == 1);
        REQUIRE(oracle.routes.size() == 1);
        CHECK(oracle.routes[0].visits == std::vector<int>{0});
    }

    SUBCASE("unprofitable sites leave the empty solution") {
        const Instance inst = oracles::planar_instance(
            {{30, 0, 3, 0, 80}, {0, 40, 5, 0, 80}}, 50, 80);
        const OracleResult oracle = brute_force_optimum(inst);
        CHECK(oracle.optimal_profit == 0.0);
        CHECK(oracle.optimal_vehicles == 0);
        CHECK(oracle.routes.empty());
    }

    SUBCASE("guard rejects large instances") {
        std::mt19937 rng(137);
        const Instance inst = oracles::random_instance(rng, 9, 10);
        CHECK_THROWS_AS(brute_force_optimum(inst), SizeLimitError);
    }
}

TEST_CASE("brute force matches an independent subset DP") {
    std::mt19937 rng(139);
    for (int trial = 0; trial < 50; ++trial) {
        const Instance inst = oracles::random_instance(rng, 6, 10, 12.0);
        const DistanceMatrix m = build_metric(inst);
        const OracleResult oracle = brute_force_optimum(inst, &m);
        const double expected = oracles::multi_route_optimum_by_dp(inst, m);
        CHECK(oracle.optimal_profit == doctest::Approx(expected).epsilon(1e-12));

        // The reconstructed routes add up to the reported numbers.
        Solution sol;
        sol.routes = oracle.routes;
        CHECK(check_feasibility(inst, sol, &m).empty());
        CHECK(compute_profit(inst, sol, &m) == doctest::Approx(oracle.optimal_profit));
        double distance = 0.0;
        for (const auto& route : oracle.routes) distance += route.cost;
        CHECK(distance == doctest::Approx(oracle.optimal_distance));
    }
}

TEST_CASE("report rendering") {
    SUBCASE("reference row renders its literal values") {
        const auto report =
            EvaluationReport::make("Dallas_wood_10", 10, 66.0, 117.5, 299, 15, "alg1");
        const auto rendered = render_report({report});
        CHECK(rendered.text.find("Dallas_wood_10") != std::string::npos);
        CHECK(rendered.text.find("66") != std::string::npos);
        CHECK(rendered.text.find("117.5") != std::string::npos);
        CHECK(rendered.text.find("1.78") != std::string::npos);
        CHECK(rendered.text.find("299") != std::string::npos);
        CHECK(rendered.text.find("15") != std::string::npos);
    }

    SUBCASE("empty input renders the header only") {
        const auto rendered = render_report({});
        CHECK(rendered.text.find("problem") != std::string::npos);
        CHECK(rendered.text.find('\n') == rendered.text.size() - 1);
    }

    SUBCASE("zero profit renders an infinite ratio") {
        const auto report = EvaluationReport::make("empty", 3, 0.0, 12.5, 1, 9, "alg2");
        const auto rendered = render_report({report});
        CHECK(rendered.text.find("inf") != std::string::npos);
    }

    SUBCASE("machine-readable form round-trips") {
        auto a = EvaluationReport::make("first", 10, 66.0, 117.5, 299, 15, "alg1");
        a.flags = {"aptas_fallback_mffd"};
        a.route_diagnostics.push_back({0, 4, 120.0, 35.5, 84.5});
        const auto b = EvaluationReport::make("second", 3, 0.0, 12.5, 1, 9, "alg3");
        const auto rendered = render_report({a, b});
        const auto parsed = parse_reports(rendered.json);
        REQUIRE(parsed.size() == 2);
        CHECK(parsed[0].problem == a.problem);
        CHECK(parsed[0].n == a.n);
        CHECK(parsed[0].profit == a.profit);
        CHECK(parsed[0].upper == a.upper);
        CHECK(parsed[0].rho == a.rho);
        CHECK(parsed[0].time_ms == a.time_ms);
        CHECK(parsed[0].horizon == a.horizon);
        CHECK(parsed[0].algorithm == a.algorithm);
        CHECK(parsed[0].flags == a.flags);
        REQUIRE(parsed[0].route_diagnostics.size() == 1);
        CHECK(parsed[0].route_diagnostics[0].cost == 35.5);
        CHECK(std::isinf(parsed[1].rho));
        // Re-rendering the parsed reports is a fixpoint.
        CHECK(render_report(parsed).json == rendered.json);
    }
}
