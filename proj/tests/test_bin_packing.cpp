#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "mppc/bin_packing.hpp"
#include "mppc/errors.hpp"

using namespace mppc;

namespace {

bool is_partition(const Packing& packing, std::size_t item_count, double capacity,
                  const std::vector<double>& quantities) {
    std::vector<int> seen(item_count, 0);
    for (std::size_t b = 0; b < packing.bins.size(); ++b) {
        double load = 0.0;
        for (int item : packing.bins[b]) {
            if (item < 0 || static_cast<std::size_t>(item) >= item_count) return false;
            ++seen[item];
            load += quantities[item];
        }
        if (load > capacity + 1e-9) return false;
        if (std::abs(load - packing.loads[b]) > 1e-9) return false;
    }
    for (int count : seen)
        if (count != 1) return false;
    return true;
}

} // namespace

TEST_CASE("first-fit decreasing on the classic example") {
    const Packing packing = pack_ffd({6, 5, 4, 3, 2}, 10);
    REQUIRE(packing.bin_count() == 2);
    CHECK(packing.bins[0] == std::vector<int>{0, 2});        // 6 + 4
    CHECK(packing.bins[1] == std::vector<int>{1, 3, 4});     // 5 + 3 + 2
    CHECK(pack_exact({6, 5, 4, 3, 2}, 10).bin_count() == 2); // optimal
}

TEST_CASE("edge inputs") {
    CHECK(pack_ffd({}, 10).bin_count() == 0);
    CHECK(pack_ffd({10, 10}, 10).bin_count() == 2);
    CHECK(pack_mffd({7}, 10).bin_count() == 1);
    CHECK(pack_exact({1}, 10).bin_count() == 1);
    CHECK_THROWS_AS(pack_ffd({11}, 10), ValidationError);
    CHECK_THROWS_AS(pack_aptas({5}, 10, 1.5), ParameterError);
    CHECK_THROWS_AS(pack_exact(std::vector<double>(21, 1.0), 10), SizeLimitError);
}

TEST_CASE("modified FFD stays within its guarantee on the classic example") {
    const Packing packing = pack_mffd({6, 5, 4, 3, 2}, 10);
    CHECK(is_partition(packing, 5, 10, {6, 5, 4, 3, 2}));
    CHECK(packing.bin_count() <= 2);
}

TEST_CASE("APTAS on the classic example") {
    const Packing packing = pack_aptas({6, 5, 4, 3, 2}, 10, 0.3);
    CHECK(is_partition(packing, 5, 10, {6, 5, 4, 3, 2}));
    CHECK(packing.bin_count() <= static_cast<int>(std::ceil(1.3 * 2)) + 1);
}

TEST_CASE("APTAS small-item-only branch reduces to first fit decreasing") {
    const std::vector<double> q{3, 2.5, 2, 1.5, 1, 1, 0.5, 2.9, 1.1, 0.4};
    const double eta = 0.3; // every item <= eta * 10
    const Packing aptas = pack_aptas(q, 10, eta);
    const Packing ffd = pack_ffd(q, 10);
    CHECK(aptas.bins == ffd.bins);
    for (int b = 0; b + 1 < aptas.bin_count(); ++b)
        CHECK(aptas.loads[b] >= 10 - eta * 10 - 1e-9);
}

TEST_CASE("exact packer lower bound and determinism") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> size(0.5, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> q;
        const int n = 1 + static_cast<int>(rng() % 10);
        for (int i = 0; i < n; ++i) q.push_back(size(rng));
        double total = 0.0;
        for (double v : q) total += v;
        const Packing packing = pack_exact(q, 10);
        CHECK(is_partition(packing, q.size(), 10, q));
        CHECK(packing.bin_count() >= static_cast<int>(std::ceil(total / 10 - 1e-9)));

        const Packing again = pack_exact(q, 10);
        CHECK(again.bins == packing.bins);
    }
}

TEST_CASE("random inputs: partitions, capacity, and the two-opt factor") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> size(0.5, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> q;
        const int n = 1 + static_cast<int>(rng() % 12);
        for (int i = 0; i < n; ++i) q.push_back(size(rng));

        const int opt = pack_exact(q, 10).bin_count();
        for (const Packing& packing : {pack_ffd(q, 10), pack_mffd(q, 10)}) {
            CHECK(is_partition(packing, q.size(), 10, q));
            CHECK(packing.bin_count() <= 2 * opt);
        }
        // Determinism of the heuristics.
        CHECK(pack_ffd(q, 10).bins == pack_ffd(q, 10).bins);
        CHECK(pack_mffd(q, 10).bins == pack_mffd(q, 10).bins);
    }
}

TEST_CASE("APTAS bound against the exact oracle on random 20-item sets") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> size(0.5, 10.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> q;
        for (int i = 0; i < 20; ++i) q.push_back(size(rng));
        const int opt = pack_exact(q, 10).bin_count();
        for (double eta : {0.2, 0.45}) {
            const Packing packing = pack_aptas(q, 10, eta);
            CHECK(is_partition(packing, q.size(), 10, q));
            CHECK(packing.bin_count() <= (1 + eta) * opt + 1 + 1e-9);
        }
    }
}
