#include "doctest.h"
#include "lkgain/error.hpp"
#include "lkgain/oracle.hpp"
#include "support.hpp"

using namespace lkgain;
using namespace fixture;

TEST_CASE("exact optimum of the hexagon") {
    const Instance inst = hexagon();
    for (const OracleResult& r : {held_karp_optimum(inst), brute_force_optimum(inst)}) {
        CHECK(r.optimum == 20);
        CHECK(tour_cost(inst, r.witness_tour) == 20);
        CHECK(Tour::from_order(inst, r.witness_tour).same_cycle(Tour::from_order(inst, hexagon_outer())));
    }
}

TEST_CASE("tiny and uniform instances") {
    const Instance tri = Instance::from_coords("t", WeightKind::Euc2D, {{0, 0}, {3, 4}, {0, 4}});
    CHECK(held_karp_optimum(tri).optimum == 12);
    CHECK(brute_force_optimum(tri).optimum == 12);
    const Instance flat = Instance::from_matrix("flat", {0, 7, 7, 7, 7, 0, 7, 7, 7, 7, 0, 7, 7, 7, 7, 0});
    CHECK(held_karp_optimum(flat).optimum == 28);
    CHECK(brute_force_optimum(flat).optimum == 28);
}

TEST_CASE("the two exact solvers agree") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 30; ++rep) {
        const Vertex n = 4 + rep % 7;
        const Instance inst = rep % 2 ? random_matrix(n, rng) : random_euclid(n, rng);
        const OracleResult hk = held_karp_optimum(inst);
        const OracleResult bf = brute_force_optimum(inst);
        CHECK(hk.optimum == bf.optimum);
        CHECK(tour_cost(inst, hk.witness_tour) == hk.optimum);
        CHECK(tour_cost(inst, bf.witness_tour) == bf.optimum);
        for (int k = 0; k < 50; ++k) CHECK(tour_cost(inst, random_order(n, rng)) >= hk.optimum);
    }
}

TEST_CASE("burma14") {
    const Instance inst = load_tsplib(data_path("burma14.tsp"));
    const OracleResult r = held_karp_optimum(inst);
    CHECK(r.optimum == 3323);
    CHECK(tour_cost(inst, r.witness_tour) == 3323);
}

TEST_CASE("size limits") {
    std::mt19937_64 rng(1);
    const auto code = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& err) {
            return err.code();
        }
        return ErrorCode::IoFailure;
    };
    const Instance n17 = random_matrix(17, rng);
    const Instance n11 = random_matrix(11, rng);
    const Instance n13 = random_matrix(13, rng);
    CHECK(code([&] { (void)held_karp_optimum(n17); }) == ErrorCode::InstanceTooLarge);
    CHECK(code([&] { (void)brute_force_optimum(n11); }) == ErrorCode::InstanceTooLarge);
    const Tour t13 = Tour::from_order(n13, random_order(13, rng));
    CHECK(code([&] { (void)enumerate_closing_moves(n13, t13, 3, GainPolicy{}, nn_candidates(n13, 5)); }) ==
          ErrorCode::InstanceTooLarge);
    const Tour t11 = Tour::from_order(n11, random_order(11, rng));
    CHECK(code([&] { (void)enumerate_closing_moves(n11, t11, 5, GainPolicy{}, nn_candidates(n11, 5)); }) ==
          ErrorCode::InstanceTooLarge);
}

TEST_CASE("closing moves on the hexagon") {
    const Instance inst = hexagon();
    const Tour tour = Tour::from_order(inst, hexagon_start());
    const CandidateSets cands = full_candidates(inst);
    const auto strict = enumerate_closing_moves(inst, tour, 4, GainPolicy{PolicyKind::Strict, 5}, cands, f);
    for (const auto& m : strict) CHECK(m.t[1] != a);
    const auto homo = enumerate_closing_moves(inst, tour, 4, GainPolicy{PolicyKind::Homogeneous, 5}, cands, f);
    const ExchangeMove example{{f, a, b, e, d, a}, {-1, 1, 4}, 4};
    CHECK(std::find(homo.begin(), homo.end(), example) != homo.end());
    CHECK(enumerate_closing_moves(inst, tour, 1, GainPolicy{PolicyKind::Homogeneous, 5}, cands).empty());

    const auto all = enumerate_closing_moves(inst, tour, 4, GainPolicy{PolicyKind::Homogeneous, 5}, cands);
    CHECK(all.size() > homo.size());
    for (const auto& m : all) {
        const Tour next = apply_move(inst, tour, m);
        CHECK(next.validate(inst));
        CHECK(next.cost() == tour.cost() - m.gain);
        CHECK(m.gain > 0);
    }
}

TEST_CASE("strict moves are a subset of homogeneous moves") {
    std::mt19937_64 rng(5);
    std::size_t strict_total = 0, homo_total = 0;
    for (int rep = 0; rep < 25; ++rep) {
        const Vertex n = 5 + rep % 6;
        const Instance inst = random_matrix(n, rng);
        const Tour tour = Tour::from_order(inst, random_order(n, rng));
        const CandidateSets cands = nn_candidates(inst, 4);
        const auto s = enumerate_closing_moves(inst, tour, 4, GainPolicy{PolicyKind::Strict, 4}, cands);
        const auto h = enumerate_closing_moves(inst, tour, 4, GainPolicy{PolicyKind::Homogeneous, 4}, cands);
        const auto t = enumerate_closing_moves(inst, tour, 4, GainPolicy{PolicyKind::Tilted, 4}, cands);
        for (const auto& m : s) CHECK(std::find(h.begin(), h.end(), m) != h.end());
        for (const auto& m : t) CHECK(std::find(h.begin(), h.end(), m) != h.end());
        for (const auto& m : h) {
            CHECK_FALSE(has_consecutive_nonpositive(std::span<const Gain>(m.ledger).first(m.ledger.size() - 1)));
            CHECK(exchange_yields_tour(tour.order(), m.t));
        }
        strict_total += s.size();
        homo_total += h.size();
    }
    CHECK(homo_total > strict_total);
}
