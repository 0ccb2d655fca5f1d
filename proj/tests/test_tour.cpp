#include "doctest.h"
#include "lkgain/error.hpp"
#include "support.hpp"

using namespace lkgain;
using namespace fixture;

namespace {

template <class Fn>
ErrorCode code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& err) {
        return err.code();
    }
    return ErrorCode::IoFailure;
}

Instance line_instance(Vertex n) {
    std::vector<Point> p;
    for (Vertex i = 0; i < n; ++i) p.push_back({static_cast<double>(i * 10), static_cast<double>((i * i) % 7)});
    return Instance::from_coords("line", WeightKind::Euc2D, std::move(p));
}

// Random alternating sequence of `depth` deletions along tour edges.
std::vector<Vertex> random_alternating(const Tour& tour, int depth, std::mt19937_64& rng) {
    std::uniform_int_distribution<Vertex> pick(0, tour.size() - 1);
    std::bernoulli_distribution coin(0.5);
    std::vector<Vertex> t;
    Vertex v = pick(rng);
    for (int l = 0; l < depth; ++l) {
        t.push_back(v);
        t.push_back(coin(rng) ? tour.succ(v) : tour.pred(v));
        if (l + 1 < depth) v = pick(rng);
    }
    return t;
}

} // namespace

TEST_CASE("from_order and cached cost") {
    const Instance inst = hexagon();
    const Tour tour = Tour::from_order(inst, hexagon_start());
    CHECK(tour.cost() == 24);
    CHECK(tour.validate(inst));

    const Instance tri = Instance::from_coords("t", WeightKind::Euc2D, {{0, 0}, {3, 4}, {0, 4}});
    const Tour unique = Tour::from_order(tri, std::vector<Vertex>{0, 1, 2});
    CHECK(unique.cost() == 12);
    CHECK(unique.same_cycle(Tour::from_order(tri, std::vector<Vertex>{2, 1, 0})));

    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const Instance inst2 = random_matrix(12, rng);
        const auto order = random_order(12, rng);
        Cost naive = 0;
        for (std::size_t i = 0; i < order.size(); ++i) naive += inst2.cost(order[i], order[(i + 1) % order.size()]);
        CHECK(Tour::from_order(inst2, order).cost() == naive);
    }
    CHECK(code_of([&] { (void)Tour::from_order(inst, std::vector<Vertex>{0, 1, 2, 3, 4, 9}); }) ==
          ErrorCode::NotAPermutation);
}

TEST_CASE("next and prev wrap around") {
    const Instance inst = line_instance(5);
    const Tour tour = Tour::from_order(inst, std::vector<Vertex>{0, 1, 2, 3, 4});
    CHECK(tour.next(4) == 0);
    CHECK(tour.prev(0) == 4);
    CHECK(code_of([&] { (void)tour.next(5); }) == ErrorCode::IndexOutOfRange);
    CHECK(code_of([&] { (void)tour.prev(-1); }) == ErrorCode::IndexOutOfRange);

    std::mt19937_64 rng(3);
    const Instance big = random_matrix(30, rng);
    const Tour r = Tour::from_order(big, random_order(30, rng));
    for (Vertex v = 0; v < 30; ++v) {
        CHECK(r.prev(r.next(v)) == v);
        CHECK(r.next(r.prev(v)) == v);
        CHECK(r.order()[static_cast<std::size_t>(r.position(v))] == v);
    }
}

TEST_CASE("between") {
    const Instance inst = line_instance(5);
    const Tour tour = Tour::from_order(inst, std::vector<Vertex>{0, 1, 2, 3, 4});
    CHECK(tour.between(0, 1, 3));
    CHECK_FALSE(tour.between(0, 3, 1));
    CHECK(code_of([&] { (void)tour.between(0, 0, 2); }) == ErrorCode::VerticesNotDistinct);

    std::mt19937_64 rng(5);
    for (Vertex n = 3; n <= 8; ++n) {
        const Instance in = line_instance(n);
        for (int rep = 0; rep < 5; ++rep) {
            const auto order = random_order(n, rng);
            const Tour t = Tour::from_order(in, order);
            auto steps = [&](Vertex from, Vertex to) {
                int s = 0;
                for (std::size_t i = static_cast<std::size_t>(t.position(from)); order[i] != to; i = (i + 1) % order.size()) ++s;
                return s;
            };
            for (Vertex x = 0; x < n; ++x)
                for (Vertex y = 0; y < n; ++y)
                    for (Vertex z = 0; z < n; ++z) {
                        if (x == y || y == z || x == z) continue;
                        CHECK(t.between(x, y, z) == (steps(x, y) < steps(x, z)));
                        CHECK(t.between(x, y, z) == !t.between(x, z, y));
                    }
        }
    }
}

TEST_CASE("close_up_is_tour on the worked exchange") {
    const Instance inst = hexagon();
    const Tour tour = Tour::from_order(inst, hexagon_start());
    CHECK(close_up_is_tour(tour, std::vector<Vertex>{a, d, e, b}));
    // Closing with (e,f) would re-add a remaining tour edge.
    CHECK_FALSE(close_up_is_tour(tour, std::vector<Vertex>{a, d, c, b, e, f}));
    CHECK(code_of([&] { (void)close_up_is_tour(tour, std::vector<Vertex>{a, b}); }) == ErrorCode::PathInconsistent);

    const Instance line = line_instance(5);
    const Tour ring = Tour::from_order(line, std::vector<Vertex>{0, 1, 2, 3, 4});
    CHECK(close_up_is_tour(ring, std::vector<Vertex>{0, 1, 2, 1}));
}

TEST_CASE("close_up_is_tour agrees with an edge-multiset cycle check") {
    std::mt19937_64 rng(17);
    int feasible = 0;
    for (int rep = 0; rep < 3000; ++rep) {
        const Instance inst = random_matrix(8, rng);
        const auto order = random_order(8, rng);
        const Tour tour = Tour::from_order(inst, order);
        const int depth = 2 + rep % 3;
        const auto t = random_alternating(tour, depth, rng);
        const bool expect = exchange_yields_tour(order, t);
        feasible += expect;
        CHECK(close_up_is_tour(tour, t) == expect);
    }
    CHECK(feasible > 100);
}

TEST_CASE("apply reproduces the worked examples") {
    const Instance inst = hexagon();
    const Tour start = Tour::from_order(inst, hexagon_start());

    ExchangeMove two{{a, d, e, b}, {2, 4}, 4};
    const Tour after2 = apply_move(inst, start, two);
    CHECK(after2.cost() == 20);
    CHECK(after2.same_cycle(Tour::from_order(inst, hexagon_outer())));

    ExchangeMove three{{f, a, b, e, d, a}, {-1, 1, 4}, 4};
    const Tour after3 = apply_move(inst, start, three);
    CHECK(after3.cost() == 20);
    CHECK(after3.validate(inst));
    CHECK(after3.same_cycle(Tour::from_order(inst, hexagon_outer())));

    CHECK(two.deleted_edges() == std::vector<Edge>{{a, d}, {e, b}});
    CHECK(two.added_edges() == std::vector<Edge>{{d, e}, {b, a}});
}

TEST_CASE("identity move leaves the tour unchanged") {
    const Instance inst = hexagon();
    const Tour tour = Tour::from_order(inst, hexagon_outer());
    ExchangeMove id{{a, b, c, b}, {-3, 0}, 0};
    const Tour same = apply_move(inst, tour, id);
    CHECK(same.cost() == tour.cost());
    CHECK(same.same_cycle(tour));
}

TEST_CASE("apply rejects infeasible or inconsistent moves") {
    const Instance inst = hexagon();
    const Tour tour = Tour::from_order(inst, hexagon_outer());
    // Two parallel deletions reconnected into two triangles.
    ExchangeMove split{{a, b, d, e}, {-1, -2}, -2};
    CHECK(code_of([&] { (void)apply_move(inst, tour, split); }) == ErrorCode::MoveInfeasible);
    ExchangeMove wrong_gain{{a, b, e, d}, {0, 1}, 1};
    CHECK(code_of([&] { (void)apply_move(inst, tour, wrong_gain); }) == ErrorCode::PathInconsistent);
    ExchangeMove not_tour_edge{{a, c, e, d}, {0, 1}, 1};
    CHECK(code_of([&] { (void)apply_move(inst, tour, not_tour_edge); }) == ErrorCode::PathInconsistent);
}

TEST_CASE("apply matches the exchanged edge set on random feasible moves") {
    std::mt19937_64 rng(23);
    int applied = 0;
    for (int rep = 0; rep < 3000 && applied < 300; ++rep) {
        const Vertex n = 6 + static_cast<Vertex>(rep % 10);
        const Instance inst = random_matrix(n, rng);
        const auto order = random_order(n, rng);
        const Tour tour = Tour::from_order(inst, order);
        const auto t = random_alternating(tour, 2 + rep % 4, rng);
        if (!exchange_yields_tour(order, t)) continue;
        Gain gain = 0;
        for (std::size_t l = 0; l < t.size(); l += 2) {
            gain += inst.cost(t[l], t[l + 1]) - inst.cost(t[l + 1], t[(l + 2) % t.size()]);
        }
        ExchangeMove m{t, {gain}, gain};
        const Tour next = apply_move(inst, tour, m);
        CHECK(next.validate(inst));
        CHECK(next.cost() == tour.cost() - gain);
        CHECK(tour_edges(next.order()) == exchanged_edges(order, t));
        ++applied;

        // The reverse exchange restores the original cycle.
        std::vector<Vertex> back;
        for (std::size_t l = 0; l < t.size(); l += 2) {
            back.push_back(t[l + 1]);
            back.push_back(t[(l + 2) % t.size()]);
        }
        ExchangeMove undo{back, {-gain}, -gain};
        CHECK(apply_move(inst, next, undo).same_cycle(tour));
    }
    CHECK(applied == 300);
}
