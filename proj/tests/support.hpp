#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lkgain/candidates.hpp"
#include "lkgain/instance.hpp"
#include "lkgain/tour.hpp"

namespace fixture {

using lkgain::Cost;
using lkgain::Vertex;

inline constexpr Vertex a = 0, b = 1, c = 2, d = 3, e = 4, f = 5;

inline std::string data_path(const std::string& file) { return std::string(LKGAIN_TEST_DATA) + "/" + file; }

// Regular hexagon: outer edges 4,3,3,4,3,3; short chords 5; long diagonals 6.
inline lkgain::Instance hexagon() {
    return lkgain::Instance::from_matrix("hexagon", {0, 4, 5, 6, 5, 3,  //
                                                     4, 0, 3, 5, 6, 5,  //
                                                     5, 3, 0, 3, 5, 6,  //
                                                     6, 5, 3, 0, 4, 5,  //
                                                     5, 6, 5, 4, 0, 3,  //
                                                     3, 5, 6, 5, 3, 0},
                                         20);
}

inline std::vector<Vertex> hexagon_start() { return {a, d, c, b, e, f}; }
inline std::vector<Vertex> hexagon_outer() { return {a, b, c, d, e, f}; }

inline lkgain::Instance random_matrix(Vertex n, std::mt19937_64& rng, Cost max_cost = 100) {
    std::uniform_int_distribution<Cost> dist(1, max_cost);
    std::vector<Cost> m(static_cast<std::size_t>(n * n), 0);
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = i + 1; j < n; ++j) {
            const Cost w = dist(rng);
            m[static_cast<std::size_t>(i * n + j)] = w;
            m[static_cast<std::size_t>(j * n + i)] = w;
        }
    }
    return lkgain::Instance::from_matrix("random" + std::to_string(n), std::move(m));
}

inline lkgain::Instance random_euclid(Vertex n, std::mt19937_64& rng, double side = 1000.0) {
    std::uniform_real_distribution<double> u(0.0, side);
    std::vector<lkgain::Point> p(static_cast<std::size_t>(n));
    for (auto& q : p) q = {u(rng), u(rng)};
    return lkgain::Instance::from_coords("euclid" + std::to_string(n), lkgain::WeightKind::Euc2D, std::move(p));
}

inline std::vector<Vertex> random_order(Vertex n, std::mt19937_64& rng) {
    std::vector<Vertex> o(static_cast<std::size_t>(n));
    std::iota(o.begin(), o.end(), 0);
    std::shuffle(o.begin(), o.end(), rng);
    return o;
}

inline lkgain::CandidateSets full_candidates(const lkgain::Instance& inst) {
    return lkgain::nn_candidates(inst, inst.dimension() - 1);
}

using EdgeMultiset = std::multiset<std::pair<Vertex, Vertex>>;

inline std::pair<Vertex, Vertex> key(Vertex u, Vertex v) { return {std::min(u, v), std::max(u, v)}; }

inline EdgeMultiset tour_edges(const std::vector<Vertex>& order) {
    EdgeMultiset s;
    for (std::size_t i = 0; i < order.size(); ++i) s.insert(key(order[i], order[(i + 1) % order.size()]));
    return s;
}

// Removes x_l, adds y_l and the closing edge, then checks that the result is
// one cycle through all n vertices. Returns false on any inconsistency.
inline bool exchange_yields_tour(const std::vector<Vertex>& order, const std::vector<Vertex>& t) {
    const auto n = static_cast<Vertex>(order.size());
    EdgeMultiset edges = tour_edges(order);
    for (std::size_t l = 0; l + 1 < t.size(); l += 2) {
        auto it = edges.find(key(t[l], t[l + 1]));
        if (it == edges.end()) return false;
        edges.erase(it);
    }
    for (std::size_t l = 1; l < t.size(); l += 2) {
        const Vertex u = t[l], v = t[(l + 1) % t.size()];
        if (u == v) return false;
        edges.insert(key(u, v));
    }
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
    for (const auto& [u, v] : edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (const auto& l : adj) {
        if (l.size() != 2) return false;
    }
    Vertex prev = -1, cur = 0;
    Vertex steps = 0;
    do {
        const auto& l = adj[static_cast<std::size_t>(cur)];
        const Vertex next = l[0] != prev ? l[0] : l[1];
        if (l[0] == l[1]) return false;
        prev = cur;
        cur = next;
        ++steps;
    } while (cur != 0 && steps <= n);
    return steps == n;
}

inline EdgeMultiset exchanged_edges(const std::vector<Vertex>& order, const std::vector<Vertex>& t) {
    EdgeMultiset edges = tour_edges(order);
    for (std::size_t l = 0; l + 1 < t.size(); l += 2) edges.erase(edges.find(key(t[l], t[l + 1])));
    for (std::size_t l = 1; l < t.size(); l += 2) edges.insert(key(t[l], t[(l + 1) % t.size()]));
    return edges;
}

} // namespace fixture
