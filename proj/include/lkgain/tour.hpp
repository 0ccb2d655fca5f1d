#pragma once

/// @file tour.hpp
/// @brief Array-backed Hamiltonian cycle with successor/predecessor queries and
/// k-opt exchange application.

#include <span>
#include <utility>
#include <vector>

#include "lkgain/instance.hpp"

namespace lkgain {

using Gain = Cost;
using Edge = std::pair<Vertex, Vertex>;

/// A closed alternating circle t_1..t_{2k}. Deleted edges are
/// x_l = (t_{2l-1}, t_{2l}); added edges are y_l = (t_{2l}, t_{2l+1}) with
/// t_{2k+1} = t_1. `ledger` holds the prefix gains G_1..G_k, the last entry
/// being the gain after the closing edge.
struct ExchangeMove {
    std::vector<Vertex> t;
    std::vector<Gain> ledger;
    Gain gain = 0;

    [[nodiscard]] std::size_t depth() const noexcept { return t.size() / 2; }
    [[nodiscard]] std::vector<Edge> deleted_edges() const;
    [[nodiscard]] std::vector<Edge> added_edges() const;

    friend bool operator==(const ExchangeMove&, const ExchangeMove&) = default;
};

class Tour {
  public:
    /// Throws NotAPermutation.
    static Tour from_order(const Instance& inst, std::span<const Vertex> order);

    [[nodiscard]] Vertex size() const noexcept { return static_cast<Vertex>(order_.size()); }
    [[nodiscard]] Cost cost() const noexcept { return cost_; }
    [[nodiscard]] const std::vector<Vertex>& order() const noexcept { return order_; }

    [[nodiscard]] Vertex position(Vertex v) const noexcept { return pos_[static_cast<std::size_t>(v)]; }

    [[nodiscard]] Vertex succ(Vertex v) const noexcept {
        const auto p = pos_[static_cast<std::size_t>(v)] + 1;
        return order_[static_cast<std::size_t>(p == size() ? 0 : p)];
    }
    [[nodiscard]] Vertex pred(Vertex v) const noexcept {
        const auto p = pos_[static_cast<std::size_t>(v)];
        return order_[static_cast<std::size_t>(p == 0 ? size() - 1 : p - 1)];
    }

    /// Checked variants; throw IndexOutOfRange.
    [[nodiscard]] Vertex next(Vertex v) const;
    [[nodiscard]] Vertex prev(Vertex v) const;

    /// True iff walking successors from `a` reaches `b` before `c`.
    /// Throws VerticesNotDistinct.
    [[nodiscard]] bool between(Vertex a, Vertex b, Vertex c) const;

    [[nodiscard]] bool adjacent(Vertex a, Vertex b) const noexcept {
        return succ(a) == b || pred(a) == b;
    }

    /// Applies the exchange in place. Throws MoveInfeasible if the result is
    /// not a single cycle and PathInconsistent if `move.gain` disagrees with the
    /// edge costs.
    void apply(const Instance& inst, const ExchangeMove& move);

    /// Full consistency walk: inverse arrays, single cycle, cached cost.
    [[nodiscard]] bool validate(const Instance& inst) const;

    /// Undirected edge set equality.
    [[nodiscard]] bool same_cycle(const Tour& other) const;

  private:
    std::vector<Vertex> order_;
    std::vector<Vertex> pos_;
    Cost cost_ = 0;
};

/// Functional form of Tour::apply.
Tour apply_move(const Instance& inst, const Tour& tour, const ExchangeMove& move);

/// Decides whether deleting x_1..x_i and adding y_1..y_{i-1} plus the closing
/// edge (t_{2i}, t_1) yields a Hamiltonian cycle. `t` has even length >= 2 and
/// every x_l must be an edge of `tour` (PathInconsistent otherwise).
bool close_up_is_tour(const Tour& tour, std::span<const Vertex> t);

} // namespace lkgain
