#pragma once

/// @file candidates.hpp
/// @brief Per-vertex ranked candidate neighbor lists.
///
/// Alpha-nearness follows the classic construction: minimum 1-trees on
/// penalized costs c(i,j) + pi(i) + pi(j), Held-Karp subgradient ascent for the
/// penalties, and alpha(i,j) = (length of the minimum 1-tree forced to contain
/// (i,j)) - (minimum 1-tree length). Vertex 0 plays the role of the special
/// 1-tree vertex.
///
/// Penalties are fixed point: an integer pi value p means p / kPiScale cost
/// units, and every penalized cost is kept in the same scaled units so all
/// comparisons are exact.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lkgain/instance.hpp"

namespace lkgain {

inline constexpr std::int64_t kPiScale = 1024;

struct Candidate {
    Vertex to;
    std::int64_t rank_key;

    friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Immutable after construction; lists are ascending by rank key, ties by id.
class CandidateSets {
  public:
    CandidateSets() = default;
    explicit CandidateSets(std::vector<std::vector<Candidate>> lists) : lists_(std::move(lists)) {}

    [[nodiscard]] Vertex size() const noexcept { return static_cast<Vertex>(lists_.size()); }
    [[nodiscard]] const std::vector<Candidate>& operator[](Vertex v) const noexcept {
        return lists_[static_cast<std::size_t>(v)];
    }
    [[nodiscard]] bool contains(Vertex from, Vertex to) const noexcept;

    friend bool operator==(const CandidateSets&, const CandidateSets&) = default;

  private:
    std::vector<std::vector<Candidate>> lists_;
};

/// Text dump, one line per vertex: "v: n1(key1) n2(key2) ...", 1-based ids.
std::string dump_candidates(const CandidateSets& sets);
/// Inverse of dump_candidates. Throws MalformedHeader.
CandidateSets load_candidates(std::string_view text);

enum class CandidateKind { Alpha, Nearest };

std::string_view to_string(CandidateKind kind) noexcept;
CandidateKind parse_candidate_kind(std::string_view text);

/// The `max_candidates` cheapest neighbors of every vertex, ranked by cost.
CandidateSets nn_candidates(const Instance& inst, int max_candidates);

struct OneTree {
    /// parent[v] for v != 0 and v != root: tree edge (v, parent[v]) of the
    /// spanning tree on vertices 1..n-1. parent[root] == -1, parent[0] == -1.
    std::vector<Vertex> parent;
    /// The two edges at vertex 0, cheapest first.
    Vertex special_first = -1;
    Vertex special_second = -1;
    /// Sum of penalized edge costs, in kPiScale units.
    std::int64_t total_length = 0;
    std::vector<int> degree;
    std::vector<std::int64_t> pi;

    /// All n edges as (min, max) pairs.
    [[nodiscard]] std::vector<std::pair<Vertex, Vertex>> edges() const;
    /// Lower bound w(pi) = total_length - 2*sum(pi), in cost units.
    [[nodiscard]] double bound() const;
};

/// Penalized cost in kPiScale units.
[[nodiscard]] inline std::int64_t penalized_cost(const Instance& inst, const std::vector<std::int64_t>& pi,
                                                 Vertex i, Vertex j) noexcept {
    return inst.cost(i, j) * kPiScale + pi[static_cast<std::size_t>(i)] + pi[static_cast<std::size_t>(j)];
}

/// Prim on vertices 1..n-1 plus the two cheapest penalized edges at vertex 0.
/// `pi` must have n entries (InvalidConfig otherwise).
OneTree minimum_one_tree(const Instance& inst, std::vector<std::int64_t> pi);

struct AscentResult {
    std::vector<std::int64_t> pi;
    double lower_bound = 0.0;
    /// Best bound found after each iteration; entry 0 is the pi = 0 bound.
    std::vector<double> history;
};

/// Subgradient ascent on w(pi) with step t_k = t_0 * 0.9^k,
/// t_0 = (initial bound) / (2n), subgradient degree - 2.
AscentResult held_karp_ascent(const Instance& inst, int iterations);

/// Alpha values from one source vertex to all others (kPiScale units);
/// entry `from` is 0. Throws TreeInconsistent if `tree` is malformed.
std::vector<std::int64_t> alpha_row(const Instance& inst, const OneTree& tree, Vertex from);

/// Full alpha table, row-major n*n. O(n^2) memory; meant for small instances.
std::vector<std::int64_t> alpha_values(const Instance& inst, const OneTree& tree);

CandidateSets build_candidate_sets(const Instance& inst, CandidateKind kind, int max_candidates,
                                   int ascent_iterations = 100);

} // namespace lkgain
