#pragma once

/// @file engine.hpp
/// @brief Variable-depth sequential edge exchange.
///
/// An alternating path t_1, t_2, ... deletes x_l = (t_{2l-1}, t_{2l}) and adds
/// y_l = (t_{2l}, t_{2l+1}). The search grows the path under the candidate,
/// gain, feasibility, sequential and disjunctivity criteria, tries to close up
/// after every deletion from depth 2 on, and accepts the first closing with
/// positive total gain.
///
/// The tour is not modified while a path is being grown; every query refers to
/// the tour the search started from.

#include <chrono>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "lkgain/candidates.hpp"
#include "lkgain/gain.hpp"
#include "lkgain/tour.hpp"

namespace lkgain {

struct SearchConfig {
    /// Maximum number of exchanged edge pairs k in one move.
    int max_depth = 5;
    /// Feasibility / disjunctivity period r.
    int feasibility_period = 5;
    /// Depth up to which alternatives for x_i and y_i are backtracked; deeper
    /// levels commit to their first admissible choice.
    int backtrack_depth = 2;
    GainPolicy policy{};

    /// The policy with k_period tied to max_depth.
    [[nodiscard]] GainPolicy effective_policy() const noexcept {
        GainPolicy p = policy;
        p.k_period = max_depth;
        return p;
    }
    /// Throws InvalidConfig.
    void validate() const;
};

/// In-progress path with its prefix gains. `t` ends either after a deleted edge
/// (even size) or after an added edge (odd size >= 3).
struct AlternatingPath {
    std::vector<Vertex> t;
    GainLedger ledger;

    /// Number of deleted edges so far.
    [[nodiscard]] int deleted_count() const noexcept { return static_cast<int>(t.size() / 2); }
    [[nodiscard]] bool ends_with_deletion() const noexcept { return !t.empty() && t.size() % 2 == 0; }
    /// True if (a,b) is one of the deleted edges.
    [[nodiscard]] bool deletes(Vertex a, Vertex b) const noexcept;
    /// True if (a,b) is one of the added edges.
    [[nodiscard]] bool adds(Vertex a, Vertex b) const noexcept;
};

/// Hooks for recording search activity (tests, invariant checks).
struct SearchObserver {
    /// Called after each admitted y_i with the path ending at t_{2i+1}.
    std::function<void(const AlternatingPath&)> on_extend;
    /// Called for every accepted exchange.
    std::function<void(const ExchangeMove&)> on_move;
};

struct EdgeChoice {
    Vertex next;         // t_{2i+1}
    Gain gain;           // G_i
    std::size_t rank;    // position in CandidateSet(t_{2i})
};

/// Scans CandidateSet(t_{2i}) from `start_rank` on and returns the first
/// t_{2i+1} whose prefix gain the policy admits and which keeps the path a
/// valid alternating path. `path` must end with a deletion.
std::optional<EdgeChoice> find_sequential_edge_to_add(const Instance& inst, const Tour& tour,
                                                      const AlternatingPath& path, const SearchConfig& cfg,
                                                      const CandidateSets& cands, const GainState& state,
                                                      std::size_t start_rank = 0);

/// Admissible t_{2i+2} for x_{i+1} at the end of a path that just added y_i
/// (or the x_1 options for the single-vertex path [t_1]), most expensive
/// deletion first, ties by vertex id. When i+1 is a multiple of
/// r the disjunctivity and close-up feasibility tests are applied.
std::vector<Vertex> select_next_deleted_edge(const Instance& inst, const Tour& tour, const AlternatingPath& path,
                                             const SearchConfig& cfg);

/// Closes a path of i >= 2 deletions with (t_{2i}, t_1) if that yields a tour
/// and the total gain is positive.
std::optional<ExchangeMove> try_close(const Instance& inst, const Tour& tour, const AlternatingPath& path);

/// Depth-first search from t_1, returning the first improving exchange.
/// `state` carries the G_0 sign between searches and is updated on return.
std::optional<ExchangeMove> find_improving_move(const Instance& inst, const Tour& tour, Vertex t1,
                                                const SearchConfig& cfg, const CandidateSets& cands,
                                                GainState& state, const SearchObserver* observer = nullptr);

struct Improvement {
    Tour tour;
    Gain gain;
    ExchangeMove move;
};

/// find_improving_move followed by apply_move.
std::optional<Improvement> improve_from_vertex(const Instance& inst, const Tour& tour, Vertex t1,
                                               const SearchConfig& cfg, const CandidateSets& cands,
                                               GainState& state, const SearchObserver* observer = nullptr);

using Clock = std::chrono::steady_clock;

struct TrialOutcome {
    Tour tour;
    std::size_t improvements = 0;
    /// False if the deadline stopped the trial before all vertices failed.
    bool completed = true;
};

/// One trial: sweeps starting vertices in shuffled order, applying each
/// improvement found and retrying the same vertex, until n consecutive starting
/// vertices fail.
TrialOutcome run_trial(const Instance& inst, Tour tour, const SearchConfig& cfg, const CandidateSets& cands,
                       GainState& state, std::mt19937_64& rng,
                       std::optional<Clock::time_point> deadline = std::nullopt,
                       const SearchObserver* observer = nullptr);

} // namespace lkgain
