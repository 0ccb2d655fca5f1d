#pragma once

/// @file gain.hpp
/// @brief Admission predicates for the added edge y_i, driven by the prefix
/// gains G_i = sum_{l <= i} (c(x_l) - c(y_l)).
///
/// Three policies are available:
///  - Strict:      y_i is admitted only if G_i > 0.
///  - Homogeneous: additionally admit G_i <= 0 when G_{i-1} > 0; G_0 is
///                 assumed positive, so two consecutive non-positive prefix
///                 gains never occur.
///  - Tilted:      like Homogeneous, but at steps where i-1 is a multiple of
///                 the move depth k a non-positive G_i also needs G_{i-2} > 0,
///                 and the assumed G_0 takes the sign left behind by the
///                 previous move search instead of always being positive.

#include <span>
#include <string_view>
#include <vector>

#include "lkgain/tour.hpp"

namespace lkgain {

enum class PolicyKind { Strict, Homogeneous, Tilted };

std::string_view to_string(PolicyKind kind) noexcept;
/// Accepts "strict", "homogeneous", "tilted" (case-insensitive). Throws InvalidConfig.
PolicyKind parse_policy_kind(std::string_view text);

struct GainPolicy {
    PolicyKind kind = PolicyKind::Strict;
    /// Period of the tilted restriction; the engine uses its maximum move depth.
    int k_period = 5;

    /// Throws InvalidConfig when kind is Tilted and k_period < 2.
    void validate() const;
};

/// Prefix gains G_1..G_i of the path under construction.
using GainLedger = std::vector<Gain>;

struct GainState {
    /// Whether the most recently recorded step had G <= 0.
    bool violated = false;
    /// Sign of the assumed G_0 (only consulted by the tilted policy).
    bool g0_positive = true;

    friend bool operator==(const GainState&, const GainState&) = default;
};

GainState init_state(const GainPolicy& policy);

/// Representative value of the assumed G_0 for `policy` in `state`.
[[nodiscard]] Gain assumed_g0(const GainPolicy& policy, const GainState& state) noexcept;

/// Admission test for step `step` (1-based) with candidate prefix gain `g_i`.
/// `g_prev` is G_{i-1} and `g_prev2` is G_{i-2}; callers substitute the assumed
/// G_0 where those indices are < 1. Throws StepIndexInvalid for step < 1.
[[nodiscard]] bool admits(const GainPolicy& policy, const GainState& state, int step, Gain g_i, Gain g_prev,
                          Gain g_prev2);

/// Same test with predecessors taken from `ledger` (which holds G_1..G_{i-1}).
[[nodiscard]] bool admits(const GainPolicy& policy, const GainState& state, std::span<const Gain> ledger,
                          Gain g_i);

/// State after step `step` has been admitted with prefix gain `g_i`.
[[nodiscard]] GainState record(const GainPolicy& policy, const GainState& state, int step, Gain g_i);

/// Carries the G_0 sign forward once a move search ends with `ledger` as its
/// last prefix gains: sign of the last G_i, or of G_{i-1} when i is a multiple
/// of k_period. An empty ledger leaves the state unchanged.
[[nodiscard]] GainState finish_move(const GainPolicy& policy, const GainState& state,
                                    std::span<const Gain> ledger);

/// True if some two consecutive entries of `ledger` are both <= 0.
[[nodiscard]] bool has_consecutive_nonpositive(std::span<const Gain> ledger) noexcept;

} // namespace lkgain
