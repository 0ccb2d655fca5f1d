#include "lkgain/gain.hpp"

#include <cctype>
#include <string>

#include "lkgain/error.hpp"

namespace lkgain {

std::string_view to_string(PolicyKind kind) noexcept {
    switch (kind) {
    case PolicyKind::Strict: return "strict";
    case PolicyKind::Homogeneous: return "homogeneous";
    case PolicyKind::Tilted: return "tilted";
    }
    return "?";
}

PolicyKind parse_policy_kind(std::string_view text) {
    std::string lower(text);
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "strict") return PolicyKind::Strict;
    if (lower == "homogeneous") return PolicyKind::Homogeneous;
    if (lower == "tilted") return PolicyKind::Tilted;
    throw Error(ErrorCode::InvalidConfig, "unknown gain criterion '" + std::string(text) + "'");
}

void GainPolicy::validate() const {
    if (kind == PolicyKind::Tilted && k_period < 2) {
        throw Error(ErrorCode::InvalidConfig, "tilted policy needs k_period >= 2");
    }
}

GainState init_state(const GainPolicy&) { return GainState{}; }

Gain assumed_g0(const GainPolicy& policy, const GainState& state) noexcept {
    if (policy.kind == PolicyKind::Tilted) return state.g0_positive ? 1 : 0;
    return 1;
}

bool admits(const GainPolicy& policy, const GainState&, int step, Gain g_i, Gain g_prev, Gain g_prev2) {
    if (step < 1) throw Error(ErrorCode::StepIndexInvalid, "step " + std::to_string(step));
    if (g_i > 0) return true;
    switch (policy.kind) {
    case PolicyKind::Strict: return false;
    case PolicyKind::Homogeneous: return g_prev > 0;
    case PolicyKind::Tilted:
        return g_prev > 0 && ((step - 1) % policy.k_period != 0 || g_prev2 > 0);
    }
    return false;
}

bool admits(const GainPolicy& policy, const GainState& state, std::span<const Gain> ledger, Gain g_i) {
    const Gain g0 = assumed_g0(policy, state);
    const auto i = ledger.size() + 1;
    const Gain prev = i >= 2 ? ledger[i - 2] : g0;
    const Gain prev2 = i >= 3 ? ledger[i - 3] : g0;
    return admits(policy, state, static_cast<int>(i), g_i, prev, prev2);
}

GainState record(const GainPolicy&, const GainState& state, int, Gain g_i) {
    GainState next = state;
    next.violated = g_i <= 0;
    return next;
}

GainState finish_move(const GainPolicy& policy, const GainState& state, std::span<const Gain> ledger) {
    if (policy.kind != PolicyKind::Tilted || ledger.empty()) return state;
    GainState next = state;
    const auto i = ledger.size();
    const Gain last = (i % static_cast<std::size_t>(policy.k_period) == 0 && i >= 2) ? ledger[i - 2] : ledger[i - 1];
    next.g0_positive = last > 0;
    return next;
}

bool has_consecutive_nonpositive(std::span<const Gain> ledger) noexcept {
    for (std::size_t i = 1; i < ledger.size(); ++i) {
        if (ledger[i - 1] <= 0 && ledger[i] <= 0) return true;
    }
    return false;
}

} // namespace lkgain
