#include "doctest.h"
#include "lkgain/error.hpp"
#include "lkgain/gain.hpp"

using namespace lkgain;

namespace {

const GainPolicy kStrict{PolicyKind::Strict, 5};
const GainPolicy kHomogeneous{PolicyKind::Homogeneous, 5};
const GainPolicy kTilted{PolicyKind::Tilted, 5};

// Predicates restated directly from their definitions; `g` holds G_{-1}, G_0,
// G_1, ..., G_i with the assumed G_0 already in the first two slots.
bool oracle(PolicyKind kind, int k, const std::vector<Gain>& g) {
    const std::size_t i = g.size() - 2;
    const Gain gi = g[i + 1], gprev = g[i], gprev2 = g[i - 1];
    switch (kind) {
    case PolicyKind::Strict: return gi > 0;
    case PolicyKind::Homogeneous: return gi > 0 || gprev > 0;
    case PolicyKind::Tilted:
        return gi > 0 || (gprev > 0 && ((static_cast<int>(i) - 1) % k != 0 || gprev2 > 0));
    }
    return false;
}

} // namespace

TEST_CASE("initial state") {
    for (const auto& p : {kStrict, kHomogeneous, kTilted}) {
        const GainState s = init_state(p);
        CHECK_FALSE(s.violated);
        CHECK(s.g0_positive);
        CHECK(assumed_g0(p, s) > 0);
    }
}

TEST_CASE("first step of the three-exchange example") {
    const GainState s = init_state(kStrict);
    CHECK_FALSE(admits(kStrict, s, std::vector<Gain>{}, -1));
    CHECK(admits(kHomogeneous, s, std::vector<Gain>{}, -1));
    CHECK(admits(kTilted, s, std::vector<Gain>{}, -1));
    CHECK_FALSE(admits(kHomogeneous, s, std::vector<Gain>{-1}, -2));
    CHECK(admits(kHomogeneous, s, std::vector<Gain>{-1}, 1));
    CHECK(admits(kHomogeneous, s, std::vector<Gain>{-1, 1}, 4));
}

TEST_CASE("record tracks the sign of the latest gain") {
    GainState s = init_state(kHomogeneous);
    s = record(kHomogeneous, s, 1, -1);
    CHECK(s.violated);
    s = record(kHomogeneous, s, 2, 1);
    CHECK_FALSE(s.violated);
    for (Gain g : {1, 7, 100}) CHECK_FALSE(record(kStrict, init_state(kStrict), 1, g).violated);
}

TEST_CASE("finish_move carries the G0 sign for the tilted policy") {
    const GainState s = init_state(kTilted);
    // Move ends at i = k with G_{k-1} > 0: the sign comes from G_{k-1}.
    CHECK(finish_move(kTilted, s, std::vector<Gain>{3, 2, 1, 5, -2}).g0_positive);
    CHECK_FALSE(finish_move(kTilted, s, std::vector<Gain>{3, 2, 1, -5, 2}).g0_positive);
    CHECK_FALSE(finish_move(kTilted, s, std::vector<Gain>{3, -1}).g0_positive);
    CHECK(finish_move(kTilted, s, std::vector<Gain>{-3, 1}).g0_positive);
    CHECK(finish_move(kTilted, s, std::vector<Gain>{}) == s);
    GainState neg = s;
    neg.g0_positive = false;
    CHECK(assumed_g0(kTilted, neg) <= 0);
    CHECK(assumed_g0(kHomogeneous, neg) > 0);
    CHECK_FALSE(admits(kTilted, neg, std::vector<Gain>{}, -1));
    CHECK(admits(kTilted, neg, std::vector<Gain>{}, 2));
    // Other policies ignore the carried sign.
    CHECK(finish_move(kHomogeneous, s, std::vector<Gain>{3, -1}) == s);
}

TEST_CASE("tilted restriction applies right after multiples of k") {
    const GainPolicy p{PolicyKind::Tilted, 3};
    const GainState s = init_state(p);
    // i = 4: i-1 = 3 is a multiple of k, so G_2 must be positive as well.
    CHECK_FALSE(admits(p, s, 4, -1, 2, -1));
    CHECK(admits(p, s, 4, -1, 2, 1));
    CHECK(admits(kHomogeneous, s, 4, -1, 2, -1));
    // i = 3: no extra condition.
    CHECK(admits(p, s, 3, -1, 2, -1));
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS((void)admits(kStrict, init_state(kStrict), 0, 1, 1, 1), Error);
    try {
        (void)admits(kStrict, init_state(kStrict), -2, 1, 1, 1);
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::StepIndexInvalid);
    }
    CHECK_THROWS_AS((GainPolicy{PolicyKind::Tilted, 1}.validate()), Error);
    CHECK_NOTHROW((GainPolicy{PolicyKind::Strict, 1}.validate()));
    CHECK(parse_policy_kind("HOMOGENEOUS") == PolicyKind::Homogeneous);
    CHECK(parse_policy_kind("tilted") == PolicyKind::Tilted);
    CHECK_THROWS_AS((void)parse_policy_kind("greedy"), Error);
}

TEST_CASE("predicates match their definitions over all sign patterns") {
    const std::vector<Gain> values{-2, 0, 3};
    for (int k = 2; k <= 6; ++k) {
        for (bool g0 : {true, false}) {
            const GainPolicy policies[] = {{PolicyKind::Strict, k}, {PolicyKind::Homogeneous, k}, {PolicyKind::Tilted, k}};
            for (int depth = 1; depth <= 6; ++depth) {
                std::size_t combos = 1;
                for (int l = 0; l < depth; ++l) combos *= values.size();
                for (std::size_t code = 0; code < combos; ++code) {
                    std::vector<Gain> ledger;
                    for (std::size_t c = code, l = 0; l < static_cast<std::size_t>(depth); ++l, c /= values.size()) {
                        ledger.push_back(values[c % values.size()]);
                    }
                    const Gain gi = ledger.back();
                    ledger.pop_back();
                    bool admitted[3];
                    for (int p = 0; p < 3; ++p) {
                        GainState s = init_state(policies[p]);
                        s.g0_positive = g0;
                        const Gain assumed = assumed_g0(policies[p], s);
                        std::vector<Gain> full{assumed, assumed};
                        full.insert(full.end(), ledger.begin(), ledger.end());
                        full.push_back(gi);
                        admitted[p] = admits(policies[p], s, ledger, gi);
                        CHECK(admitted[p] == oracle(policies[p].kind, k, full));
                    }
                    if (admitted[0]) CHECK(admitted[1]);
                    if (admitted[2]) CHECK(admitted[1]);
                }
            }
        }
    }
}

TEST_CASE("step-by-step admission never yields consecutive non-positive gains") {
    const std::vector<Gain> values{-3, -1, 0, 1, 2};
    for (const auto& p : {kStrict, kHomogeneous, kTilted}) {
        std::size_t admitted_ledgers = 0;
        for (std::size_t code = 0; code < 5 * 5 * 5 * 5 * 5; ++code) {
            std::vector<Gain> ledger;
            bool ok = true;
            GainState s = init_state(p);
            for (std::size_t c = code, l = 0; l < 5 && ok; ++l, c /= 5) {
                const Gain g = values[c % 5];
                ok = admits(p, s, ledger, g);
                if (ok) {
                    s = record(p, s, static_cast<int>(l + 1), g);
                    ledger.push_back(g);
                }
            }
            if (!ok) continue;
            ++admitted_ledgers;
            CHECK_FALSE(has_consecutive_nonpositive(ledger));
            if (p.kind == PolicyKind::Strict) {
                for (Gain g : ledger) CHECK(g > 0);
            }
        }
        if (p.kind == PolicyKind::Strict) CHECK(admitted_ledgers == 2 * 2 * 2 * 2 * 2);
        else CHECK(admitted_ledgers > 32);
    }
    CHECK(has_consecutive_nonpositive(std::vector<Gain>{1, 0, -1}));
    CHECK_FALSE(has_consecutive_nonpositive(std::vector<Gain>{0, 1, 0}));
}
