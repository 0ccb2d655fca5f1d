#include "lkgain/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "lkgain/error.hpp"

namespace lkgain {

namespace {

void require_at_most(const Instance& inst, Vertex limit, const char* what) {
    if (inst.dimension() > limit) {
        throw Error(ErrorCode::InstanceTooLarge, std::string(what) + " supports n <= " + std::to_string(limit) +
                                                     ", got " + std::to_string(inst.dimension()));
    }
}

} // namespace

OracleResult held_karp_optimum(const Instance& inst) {
    require_at_most(inst, kHeldKarpMaxVertices, "held_karp_optimum");
    const int n = inst.dimension();
    const int m = n - 1; // vertices 1..n-1 are bits 0..m-1
    const std::size_t states = std::size_t{1} << m;
    constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;
    std::vector<Cost> dp(states * static_cast<std::size_t>(m), kInf);
    std::vector<std::int8_t> from(states * static_cast<std::size_t>(m), -1);
    auto at = [m](std::size_t mask, int j) { return mask * static_cast<std::size_t>(m) + static_cast<std::size_t>(j); };

    for (int j = 0; j < m; ++j) dp[at(std::size_t{1} << j, j)] = inst.cost(0, j + 1);
    for (std::size_t mask = 1; mask < states; ++mask) {
        for (int j = 0; j < m; ++j) {
            if (!(mask & (std::size_t{1} << j))) continue;
            const Cost base = dp[at(mask, j)];
            if (base >= kInf) continue;
            for (int k = 0; k < m; ++k) {
                if (mask & (std::size_t{1} << k)) continue;
                const std::size_t next = mask | (std::size_t{1} << k);
                const Cost c = base + inst.cost(j + 1, k + 1);
                if (c < dp[at(next, k)]) {
                    dp[at(next, k)] = c;
                    from[at(next, k)] = static_cast<std::int8_t>(j);
                }
            }
        }
    }

    const std::size_t full = states - 1;
    Cost best = kInf;
    int last = -1;
    for (int j = 0; j < m; ++j) {
        const Cost c = dp[at(full, j)] + inst.cost(j + 1, 0);
        if (c < best) {
            best = c;
            last = j;
        }
    }

    OracleResult result;
    result.optimum = best;
    std::vector<Vertex> rev;
    std::size_t mask = full;
    for (int j = last; j >= 0;) {
        rev.push_back(j + 1);
        const int prev = from[at(mask, j)];
        mask &= ~(std::size_t{1} << j);
        j = prev;
    }
    result.witness_tour.push_back(0);
    result.witness_tour.insert(result.witness_tour.end(), rev.rbegin(), rev.rend());
    return result;
}

OracleResult brute_force_optimum(const Instance& inst) {
    require_at_most(inst, kBruteForceMaxVertices, "brute_force_optimum");
    const Vertex n = inst.dimension();
    std::vector<Vertex> perm(static_cast<std::size_t>(n - 1));
    std::iota(perm.begin(), perm.end(), 1);
    OracleResult result;
    result.optimum = std::numeric_limits<Cost>::max();
    do {
        if (perm.front() > perm.back()) continue; // each cycle once per direction
        Cost c = inst.cost(0, perm.front()) + inst.cost(perm.back(), 0);
        for (std::size_t i = 0; i + 1 < perm.size(); ++i) c += inst.cost(perm[i], perm[i + 1]);
        if (c < result.optimum) {
            result.optimum = c;
            result.witness_tour.assign(1, 0);
            result.witness_tour.insert(result.witness_tour.end(), perm.begin(), perm.end());
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return result;
}

namespace {

bool edge_in(std::span<const Vertex> t, std::size_t offset, Vertex a, Vertex b) {
    for (std::size_t l = offset; l + 1 < t.size(); l += 2) {
        if ((t[l] == a && t[l + 1] == b) || (t[l] == b && t[l + 1] == a)) return true;
    }
    return false;
}

class Enumerator {
  public:
    Enumerator(const Instance& inst, const Tour& tour, int max_depth, const GainPolicy& policy,
               const CandidateSets& cands, int period)
        : inst_(inst), tour_(tour), max_depth_(max_depth), policy_(policy), cands_(cands), period_(period),
          state_(init_state(policy)) {}

    void from(Vertex t1) {
        for (const Vertex t2 : neighbours(t1)) {
            t_.assign({t1, t2});
            ledger_.clear();
            descend();
        }
    }

    std::vector<ExchangeMove> moves;

  private:
    std::vector<Vertex> neighbours(Vertex v) const {
        std::vector<Vertex> out{tour_.succ(v)};
        if (tour_.pred(v) != out.front()) out.push_back(tour_.pred(v));
        return out;
    }

    void descend() {
        const int i = static_cast<int>(t_.size() / 2);
        const Vertex t1 = t_.front();
        const Vertex t2i = t_.back();
        const Gain partial = (i >= 2 ? ledger_.back() : 0) + inst_.cost(t_[t_.size() - 2], t2i);

        if (i >= 2 && t2i != t1) {
            const Gain g = partial - inst_.cost(t2i, t1);
            if (g > 0 && close_up_is_tour(tour_, t_)) {
                ExchangeMove m;
                m.t = t_;
                m.ledger = ledger_;
                m.ledger.push_back(g);
                m.gain = g;
                moves.push_back(std::move(m));
            }
        }
        if (i >= max_depth_) return;

        for (const auto& cand : cands_[t2i]) {
            const Vertex v = cand.to;
            if (v == t2i || tour_.adjacent(t2i, v) || edge_in(t_, 1, t2i, v)) continue;
            const Gain g = partial - inst_.cost(t2i, v);
            if (!admits(policy_, state_, ledger_, g)) continue;
            for (const Vertex w : neighbours(v)) {
                if (w == t1 || edge_in(t_, 0, v, w)) continue;
                t_.push_back(v);
                t_.push_back(w);
                bool ok = true;
                if ((i + 1) % period_ == 0) {
                    ok = !edge_in(t_, 1, v, w) && close_up_is_tour(tour_, t_);
                }
                if (ok) {
                    ledger_.push_back(g);
                    descend();
                    ledger_.pop_back();
                }
                t_.pop_back();
                t_.pop_back();
            }
        }
    }

    const Instance& inst_;
    const Tour& tour_;
    int max_depth_;
    GainPolicy policy_;
    const CandidateSets& cands_;
    int period_;
    GainState state_;
    std::vector<Vertex> t_;
    GainLedger ledger_;
};

} // namespace

std::vector<ExchangeMove> enumerate_closing_moves(const Instance& inst, const Tour& tour, int max_depth,
                                                  const GainPolicy& policy, const CandidateSets& cands,
                                                  std::optional<Vertex> t1, int feasibility_period) {
    require_at_most(inst, kEnumerationMaxVertices, "enumerate_closing_moves");
    if (max_depth > kEnumerationMaxDepth) {
        throw Error(ErrorCode::InstanceTooLarge, "enumerate_closing_moves supports max_depth <= 4");
    }
    if (feasibility_period < 1) throw Error(ErrorCode::InvalidConfig, "feasibility_period must be >= 1");
    Enumerator e(inst, tour, max_depth, policy, cands, feasibility_period);
    if (t1) {
        e.from(*t1);
    } else {
        for (Vertex v = 0; v < inst.dimension(); ++v) e.from(v);
    }
    return std::move(e.moves);
}

} // namespace lkgain
