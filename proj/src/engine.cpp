#include "lkgain/engine.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "lkgain/error.hpp"

namespace lkgain {

void SearchConfig::validate() const {
    if (max_depth < 2) throw Error(ErrorCode::InvalidConfig, "max_depth must be >= 2");
    if (feasibility_period < 1) throw Error(ErrorCode::InvalidConfig, "feasibility_period must be >= 1");
    if (backtrack_depth < 0) throw Error(ErrorCode::InvalidConfig, "backtrack_depth must be >= 0");
    effective_policy().validate();
}

namespace {

bool same_edge(Vertex a, Vertex b, Vertex c, Vertex d) noexcept {
    return (a == c && b == d) || (a == d && b == c);
}

} // namespace

bool AlternatingPath::deletes(Vertex a, Vertex b) const noexcept {
    for (std::size_t l = 0; l + 1 < t.size(); l += 2) {
        if (same_edge(t[l], t[l + 1], a, b)) return true;
    }
    return false;
}

bool AlternatingPath::adds(Vertex a, Vertex b) const noexcept {
    for (std::size_t l = 1; l + 1 < t.size(); l += 2) {
        if (same_edge(t[l], t[l + 1], a, b)) return true;
    }
    return false;
}

std::optional<EdgeChoice> find_sequential_edge_to_add(const Instance& inst, const Tour& tour,
                                                      const AlternatingPath& path, const SearchConfig& cfg,
                                                      const CandidateSets& cands, const GainState& state,
                                                      std::size_t start_rank) {
    if (!path.ends_with_deletion()) {
        throw Error(ErrorCode::PathInconsistent, "path must end with a deleted edge");
    }
    const std::size_t i = path.t.size() / 2;
    if (path.ledger.size() + 1 != i) {
        throw Error(ErrorCode::PathInconsistent, "ledger length does not match the path");
    }
    const Vertex from = path.t[path.t.size() - 2];
    const Vertex t2i = path.t.back();
    const Gain partial = (i >= 2 ? path.ledger.back() : 0) + inst.cost(from, t2i);
    const GainPolicy policy = cfg.effective_policy();

    const auto& list = cands[t2i];
    for (std::size_t r = start_rank; r < list.size(); ++r) {
        const Vertex next = list[r].to;
        // Tour neighbours would delete and re-add the same edge.
        if (next == t2i || tour.adjacent(t2i, next)) continue;
        if (path.adds(t2i, next)) continue;
        const Gain g = partial - inst.cost(t2i, next);
        if (!admits(policy, state, path.ledger, g)) continue;
        return EdgeChoice{next, g, r};
    }
    return std::nullopt;
}

std::vector<Vertex> select_next_deleted_edge(const Instance& inst, const Tour& tour, const AlternatingPath& path,
                                             const SearchConfig& cfg) {
    if (path.t.empty() || path.ends_with_deletion()) {
        throw Error(ErrorCode::PathInconsistent, "path must end with an added edge or be a single vertex");
    }
    const Vertex t1 = path.t.front();
    const Vertex from = path.t.back();
    const int next_index = path.deleted_count() + 1;
    const bool checkpoint = next_index % cfg.feasibility_period == 0;

    std::vector<Vertex> out;
    for (const Vertex w : {tour.succ(from), tour.pred(from)}) {
        if (w == t1 || path.deletes(from, w)) continue;
        if (std::find(out.begin(), out.end(), w) != out.end()) continue;
        if (checkpoint) {
            if (path.adds(from, w)) continue;
            std::vector<Vertex> probe = path.t;
            probe.push_back(w);
            if (!close_up_is_tour(tour, probe)) continue;
        }
        out.push_back(w);
    }
    std::sort(out.begin(), out.end(), [&](Vertex a, Vertex b) {
        const Cost ca = inst.cost(from, a), cb = inst.cost(from, b);
        return ca != cb ? ca > cb : a < b;
    });
    return out;
}

std::optional<ExchangeMove> try_close(const Instance& inst, const Tour& tour, const AlternatingPath& path) {
    if (!path.ends_with_deletion()) return std::nullopt;
    const std::size_t i = path.t.size() / 2;
    if (i < 2) return std::nullopt;
    if (path.ledger.size() + 1 != i) {
        throw Error(ErrorCode::PathInconsistent, "ledger length does not match the path");
    }
    const Vertex t1 = path.t.front();
    const Vertex last = path.t.back();
    if (last == t1) return std::nullopt;
    const Gain g = path.ledger.back() + inst.cost(path.t[path.t.size() - 2], last) - inst.cost(last, t1);
    if (g <= 0) return std::nullopt;
    if (!close_up_is_tour(tour, path.t)) return std::nullopt;
    ExchangeMove move;
    move.t = path.t;
    move.ledger = path.ledger;
    move.ledger.push_back(g);
    move.gain = g;
    return move;
}

namespace {

class DepthFirstSearch {
  public:
    DepthFirstSearch(const Instance& inst, const Tour& tour, const SearchConfig& cfg, const CandidateSets& cands,
                     const SearchObserver* observer)
        : inst_(inst), tour_(tour), cfg_(cfg), cands_(cands), policy_(cfg.effective_policy()),
          observer_(observer) {}

    std::optional<ExchangeMove> run(Vertex t1, const GainState& state) {
        path_.t.assign({t1});
        path_.ledger.clear();
        const auto firsts = select_next_deleted_edge(inst_, tour_, path_, cfg_);
        for (const Vertex t2 : firsts) {
            path_.t.assign({t1, t2});
            path_.ledger.clear();
            if (grow(state)) break;
        }
        return found_;
    }

    [[nodiscard]] const GainLedger& last_ledger() const noexcept { return last_ledger_; }

  private:
    bool grow(const GainState& state) {
        const int i = static_cast<int>(path_.t.size() / 2);
        if (i >= 2) {
            if (auto move = try_close(inst_, tour_, path_)) {
                last_ledger_ = move->ledger;
                found_ = std::move(move);
                return true;
            }
        }
        if (i >= cfg_.max_depth) return false;

        std::size_t rank = 0;
        for (;;) {
            const auto choice = find_sequential_edge_to_add(inst_, tour_, path_, cfg_, cands_, state, rank);
            if (!choice) return false;
            path_.t.push_back(choice->next);
            path_.ledger.push_back(choice->gain);
            last_ledger_ = path_.ledger;
            if (observer_ && observer_->on_extend) observer_->on_extend(path_);

            const GainState next_state = record(policy_, state, i, choice->gain);
            auto options = select_next_deleted_edge(inst_, tour_, path_, cfg_);
            if (i + 1 > cfg_.backtrack_depth && options.size() > 1) options.resize(1);
            for (const Vertex w : options) {
                path_.t.push_back(w);
                if (grow(next_state)) return true;
                path_.t.pop_back();
            }
            path_.t.pop_back();
            path_.ledger.pop_back();
            if (i > cfg_.backtrack_depth) return false;
            rank = choice->rank + 1;
        }
    }

    const Instance& inst_;
    const Tour& tour_;
    const SearchConfig& cfg_;
    const CandidateSets& cands_;
    GainPolicy policy_;
    const SearchObserver* observer_;
    AlternatingPath path_;
    GainLedger last_ledger_;
    std::optional<ExchangeMove> found_;
};

} // namespace

std::optional<ExchangeMove> find_improving_move(const Instance& inst, const Tour& tour, Vertex t1,
                                                const SearchConfig& cfg, const CandidateSets& cands,
                                                GainState& state, const SearchObserver* observer) {
    if (t1 < 0 || t1 >= tour.size()) throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(t1));
    DepthFirstSearch search(inst, tour, cfg, cands, observer);
    GainState path_state = state;
    path_state.violated = false;
    auto move = search.run(t1, path_state);
    state = finish_move(cfg.effective_policy(), state, search.last_ledger());
    if (move && observer && observer->on_move) observer->on_move(*move);
    return move;
}

std::optional<Improvement> improve_from_vertex(const Instance& inst, const Tour& tour, Vertex t1,
                                               const SearchConfig& cfg, const CandidateSets& cands,
                                               GainState& state, const SearchObserver* observer) {
    auto move = find_improving_move(inst, tour, t1, cfg, cands, state, observer);
    if (!move) return std::nullopt;
    Tour next = apply_move(inst, tour, *move);
    return Improvement{std::move(next), move->gain, std::move(*move)};
}

TrialOutcome run_trial(const Instance& inst, Tour tour, const SearchConfig& cfg, const CandidateSets& cands,
                       GainState& state, std::mt19937_64& rng, std::optional<Clock::time_point> deadline,
                       const SearchObserver* observer) {
    cfg.validate();
    const Vertex n = tour.size();
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    TrialOutcome out{std::move(tour)};
    std::size_t idx = 0;
    Vertex fails = 0;
    while (fails < n) {
        if (deadline && Clock::now() >= *deadline) {
            out.completed = false;
            break;
        }
        const Vertex t1 = order[idx];
        if (auto move = find_improving_move(inst, out.tour, t1, cfg, cands, state, observer)) {
            out.tour.apply(inst, *move);
            assert(out.tour.validate(inst));
            ++out.improvements;
            fails = 0;
        } else {
            ++fails;
            idx = idx + 1 == order.size() ? 0 : idx + 1;
        }
    }
    return out;
}

} // namespace lkgain
