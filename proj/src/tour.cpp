#include "lkgain/tour.hpp"

#include <algorithm>
#include <string>

#include "lkgain/error.hpp"

namespace lkgain {

std::vector<Edge> ExchangeMove::deleted_edges() const {
    std::vector<Edge> out;
    for (std::size_t l = 0; l + 1 < t.size(); l += 2) out.emplace_back(t[l], t[l + 1]);
    return out;
}

std::vector<Edge> ExchangeMove::added_edges() const {
    std::vector<Edge> out;
    for (std::size_t l = 1; l < t.size(); l += 2) out.emplace_back(t[l], t[(l + 1) % t.size()]);
    return out;
}

Tour Tour::from_order(const Instance& inst, std::span<const Vertex> order) {
    Tour tour;
    tour.cost_ = tour_cost(inst, order);
    tour.order_.assign(order.begin(), order.end());
    tour.pos_.resize(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        tour.pos_[static_cast<std::size_t>(order[i])] = static_cast<Vertex>(i);
    }
    return tour;
}

Vertex Tour::next(Vertex v) const {
    if (v < 0 || v >= size()) throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(v));
    return succ(v);
}

Vertex Tour::prev(Vertex v) const {
    if (v < 0 || v >= size()) throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(v));
    return pred(v);
}

bool Tour::between(Vertex a, Vertex b, Vertex c) const {
    for (Vertex v : {a, b, c}) {
        if (v < 0 || v >= size()) throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(v));
    }
    if (a == b || b == c || a == c) {
        throw Error(ErrorCode::VerticesNotDistinct,
                    "between(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
    }
    const Vertex n = size();
    const Vertex pa = position(a);
    const Vertex db = (position(b) - pa + n) % n;
    const Vertex dc = (position(c) - pa + n) % n;
    return db < dc;
}

namespace {

// Forward tour arc first..last left over after the cuts.
struct Segment {
    Vertex first;
    Vertex last;
};

// A segment as traversed by the new cycle.
struct ArcStep {
    Vertex entry;
    Vertex exit;
    bool forward;
};

// Index of the segment having `v` as an endpoint, or -1.
int segment_of(const std::vector<Segment>& segs, Vertex v) {
    for (std::size_t s = 0; s < segs.size(); ++s) {
        if (segs[s].first == v || segs[s].last == v) return static_cast<int>(s);
    }
    return -1;
}

bool close_up_segments(const Tour& tour, std::span<const Vertex> t, std::vector<ArcStep>* out) {
    const Vertex n = tour.size();
    if (t.size() < 2 || t.size() % 2 != 0) {
        throw Error(ErrorCode::PathInconsistent, "alternating path must end with a deleted edge");
    }
    for (Vertex v : t) {
        if (v < 0 || v >= n) throw Error(ErrorCode::PathInconsistent, "vertex " + std::to_string(v) + " out of range");
    }
    const std::size_t k = t.size() / 2;

    // Deleted edges as cut points: the endpoint whose successor is the other.
    std::vector<Vertex> cuts;
    cuts.reserve(k);
    for (std::size_t l = 0; l < k; ++l) {
        const Vertex a = t[2 * l], b = t[2 * l + 1];
        if (a == b || !tour.adjacent(a, b)) {
            throw Error(ErrorCode::PathInconsistent,
                        "x_" + std::to_string(l + 1) + " = (" + std::to_string(a) + "," + std::to_string(b) +
                            ") is not a tour edge");
        }
        cuts.push_back(tour.succ(a) == b ? a : b);
    }
    std::sort(cuts.begin(), cuts.end(),
              [&](Vertex u, Vertex v) { return tour.position(u) < tour.position(v); });
    if (std::adjacent_find(cuts.begin(), cuts.end()) != cuts.end()) return false;

    std::vector<std::pair<Vertex, Vertex>> adds;
    adds.reserve(k);
    for (std::size_t l = 0; l < k; ++l) {
        const Vertex a = t[2 * l + 1], b = t[(2 * l + 2) % t.size()];
        if (a == b) return false;
        adds.emplace_back(a, b);
    }

    // Every vertex must lose as many tour edges as it gains new ones.
    std::vector<std::pair<Vertex, int>> degree;
    auto bump = [&](Vertex v, int d) {
        for (auto& [u, c] : degree) {
            if (u == v) {
                c += d;
                return;
            }
        }
        degree.emplace_back(v, d);
    };
    for (std::size_t l = 0; l < k; ++l) {
        bump(t[2 * l], -1);
        bump(t[2 * l + 1], -1);
        bump(adds[l].first, +1);
        bump(adds[l].second, +1);
    }
    for (const auto& entry : degree) {
        if (entry.second != 0) return false;
    }

    std::vector<Segment> segs(k);
    for (std::size_t s = 0; s < k; ++s) {
        segs[s] = {tour.succ(cuts[s]), cuts[(s + 1) % k]};
    }

    std::vector<bool> seg_used(k, false), add_used(k, false);
    if (out) out->clear();
    std::size_t visited = 1;
    seg_used[0] = true;
    if (out) out->push_back({segs[0].first, segs[0].last, true});
    Vertex cur = segs[0].last;
    for (;;) {
        std::size_t e = 0;
        while (e < k && (add_used[e] || (adds[e].first != cur && adds[e].second != cur))) ++e;
        if (e == k) return false;
        add_used[e] = true;
        const Vertex w = adds[e].first == cur ? adds[e].second : adds[e].first;
        const int s = segment_of(segs, w);
        if (s < 0) return false;
        if (s == 0) return visited == k && w == segs[0].first;
        if (seg_used[static_cast<std::size_t>(s)]) return false;
        seg_used[static_cast<std::size_t>(s)] = true;
        ++visited;
        const auto& seg = segs[static_cast<std::size_t>(s)];
        const Vertex exit = w == seg.first ? seg.last : seg.first;
        if (out) out->push_back({w, exit, w == seg.first});
        cur = exit;
    }
}

} // namespace

bool close_up_is_tour(const Tour& tour, std::span<const Vertex> t) {
    return close_up_segments(tour, t, nullptr);
}

void Tour::apply(const Instance& inst, const ExchangeMove& move) {
    std::vector<ArcStep> segments;
    if (!close_up_segments(*this, move.t, &segments)) {
        throw Error(ErrorCode::MoveInfeasible, "exchange does not yield a single cycle");
    }
    Gain realized = 0;
    for (const auto& [a, b] : move.deleted_edges()) realized += inst.cost(a, b);
    for (const auto& [a, b] : move.added_edges()) realized -= inst.cost(a, b);
    if (realized != move.gain) {
        throw Error(ErrorCode::PathInconsistent, "move gain " + std::to_string(move.gain) +
                                                     " but edges realize " + std::to_string(realized));
    }

    const Vertex n = size();
    std::vector<Vertex> next_order;
    next_order.reserve(order_.size());
    for (const auto& step : segments) {
        Vertex p = position(step.entry);
        const Vertex stop = position(step.exit);
        for (;;) {
            next_order.push_back(order_[static_cast<std::size_t>(p)]);
            if (p == stop) break;
            p = step.forward ? (p + 1 == n ? 0 : p + 1) : (p == 0 ? n - 1 : p - 1);
        }
    }
    order_ = std::move(next_order);
    for (std::size_t i = 0; i < order_.size(); ++i) pos_[static_cast<std::size_t>(order_[i])] = static_cast<Vertex>(i);
    cost_ -= realized;
}

Tour apply_move(const Instance& inst, const Tour& tour, const ExchangeMove& move) {
    Tour out = tour;
    out.apply(inst, move);
    return out;
}

bool Tour::validate(const Instance& inst) const {
    const auto n = order_.size();
    if (pos_.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = order_[i];
        if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
        if (pos_[static_cast<std::size_t>(v)] != static_cast<Vertex>(i)) return false;
    }
    Vertex v = order_.front();
    std::size_t steps = 0;
    Cost total = 0;
    do {
        const Vertex w = succ(v);
        if (pred(w) != v) return false;
        total += inst.cost(v, w);
        v = w;
        ++steps;
    } while (v != order_.front() && steps <= n);
    return steps == n && total == cost_;
}

bool Tour::same_cycle(const Tour& other) const {
    if (other.size() != size()) return false;
    for (Vertex v = 0; v < size(); ++v) {
        const Vertex a = succ(v), b = pred(v);
        const Vertex c = other.succ(v), d = other.pred(v);
        if (!((a == c && b == d) || (a == d && b == c))) return false;
    }
    return true;
}

} // namespace lkgain
