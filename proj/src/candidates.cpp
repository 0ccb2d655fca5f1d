#include "lkgain/candidates.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "lkgain/error.hpp"

namespace lkgain {

bool CandidateSets::contains(Vertex from, Vertex to) const noexcept {
    const auto& list = lists_[static_cast<std::size_t>(from)];
    return std::any_of(list.begin(), list.end(), [to](const Candidate& c) { return c.to == to; });
}

std::string_view to_string(CandidateKind kind) noexcept {
    return kind == CandidateKind::Alpha ? "alpha" : "nearest";
}

CandidateKind parse_candidate_kind(std::string_view text) {
    std::string lower(text);
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "alpha") return CandidateKind::Alpha;
    if (lower == "nearest") return CandidateKind::Nearest;
    throw Error(ErrorCode::InvalidConfig, "unknown candidate set type '" + std::string(text) + "'");
}

namespace {

void require_max_candidates(int max_candidates) {
    if (max_candidates < 1) {
        throw Error(ErrorCode::InvalidConfig, "max_candidates must be >= 1");
    }
}

// Keeps the `m` smallest (key, tiebreak, id) entries in ascending order.
using RankedEntry = std::tuple<std::int64_t, std::int64_t, Vertex>;

std::vector<Candidate> top_ranked(std::vector<RankedEntry>& entries, std::size_t m) {
    m = std::min(m, entries.size());
    std::partial_sort(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(m), entries.end());
    std::vector<Candidate> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) out.push_back({std::get<2>(entries[i]), std::get<0>(entries[i])});
    return out;
}

} // namespace

CandidateSets nn_candidates(const Instance& inst, int max_candidates) {
    require_max_candidates(max_candidates);
    const Vertex n = inst.dimension();
    std::vector<std::vector<Candidate>> lists(static_cast<std::size_t>(n));
    std::vector<RankedEntry> entries;
    for (Vertex v = 0; v < n; ++v) {
        entries.clear();
        for (Vertex w = 0; w < n; ++w) {
            if (w != v) entries.emplace_back(inst.cost(v, w), 0, w);
        }
        lists[static_cast<std::size_t>(v)] = top_ranked(entries, static_cast<std::size_t>(max_candidates));
    }
    return CandidateSets(std::move(lists));
}

std::vector<std::pair<Vertex, Vertex>> OneTree::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (std::size_t v = 0; v < parent.size(); ++v) {
        if (parent[v] >= 0) {
            const auto a = static_cast<Vertex>(v), b = parent[v];
            out.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    out.emplace_back(0, special_first);
    out.emplace_back(0, special_second);
    return out;
}

double OneTree::bound() const {
    std::int64_t sum_pi = 0;
    for (auto p : pi) sum_pi += p;
    return static_cast<double>(total_length - 2 * sum_pi) / static_cast<double>(kPiScale);
}

OneTree minimum_one_tree(const Instance& inst, std::vector<std::int64_t> pi) {
    const Vertex n = inst.dimension();
    if (pi.size() != static_cast<std::size_t>(n)) {
        throw Error(ErrorCode::InvalidConfig, "pi has " + std::to_string(pi.size()) + " entries, need " +
                                                  std::to_string(n));
    }
    OneTree tree;
    tree.parent.assign(static_cast<std::size_t>(n), -1);
    tree.degree.assign(static_cast<std::size_t>(n), 0);

    constexpr auto kInf = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> key(static_cast<std::size_t>(n), kInf);
    std::vector<Vertex> link(static_cast<std::size_t>(n), -1);
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    done[0] = 1;
    done[1] = 1;
    for (Vertex v = 2; v < n; ++v) {
        key[static_cast<std::size_t>(v)] = penalized_cost(inst, pi, 1, v);
        link[static_cast<std::size_t>(v)] = 1;
    }
    for (Vertex step = 2; step < n; ++step) {
        Vertex best = -1;
        for (Vertex v = 2; v < n; ++v) {
            if (!done[static_cast<std::size_t>(v)] &&
                (best < 0 || key[static_cast<std::size_t>(v)] < key[static_cast<std::size_t>(best)])) {
                best = v;
            }
        }
        const auto b = static_cast<std::size_t>(best);
        done[b] = 1;
        tree.parent[b] = link[b];
        tree.total_length += key[b];
        ++tree.degree[b];
        ++tree.degree[static_cast<std::size_t>(link[b])];
        for (Vertex v = 2; v < n; ++v) {
            if (done[static_cast<std::size_t>(v)]) continue;
            const auto c = penalized_cost(inst, pi, best, v);
            if (c < key[static_cast<std::size_t>(v)]) {
                key[static_cast<std::size_t>(v)] = c;
                link[static_cast<std::size_t>(v)] = best;
            }
        }
    }

    std::int64_t c1 = kInf, c2 = kInf;
    for (Vertex v = 1; v < n; ++v) {
        const auto c = penalized_cost(inst, pi, 0, v);
        if (c < c1) {
            c2 = c1;
            tree.special_second = tree.special_first;
            c1 = c;
            tree.special_first = v;
        } else if (c < c2) {
            c2 = c;
            tree.special_second = v;
        }
    }
    tree.total_length += c1 + c2;
    tree.degree[0] = 2;
    ++tree.degree[static_cast<std::size_t>(tree.special_first)];
    ++tree.degree[static_cast<std::size_t>(tree.special_second)];
    tree.pi = std::move(pi);
    return tree;
}

AscentResult held_karp_ascent(const Instance& inst, int iterations) {
    if (iterations < 0) throw Error(ErrorCode::InvalidConfig, "iterations must be >= 0");
    const Vertex n = inst.dimension();
    AscentResult result;
    std::vector<std::int64_t> pi(static_cast<std::size_t>(n), 0);
    OneTree tree = minimum_one_tree(inst, pi);
    result.lower_bound = tree.bound();
    result.pi = pi;
    result.history.push_back(result.lower_bound);

    const double t0 = std::max(result.lower_bound / (2.0 * n), 1.0 / static_cast<double>(kPiScale));
    double step = t0;
    for (int k = 0; k < iterations; ++k, step *= 0.9) {
        const bool is_tour = std::all_of(tree.degree.begin(), tree.degree.end(), [](int d) { return d == 2; });
        if (!is_tour) {
            for (Vertex v = 0; v < n; ++v) {
                const auto d = tree.degree[static_cast<std::size_t>(v)] - 2;
                pi[static_cast<std::size_t>(v)] += std::llround(step * static_cast<double>(kPiScale) * d);
            }
            tree = minimum_one_tree(inst, pi);
            if (const double w = tree.bound(); w > result.lower_bound) {
                result.lower_bound = w;
                result.pi = pi;
            }
        }
        result.history.push_back(result.lower_bound);
    }
    return result;
}

namespace {

// Tree adjacency on vertices 1..n-1 for path-maximum queries.
class TreeWalker {
  public:
    TreeWalker(const Instance& inst, const OneTree& tree) : inst_(inst), tree_(tree) {
        const auto n = static_cast<std::size_t>(inst.dimension());
        if (tree.parent.size() != n || tree.pi.size() != n || tree.special_first <= 0 ||
            tree.special_second <= 0 || tree.special_first == tree.special_second ||
            tree.special_first >= inst.dimension() || tree.special_second >= inst.dimension()) {
            throw Error(ErrorCode::TreeInconsistent, "1-tree does not match the instance");
        }
        start_.assign(n + 1, 0);
        std::size_t roots = 0;
        for (std::size_t v = 1; v < n; ++v) {
            const Vertex p = tree.parent[v];
            if (p < 0) {
                ++roots;
                continue;
            }
            if (p < 1 || static_cast<std::size_t>(p) >= n || static_cast<std::size_t>(p) == v) {
                throw Error(ErrorCode::TreeInconsistent, "bad parent for vertex " + std::to_string(v));
            }
            ++start_[v + 1];
            ++start_[static_cast<std::size_t>(p) + 1];
        }
        if (roots != 1 || tree.parent[0] != -1) {
            throw Error(ErrorCode::TreeInconsistent, "expected a single spanning tree on vertices 1..n-1");
        }
        for (std::size_t v = 0; v < n; ++v) start_[v + 1] += start_[v];
        adj_.resize(start_[n]);
        std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
        for (std::size_t v = 1; v < n; ++v) {
            const Vertex p = tree.parent[v];
            if (p < 0) continue;
            adj_[fill[v]++] = static_cast<Vertex>(p);
            adj_[fill[static_cast<std::size_t>(p)]++] = static_cast<Vertex>(v);
        }
        beta_.assign(n, 0);
        seen_.assign(n, 0);
    }

    std::vector<std::int64_t> row(Vertex from) {
        const Vertex n = inst_.dimension();
        const auto& pi = tree_.pi;
        std::vector<std::int64_t> alpha(static_cast<std::size_t>(n), 0);
        const auto second = penalized_cost(inst_, pi, 0, tree_.special_second);
        auto alpha_special = [&](Vertex j) -> std::int64_t {
            if (j == tree_.special_first || j == tree_.special_second) return 0;
            return penalized_cost(inst_, pi, 0, j) - second;
        };
        if (from == 0) {
            for (Vertex j = 1; j < n; ++j) alpha[static_cast<std::size_t>(j)] = alpha_special(j);
            return alpha;
        }
        alpha[0] = alpha_special(from);

        // beta[j] = largest penalized edge on the tree path from..j
        ++stamp_;
        stack_.clear();
        stack_.push_back(from);
        seen_[static_cast<std::size_t>(from)] = stamp_;
        beta_[static_cast<std::size_t>(from)] = std::numeric_limits<std::int64_t>::min();
        while (!stack_.empty()) {
            const Vertex u = stack_.back();
            stack_.pop_back();
            const auto bu = beta_[static_cast<std::size_t>(u)];
            for (auto e = start_[static_cast<std::size_t>(u)]; e < start_[static_cast<std::size_t>(u) + 1]; ++e) {
                const Vertex w = adj_[e];
                if (seen_[static_cast<std::size_t>(w)] == stamp_) continue;
                seen_[static_cast<std::size_t>(w)] = stamp_;
                beta_[static_cast<std::size_t>(w)] = std::max(bu, penalized_cost(inst_, pi, u, w));
                stack_.push_back(w);
            }
        }
        for (Vertex j = 1; j < n; ++j) {
            if (j == from) continue;
            alpha[static_cast<std::size_t>(j)] = penalized_cost(inst_, pi, from, j) - beta_[static_cast<std::size_t>(j)];
        }
        return alpha;
    }

  private:
    const Instance& inst_;
    const OneTree& tree_;
    std::vector<std::size_t> start_;
    std::vector<Vertex> adj_;
    std::vector<std::int64_t> beta_;
    std::vector<unsigned> seen_;
    std::vector<Vertex> stack_;
    unsigned stamp_ = 0;
};

} // namespace

std::vector<std::int64_t> alpha_row(const Instance& inst, const OneTree& tree, Vertex from) {
    if (from < 0 || from >= inst.dimension()) {
        throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(from));
    }
    TreeWalker walker(inst, tree);
    return walker.row(from);
}

std::vector<std::int64_t> alpha_values(const Instance& inst, const OneTree& tree) {
    TreeWalker walker(inst, tree);
    const auto n = static_cast<std::size_t>(inst.dimension());
    std::vector<std::int64_t> table(n * n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        const auto row = walker.row(static_cast<Vertex>(v));
        std::copy(row.begin(), row.end(), table.begin() + static_cast<std::ptrdiff_t>(v * n));
    }
    return table;
}

CandidateSets build_candidate_sets(const Instance& inst, CandidateKind kind, int max_candidates,
                                   int ascent_iterations) {
    require_max_candidates(max_candidates);
    if (kind == CandidateKind::Nearest) return nn_candidates(inst, max_candidates);

    const auto ascent = held_karp_ascent(inst, ascent_iterations);
    const OneTree tree = minimum_one_tree(inst, ascent.pi);
    TreeWalker walker(inst, tree);
    const Vertex n = inst.dimension();
    std::vector<std::vector<Candidate>> lists(static_cast<std::size_t>(n));
    std::vector<RankedEntry> entries;
    for (Vertex v = 0; v < n; ++v) {
        const auto alpha = walker.row(v);
        entries.clear();
        for (Vertex w = 0; w < n; ++w) {
            if (w != v) entries.emplace_back(alpha[static_cast<std::size_t>(w)], penalized_cost(inst, tree.pi, v, w), w);
        }
        lists[static_cast<std::size_t>(v)] = top_ranked(entries, static_cast<std::size_t>(max_candidates));
    }
    return CandidateSets(std::move(lists));
}

std::string dump_candidates(const CandidateSets& sets) {
    std::ostringstream out;
    for (Vertex v = 0; v < sets.size(); ++v) {
        out << v + 1 << ':';
        for (const auto& c : sets[v]) out << ' ' << c.to + 1 << '(' << c.rank_key << ')';
        out << '\n';
    }
    return out.str();
}

CandidateSets load_candidates(std::string_view text) {
    std::vector<std::vector<Candidate>> lists;
    std::istringstream in{std::string(text)};
    std::string line;
    auto fail = [](const std::string& why) { throw Error(ErrorCode::MalformedHeader, "candidate dump: " + why); };
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) fail("missing ':'");
        long long v = 0;
        if (!(std::istringstream(line.substr(0, colon)) >> v) || v != static_cast<long long>(lists.size()) + 1) {
            fail("vertex lines must be numbered 1..n in order");
        }
        std::vector<Candidate> list;
        std::istringstream items(line.substr(colon + 1));
        std::string item;
        while (items >> item) {
            const auto open = item.find('('), close = item.find(')');
            if (open == std::string::npos || close != item.size() - 1) fail("bad entry '" + item + "'");
            long long to = 0, key = 0;
            auto r1 = std::from_chars(item.data(), item.data() + open, to);
            auto r2 = std::from_chars(item.data() + open + 1, item.data() + close, key);
            if (r1.ec != std::errc{} || r2.ec != std::errc{} || r1.ptr != item.data() + open ||
                r2.ptr != item.data() + close || to < 1) {
                fail("bad entry '" + item + "'");
            }
            list.push_back({static_cast<Vertex>(to - 1), key});
        }
        lists.push_back(std::move(list));
    }
    for (const auto& list : lists) {
        for (const auto& c : list) {
            if (c.to >= static_cast<Vertex>(lists.size())) fail("neighbor id out of range");
        }
    }
    return CandidateSets(std::move(lists));
}

} // namespace lkgain
