#include "lkgain/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "lkgain/error.hpp"

namespace lkgain {

void ExperimentConfig::validate() const {
    if (runs < 1) throw Error(ErrorCode::InvalidConfig, "runs must be >= 1");
    if (max_candidates < 1) throw Error(ErrorCode::InvalidConfig, "max_candidates must be >= 1");
    if (trials_per_run && *trials_per_run < 1) throw Error(ErrorCode::InvalidConfig, "trials must be >= 1");
    if (time_limit && !(*time_limit > 0.0)) throw Error(ErrorCode::InvalidConfig, "time_limit must be > 0");
    if (ascent_iterations < 0) throw Error(ErrorCode::InvalidConfig, "ascent_iterations must be >= 0");
    if (threads < 1) throw Error(ErrorCode::InvalidConfig, "threads must be >= 1");
    search_config().validate();
}

SearchConfig ExperimentConfig::search_config() const {
    SearchConfig s;
    s.max_depth = max_depth;
    s.feasibility_period = feasibility_period;
    s.backtrack_depth = backtrack_depth;
    s.policy.kind = policy;
    return s;
}

std::mt19937_64 run_rng(std::uint64_t seed, int run) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(run)};
    return std::mt19937_64(seq);
}

double gap_percent(Cost cost, Cost optimum) noexcept {
    return 100.0 * static_cast<double>(cost - optimum) / static_cast<double>(optimum);
}

Tour restart_tour(const Tour& best, const Instance& inst, const CandidateSets& cands, std::mt19937_64& rng,
                  const Tour* next_best) {
    const Vertex n = inst.dimension();
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> order;
    order.reserve(static_cast<std::size_t>(n));
    Vertex cur = std::uniform_int_distribution<Vertex>(0, n - 1)(rng);
    std::vector<Vertex> open;
    for (;;) {
        visited[static_cast<std::size_t>(cur)] = 1;
        order.push_back(cur);
        if (static_cast<Vertex>(order.size()) == n) break;

        Vertex next = -1;
        open.clear();
        for (const auto& c : cands[cur]) {
            if (visited[static_cast<std::size_t>(c.to)]) continue;
            if (best.adjacent(cur, c.to) && (!next_best || next_best->adjacent(cur, c.to))) {
                next = c.to;
                break;
            }
            open.push_back(c.to);
        }
        if (next < 0 && !open.empty()) {
            next = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
        }
        if (next < 0) {
            Cost nearest = std::numeric_limits<Cost>::max();
            for (Vertex v = 0; v < n; ++v) {
                if (!visited[static_cast<std::size_t>(v)] && inst.cost(cur, v) < nearest) {
                    nearest = inst.cost(cur, v);
                    next = v;
                }
            }
        }
        cur = next;
    }
    return Tour::from_order(inst, order);
}

namespace {

std::optional<RunResult> single_run(const Instance& inst, const ExperimentConfig& cfg, const CandidateSets& cands,
                                    std::optional<Cost> optimum, int run, const SearchObserver* observer) {
    const auto started = Clock::now();
    std::optional<Clock::time_point> deadline;
    if (cfg.time_limit) {
        deadline = started + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*cfg.time_limit));
    }
    const SearchConfig search = cfg.search_config();
    const Vertex n = inst.dimension();
    const std::size_t trials = cfg.trials_per_run.value_or(static_cast<std::size_t>(n));

    auto rng = run_rng(cfg.seed, run);
    std::vector<Vertex> initial(static_cast<std::size_t>(n));
    std::iota(initial.begin(), initial.end(), 0);
    std::shuffle(initial.begin(), initial.end(), rng);
    Tour next_best = Tour::from_order(inst, initial);
    std::optional<Tour> best;
    GainState state = init_state(search.effective_policy());

    std::size_t done = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        if (trial > 0 && deadline && Clock::now() >= *deadline) break;
        Tour start = trial == 0 ? next_best : restart_tour(*best, inst, cands, rng, &next_best);
        TrialOutcome outcome = run_trial(inst, std::move(start), search, cands, state, rng, deadline, observer);
        if (trial == 0 && !outcome.completed) return std::nullopt;
        ++done;
        if (!best) {
            best = std::move(outcome.tour);
        } else if (outcome.tour.cost() < best->cost()) {
            next_best = std::move(*best);
            best = std::move(outcome.tour);
        }
        if (cfg.stop_at_optimum && optimum && best->cost() <= *optimum) break;
    }

    RunResult result;
    result.cost = best->cost();
    result.seconds = std::chrono::duration<double>(Clock::now() - started).count();
    result.trials = done;
    result.tour = best->order();
    return result;
}

} // namespace

RunReport run_experiment(const Instance& inst, const ExperimentConfig& cfg, const CandidateSets& cands,
                         std::optional<Cost> optimum, const SearchObserver* observer) {
    cfg.validate();
    if (cands.size() != inst.dimension()) {
        throw Error(ErrorCode::InvalidConfig, "candidate sets do not match the instance");
    }
    std::vector<std::optional<RunResult>> results(static_cast<std::size_t>(cfg.runs));
    // Observers are not required to be thread-safe.
    const int workers = observer ? 1 : std::min(cfg.threads, cfg.runs);
    if (workers <= 1) {
        for (int r = 0; r < cfg.runs; ++r) {
            results[static_cast<std::size_t>(r)] = single_run(inst, cfg, cands, optimum, r, observer);
        }
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (int r = next++; r < cfg.runs; r = next++) {
                    try {
                        results[static_cast<std::size_t>(r)] = single_run(inst, cfg, cands, optimum, r, nullptr);
                    } catch (...) {
                        const std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    RunReport report;
    report.optimum = optimum;
    for (auto& r : results) {
        if (r) report.runs.push_back(std::move(*r));
    }
    if (report.runs.empty()) {
        throw Error(ErrorCode::NoRunCompleted, "time limit too short for a single trial");
    }
    report.cost_min = std::numeric_limits<Cost>::max();
    double cost_sum = 0.0, time_sum = 0.0;
    for (const auto& r : report.runs) {
        report.cost_min = std::min(report.cost_min, r.cost);
        cost_sum += static_cast<double>(r.cost);
        time_sum += r.seconds;
    }
    const auto count = static_cast<double>(report.runs.size());
    report.cost_avg = cost_sum / count;
    report.time_avg = time_sum / count;
    if (optimum) {
        report.gap_min = gap_percent(report.cost_min, *optimum);
        double gap_sum = 0.0;
        for (const auto& r : report.runs) gap_sum += gap_percent(r.cost, *optimum);
        report.gap_avg = gap_sum / count;
    }
    return report;
}

RunReport run_experiment(const Instance& inst, const ExperimentConfig& cfg) {
    cfg.validate();
    const auto started = Clock::now();
    const CandidateSets cands =
        build_candidate_sets(inst, cfg.candidate_kind, cfg.max_candidates, cfg.ascent_iterations);
    const double prep = std::chrono::duration<double>(Clock::now() - started).count();
    RunReport report = run_experiment(inst, cfg, cands, inst.known_optimum());
    report.preprocessing_seconds = prep;
    return report;
}

namespace {

std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

} // namespace

std::string format_report(const std::vector<ReportRow>& rows) {
    std::string out = kReportHeader;
    out += '\n';
    for (const auto& row : rows) {
        const RunReport& r = row.report;
        std::string ratio;
        for (const auto& base : rows) {
            if (base.policy == PolicyKind::Strict && base.problem == row.problem &&
                base.candidates == row.candidates && base.report.time_avg > 0.0) {
                ratio = fixed(100.0 * (r.time_avg / base.report.time_avg - 1.0), 1);
                break;
            }
        }
        out += row.problem;
        out += ';';
        out += to_string(row.policy);
        out += ';';
        out += to_string(row.candidates);
        out += ';';
        out += std::to_string(r.cost_min);
        out += ';';
        out += fixed(r.cost_avg, 2);
        out += ';';
        out += r.gap_min ? fixed(*r.gap_min, 3) : "";
        out += ';';
        out += r.gap_avg ? fixed(*r.gap_avg, 3) : "";
        out += ';';
        out += fixed(r.time_avg, 3);
        out += ';';
        out += ratio;
        out += '\n';
    }
    return out;
}

void write_report(const std::vector<ReportRow>& rows, const std::string& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::IoFailure, "cannot open " + path);
    file << format_report(rows);
    file.flush();
    if (!file) throw Error(ErrorCode::IoFailure, "write failed: " + path);
}

} // namespace lkgain
