#pragma once

/// @file bench.hpp
/// @brief Runs/trials driver with restart tours, per-run seeding, time limits
/// and semicolon-separated CSV reports.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lkgain/candidates.hpp"
#include "lkgain/engine.hpp"

namespace lkgain {

struct ExperimentConfig {
    int runs = 10;
    int max_candidates = 5;
    CandidateKind candidate_kind = CandidateKind::Alpha;
    PolicyKind policy = PolicyKind::Strict;
    std::uint64_t seed = 1;
    /// Wall-clock budget per run in seconds, preprocessing excluded.
    std::optional<double> time_limit;
    bool stop_at_optimum = false;
    /// Defaults to the instance dimension.
    std::optional<std::size_t> trials_per_run;
    int max_depth = 5;
    int feasibility_period = 5;
    int backtrack_depth = 2;
    int ascent_iterations = 100;
    /// Worker threads for independent runs.
    int threads = 1;

    /// Throws InvalidConfig.
    void validate() const;
    [[nodiscard]] SearchConfig search_config() const;
};

struct RunResult {
    Cost cost = 0;
    double seconds = 0.0;
    std::size_t trials = 0;
    std::vector<Vertex> tour;
};

struct RunReport {
    /// Completed runs in run-index order.
    std::vector<RunResult> runs;
    Cost cost_min = 0;
    double cost_avg = 0.0;
    double time_avg = 0.0;
    std::optional<Cost> optimum;
    std::optional<double> gap_min;
    std::optional<double> gap_avg;
    double preprocessing_seconds = 0.0;
};

/// Independent generator for run `run` of an experiment seeded with `seed`.
std::mt19937_64 run_rng(std::uint64_t seed, int run);

/// 100 * (cost - optimum) / optimum.
[[nodiscard]] double gap_percent(Cost cost, Cost optimum) noexcept;

/// Greedy construction from a random start vertex. At each step it takes the
/// first candidate neighbour joined to the current vertex by an edge of `best`
/// (and of `next_best`, when given), else a random unvisited candidate
/// neighbour, else the nearest unvisited vertex.
Tour restart_tour(const Tour& best, const Instance& inst, const CandidateSets& cands, std::mt19937_64& rng,
                  const Tour* next_best = nullptr);

/// Uses prebuilt candidate sets; `optimum` enables gaps and stop_at_optimum.
/// Throws NoRunCompleted if no run finished its first trial in time.
RunReport run_experiment(const Instance& inst, const ExperimentConfig& cfg, const CandidateSets& cands,
                         std::optional<Cost> optimum, const SearchObserver* observer = nullptr);

/// Builds the candidate sets (timed as preprocessing) and takes the optimum
/// from the instance.
RunReport run_experiment(const Instance& inst, const ExperimentConfig& cfg);

struct ReportRow {
    std::string problem;
    PolicyKind policy = PolicyKind::Strict;
    CandidateKind candidates = CandidateKind::Alpha;
    RunReport report;
};

inline constexpr const char* kReportHeader =
    "Problem;Policy;Candidates;CostMin;CostAvg;GapMin;GapAvg;TimeAvg;TimeAvgRatio";

/// CSV text, header included. TimeAvgRatio = 100 * (TimeAvg / TimeAvg_strict - 1)
/// against the strict row with the same problem and candidates, blank without one.
std::string format_report(const std::vector<ReportRow>& rows);

/// Throws IoFailure.
void write_report(const std::vector<ReportRow>& rows, const std::string& path);

} // namespace lkgain
