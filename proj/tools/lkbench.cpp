// lkbench: run the Lin-Kernighan experiments over TSPLIB instances and emit
// the semicolon-separated summary table.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lkgain/bench.hpp"
#include "lkgain/error.hpp"
#include "lkgain/oracle.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<std::string> expand_instances(const std::vector<std::string>& paths) {
    std::vector<std::string> out;
    for (const auto& p : paths) {
        if (fs::is_directory(p)) {
            std::vector<std::string> found;
            for (const auto& entry : fs::directory_iterator(p)) {
                if (entry.is_regular_file() && entry.path().extension() == ".tsp") found.push_back(entry.path().string());
            }
            std::sort(found.begin(), found.end());
            if (found.empty()) throw lkgain::Error(lkgain::ErrorCode::IoFailure, "no .tsp files in " + p);
            out.insert(out.end(), found.begin(), found.end());
        } else {
            out.push_back(p);
        }
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lin-Kernighan benchmark driver"};

    std::vector<std::string> instances;
    std::string optima_path;
    std::string out_path;
    std::vector<std::string> criteria;
    std::string candidate_set = "alpha";
    std::optional<double> time_limit;
    std::optional<std::size_t> trials;
    bool use_oracle = false;
    lkgain::ExperimentConfig base;

    app.add_option("--instance", instances, "TSPLIB file or directory of .tsp files (repeatable)")->required();
    app.add_option("--optima", optima_path, "Optima registry: one 'name cost' per line");
    app.add_option("--runs", base.runs, "Independent runs per instance and criterion");
    app.add_option("--seed", base.seed, "Base seed");
    app.add_option("--max-candidates", base.max_candidates, "Candidate list length per vertex");
    app.add_option("--candidate-set", candidate_set, "Candidate ranking")
        ->check(CLI::IsMember({"alpha", "nearest"}));
    app.add_option("--gain-criterion", criteria, "strict, homogeneous or tilted (repeatable; default all three)")
        ->check(CLI::IsMember({"strict", "homogeneous", "tilted"}));
    app.add_option("--time-limit", time_limit, "Seconds per run, preprocessing excluded");
    app.add_flag("--stop-at-optimum", base.stop_at_optimum, "End a run once the known optimum is reached");
    app.add_option("--max-depth", base.max_depth, "Maximum number of exchanged edge pairs per move");
    app.add_option("--feasibility-period", base.feasibility_period, "Check tour feasibility every R steps");
    app.add_option("--trials", trials, "Trials per run (default: dimension)");
    app.add_option("--ascent-iterations", base.ascent_iterations, "Subgradient iterations for alpha candidates");
    app.add_option("--threads", base.threads, "Worker threads for independent runs");
    app.add_flag("--oracle", use_oracle, "Solve instances with n <= 16 exactly and report true gaps");
    app.add_option("--out", out_path, "CSV output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        base.time_limit = time_limit;
        base.trials_per_run = trials;
        base.candidate_kind = lkgain::parse_candidate_kind(candidate_set);
        if (criteria.empty()) criteria = {"strict", "homogeneous", "tilted"};
        std::vector<lkgain::PolicyKind> policies;
        for (const auto& c : criteria) policies.push_back(lkgain::parse_policy_kind(c));
        base.validate();

        lkgain::OptimaRegistry optima;
        if (!optima_path.empty()) optima = lkgain::load_optima(optima_path);

        std::vector<lkgain::ReportRow> rows;
        for (const auto& path : expand_instances(instances)) {
            lkgain::Instance inst = lkgain::load_tsplib(path);
            for (const auto& w : inst.warnings()) std::cerr << "lkbench: " << path << ": " << w << '\n';
            if (const auto it = optima.find(inst.name()); it != optima.end()) inst.set_known_optimum(it->second);
            if (use_oracle) {
                if (inst.dimension() <= lkgain::kHeldKarpMaxVertices) {
                    inst.set_known_optimum(lkgain::held_karp_optimum(inst).optimum);
                } else {
                    std::cerr << "lkbench: " << inst.name() << ": too large for the exact solver, skipped\n";
                }
            }

            const lkgain::CandidateSets cands = lkgain::build_candidate_sets(
                inst, base.candidate_kind, base.max_candidates, base.ascent_iterations);
            for (const auto policy : policies) {
                lkgain::ExperimentConfig cfg = base;
                cfg.policy = policy;
                rows.push_back({inst.name(), policy, cfg.candidate_kind,
                                lkgain::run_experiment(inst, cfg, cands, inst.known_optimum())});
            }
        }

        if (out_path.empty()) {
            std::cout << lkgain::format_report(rows);
        } else {
            lkgain::write_report(rows, out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "lkbench: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
