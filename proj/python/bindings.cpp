#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lkgain/bench.hpp"
#include "lkgain/error.hpp"
#include "lkgain/oracle.hpp"

namespace py = pybind11;
using namespace lkgain;

namespace {

WeightKind parse_weight_kind(const std::string& text) {
    for (auto k : {WeightKind::Euc2D, WeightKind::Ceil2D, WeightKind::Geo, WeightKind::Att}) {
        if (to_string(k) == text) return k;
    }
    throw Error(ErrorCode::UnsupportedWeightType, text);
}

Tour make_tour(const Instance& inst, const std::vector<Vertex>& order) { return Tour::from_order(inst, order); }

py::dict report_dict(const RunReport& r) {
    py::dict d;
    py::list runs;
    for (const auto& run : r.runs) {
        py::dict rd;
        rd["cost"] = run.cost;
        rd["seconds"] = run.seconds;
        rd["trials"] = run.trials;
        rd["tour"] = run.tour;
        runs.append(rd);
    }
    d["runs"] = runs;
    d["cost_min"] = r.cost_min;
    d["cost_avg"] = r.cost_avg;
    d["time_avg"] = r.time_avg;
    d["optimum"] = r.optimum;
    d["gap_min"] = r.gap_min;
    d["gap_avg"] = r.gap_avg;
    d["preprocessing_seconds"] = r.preprocessing_seconds;
    return d;
}

} // namespace

PYBIND11_MODULE(_lkgain, m) {
    m.doc() = "Lin-Kernighan TSP heuristic with selectable gain criteria";

    py::register_exception<Error>(m, "LkgainError", PyExc_ValueError);

    py::enum_<PolicyKind>(m, "PolicyKind")
        .value("STRICT", PolicyKind::Strict)
        .value("HOMOGENEOUS", PolicyKind::Homogeneous)
        .value("TILTED", PolicyKind::Tilted);
    py::enum_<CandidateKind>(m, "CandidateKind")
        .value("ALPHA", CandidateKind::Alpha)
        .value("NEAREST", CandidateKind::Nearest);

    py::class_<Instance>(m, "Instance")
        .def_static(
            "from_coords",
            [](std::string name, const std::string& kind, const std::vector<std::pair<double, double>>& pts,
               std::optional<Cost> optimum) {
                std::vector<Point> coords;
                for (const auto& [x, y] : pts) coords.push_back({x, y});
                return Instance::from_coords(std::move(name), parse_weight_kind(kind), std::move(coords), optimum);
            },
            py::arg("name"), py::arg("kind"), py::arg("coords"), py::arg("optimum") = std::nullopt)
        .def_static(
            "from_matrix",
            [](std::string name, const std::vector<std::vector<Cost>>& rows, std::optional<Cost> optimum) {
                std::vector<Cost> flat;
                for (const auto& row : rows) {
                    if (row.size() != rows.size()) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
                    flat.insert(flat.end(), row.begin(), row.end());
                }
                return Instance::from_matrix(std::move(name), std::move(flat), optimum);
            },
            py::arg("name"), py::arg("matrix"), py::arg("optimum") = std::nullopt)
        .def_property_readonly("name", &Instance::name)
        .def_property_readonly("dimension", &Instance::dimension)
        .def_property("known_optimum", &Instance::known_optimum, &Instance::set_known_optimum)
        .def_property_readonly("warnings", &Instance::warnings)
        .def("cost", &Instance::edge_cost, py::arg("i"), py::arg("j"))
        .def("tour_cost", [](const Instance& inst, const std::vector<Vertex>& order) { return tour_cost(inst, order); })
        .def("to_tsplib", [](const Instance& inst) { return to_tsplib(inst); });

    m.def("parse_tsplib", [](const std::string& text) { return parse_tsplib(text); }, py::arg("text"));
    m.def("load_tsplib", &load_tsplib, py::arg("path"));
    m.def("load_optima", &load_optima, py::arg("path"));

    m.def(
        "held_karp_optimum",
        [](const Instance& inst) {
            auto r = held_karp_optimum(inst);
            return py::make_tuple(r.optimum, r.witness_tour);
        },
        py::arg("instance"), "Exact optimum and an optimal tour for n <= 16.");

    py::class_<CandidateSets>(m, "CandidateSets")
        .def("__len__", &CandidateSets::size)
        .def("__getitem__",
             [](const CandidateSets& c, Vertex v) {
                 if (v < 0 || v >= c.size()) throw py::index_error();
                 std::vector<std::pair<Vertex, std::int64_t>> out;
                 for (const auto& cand : c[v]) out.emplace_back(cand.to, cand.rank_key);
                 return out;
             })
        .def("contains", &CandidateSets::contains, py::arg("frm"), py::arg("to"));

    m.def("build_candidate_sets", &build_candidate_sets, py::arg("instance"), py::arg("kind") = CandidateKind::Alpha,
          py::arg("max_candidates") = 5, py::arg("ascent_iterations") = 100);

    m.def(
        "admits",
        [](PolicyKind kind, const std::vector<Gain>& ledger, Gain g_i, int k_period, bool g0_positive) {
            GainPolicy p{kind, k_period};
            GainState s = init_state(p);
            s.g0_positive = g0_positive;
            return admits(p, s, ledger, g_i);
        },
        py::arg("policy"), py::arg("ledger"), py::arg("g_i"), py::arg("k_period") = 5, py::arg("g0_positive") = true,
        "Whether the policy accepts partial gain g_i after the given ledger.");

    m.def(
        "improve_from_vertex",
        [](const Instance& inst, const std::vector<Vertex>& order, Vertex t1, PolicyKind policy,
           const CandidateSets& cands, int max_depth, int backtrack_depth) -> py::object {
            SearchConfig cfg;
            cfg.max_depth = max_depth;
            cfg.backtrack_depth = backtrack_depth;
            cfg.policy.kind = policy;
            cfg.validate();
            GainState state = init_state(cfg.effective_policy());
            auto imp = improve_from_vertex(inst, make_tour(inst, order), t1, cfg, cands, state);
            if (!imp) return py::none();
            py::dict d;
            d["tour"] = imp->tour.order();
            d["cost"] = imp->tour.cost();
            d["gain"] = imp->gain;
            d["t"] = imp->move.t;
            d["ledger"] = imp->move.ledger;
            return d;
        },
        py::arg("instance"), py::arg("tour"), py::arg("t1"), py::arg("policy"), py::arg("candidates"),
        py::arg("max_depth") = 5, py::arg("backtrack_depth") = 2,
        "One improving exchange starting at t1, or None.");

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("runs", &ExperimentConfig::runs)
        .def_readwrite("max_candidates", &ExperimentConfig::max_candidates)
        .def_readwrite("candidate_kind", &ExperimentConfig::candidate_kind)
        .def_readwrite("policy", &ExperimentConfig::policy)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("time_limit", &ExperimentConfig::time_limit)
        .def_readwrite("stop_at_optimum", &ExperimentConfig::stop_at_optimum)
        .def_readwrite("trials_per_run", &ExperimentConfig::trials_per_run)
        .def_readwrite("max_depth", &ExperimentConfig::max_depth)
        .def_readwrite("feasibility_period", &ExperimentConfig::feasibility_period)
        .def_readwrite("backtrack_depth", &ExperimentConfig::backtrack_depth)
        .def_readwrite("ascent_iterations", &ExperimentConfig::ascent_iterations)
        .def_readwrite("threads", &ExperimentConfig::threads)
        .def("validate", &ExperimentConfig::validate);

    m.def(
        "run_experiment",
        [](const Instance& inst, const ExperimentConfig& cfg) {
            RunReport r;
            {
                py::gil_scoped_release release;
                r = run_experiment(inst, cfg);
            }
            return report_dict(r);
        },
        py::arg("instance"), py::arg("config"),
        "Runs the experiment; gaps use the instance's known optimum when set.");

    m.attr("REPORT_HEADER") = kReportHeader;
}
