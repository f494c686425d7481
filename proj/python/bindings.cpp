#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "seqdef/attack.hpp"
#include "seqdef/config.hpp"
#include "seqdef/degree_model.hpp"
#include "seqdef/errors.hpp"
#include "seqdef/experiments.hpp"
#include "seqdef/percolation.hpp"
#include "seqdef/philox.hpp"
#include "seqdef/robust_design.hpp"
#include "seqdef/sprt.hpp"

namespace py = pybind11;
using namespace seqdef;

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Percolation thresholds and sequential attack detection";

    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    py::class_<MomentSummary>(m, "MomentSummary")
        .def_readonly("mean_degree", &MomentSummary::mean_degree)
        .def_readonly("second_moment", &MomentSummary::second_moment)
        .def_readonly("tau", &MomentSummary::tau);

    py::class_<DegreeModel>(m, "DegreeModel")
        .def_static("erdos_renyi", &DegreeModel::erdos_renyi, py::arg("mean_degree"),
                    py::arg("k_min") = kDefaultMinDegree, py::arg("k_max") = kDefaultMaxDegree,
                    py::arg("n") = kDefaultNodeCount)
        .def_static("power_law", &DegreeModel::power_law, py::arg("alpha"),
                    py::arg("k_min") = kDefaultMinDegree, py::arg("k_max") = kDefaultMaxDegree,
                    py::arg("n") = kDefaultNodeCount)
        .def_static("exponential", &DegreeModel::exponential, py::arg("beta"),
                    py::arg("k_min") = kDefaultMinDegree, py::arg("k_max") = kDefaultMaxDegree,
                    py::arg("n") = kDefaultNodeCount)
        .def_static("empirical", &DegreeModel::empirical, py::arg("histogram"),
                    py::arg("n") = kDefaultNodeCount)
        .def_property_readonly("k_min", &DegreeModel::k_min)
        .def_property_readonly("k_max", &DegreeModel::k_max)
        .def_property_readonly("n", &DegreeModel::n)
        .def_property_readonly("name", &DegreeModel::name);

    m.def("moments", &moments);
    m.def("giant_component_exists", &giant_component_exists);
    m.def("thin", py::overload_cast<const DegreeModel&, double>(&thin), py::arg("model"),
          py::arg("q"));
    m.def("sample_degree_sequence", &sample_degree_sequence, py::arg("model"), py::arg("n"),
          py::arg("seed"));
    m.def("qc_random", [](const DegreeModel& model) { return qc_random(model).qc; });
    m.def(
        "qc_intentional",
        [](const DegreeModel& model, bool exact_exponential) {
            return qc_intentional(model, {exact_exponential}).qc;
        },
        py::arg("model"), py::arg("exact_exponential") = false);
    m.def("cutoff_degree", &cutoff_degree, py::arg("model"), py::arg("q"));
    m.def("report_budget", &report_budget, py::arg("n"), py::arg("fraction"));

    py::class_<DetectorProfile>(m, "DetectorProfile")
        .def(py::init<double, double>(), py::arg("p_d"), py::arg("p_f"))
        .def_readonly("p_d", &DetectorProfile::p_d)
        .def_readonly("p_f", &DetectorProfile::p_f);
    py::class_<RiskBudget>(m, "RiskBudget")
        .def(py::init<double, double>(), py::arg("delta") = 0.01, py::arg("theta") = 0.001)
        .def_property_readonly("log_a", &RiskBudget::log_a)
        .def_property_readonly("log_b", &RiskBudget::log_b);

    m.def("normal_cdf", &normal_cdf);
    m.def("expected_reports_random", &expected_reports_random, py::arg("q"), py::arg("detector"),
          py::arg("risk"));
    m.def("expected_reports_intentional", &expected_reports_intentional, py::arg("detector"),
          py::arg("risk"));
    m.def(
        "worst_case_bounds",
        [](double q, const DetectorProfile& d, const RiskBudget& r, std::uint64_t mc) {
            const auto b = worst_case_bounds(q, d, r, mc);
            py::dict out;
            out["accept_lower_bound"] = b.accept_lower_bound;
            out["reject_lower_bound"] = b.reject_lower_bound;
            out["delta_at_mc"] = b.delta_at_mc;
            out["theta_at_mc"] = b.theta_at_mc;
            return out;
        },
        py::arg("q_effective"), py::arg("detector"), py::arg("risk"), py::arg("mc"));
    m.def(
        "simulate_detection",
        [](const std::string& scheme, double q, std::uint64_t n, const DetectorProfile& d,
           const RiskBudget& r, std::uint64_t mc, std::uint64_t trials, std::uint64_t seed,
           bool attack) {
            const AttackPlan plan(parse_attack_kind(scheme), q, n);
            const auto s = simulate_detection(plan, d, r, mc, trials, seed,
                                              attack ? Hypothesis::Attack : Hypothesis::Null);
            py::dict out;
            out["mean_stop_index"] = s.mean_stop_index;
            out["accept_attack_freq"] = s.accept_attack_freq;
            out["accept_null_freq"] = s.accept_null_freq;
            out["truncated_freq"] = s.truncated_freq;
            return out;
        },
        py::arg("scheme"), py::arg("q"), py::arg("n"), py::arg("detector"), py::arg("risk"),
        py::arg("mc"), py::arg("trials"), py::arg("seed"), py::arg("attack") = true);

    m.def("feasible", &feasible, py::arg("detector"), py::arg("risk"), py::arg("mc"));
    m.def(
        "min_detection",
        [](double p_f, const RiskBudget& r, std::uint64_t mc) { return min_detection(p_f, r, mc).p_d_min; },
        py::arg("p_f"), py::arg("risk"), py::arg("mc"));

    m.def(
        "philox_u64",
        [](std::uint64_t seed, std::uint64_t stream, std::size_t count) {
            RandomStream rng(seed, stream);
            std::vector<std::uint64_t> out(count);
            for (auto& v : out) v = rng.next_u64();
            return out;
        },
        py::arg("seed"), py::arg("stream"), py::arg("count"));

    m.def(
        "estimate_qc_generated",
        [](const DegreeModel& model, std::uint64_t n, std::uint64_t seed, std::size_t trials) {
            const auto g = generate(model, n, seed);
            return estimate_qc(g.graph, RemovalScheme::Random, trials, seed).qc;
        },
        py::arg("model"), py::arg("n"), py::arg("seed"), py::arg("trials") = 1);

    m.def(
        "run_command",
        [](const std::string& command, const std::map<std::string, std::string>& settings) {
            ExperimentConfig config;
            for (const auto& [key, value] : settings) set_config_value(config, key, value);
            config.command = command;
            std::ostringstream out;
            run_command(config, out);
            return out.str();
        },
        py::arg("command"), py::arg("settings") = std::map<std::string, std::string>{});
}
