#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "costaff/arrival.hpp"
#include "costaff/diffusion.hpp"
#include "costaff/exact_search.hpp"
#include "costaff/policies.hpp"
#include "costaff/queue_core.hpp"
#include "costaff/report.hpp"
#include "costaff/simulator.hpp"

namespace py = pybind11;
using namespace costaff;

namespace {

// Thresholds cross the boundary as int-or-None (None = infinite).
std::optional<int> threshold_out(const Threshold& t) {
    if (t.is_infinite) return std::nullopt;
    return t.value;
}

Threshold threshold_in(const std::optional<int>& t) {
    return t ? Threshold::finite(*t) : Threshold::infinite();
}

}  // namespace

PYBIND11_MODULE(_costaff, m) {
    m.doc() = "Staffing and threshold-outsourcing policies for Erlang-A systems "
              "with an uncertain arrival rate";

    py::register_exception<Error>(m, "CostaffError", PyExc_ValueError);

    py::class_<ArrivalDistribution>(m, "ArrivalDistribution")
        .def_static("degenerate", &ArrivalDistribution::degenerate, py::arg("value"))
        .def_static("uniform", &ArrivalDistribution::uniform, py::arg("lo"), py::arg("hi"))
        .def_static("scaled_beta", &ArrivalDistribution::scaled_beta, py::arg("alpha1"),
                    py::arg("alpha2"), py::arg("lo"), py::arg("hi"))
        .def_property_readonly("lo", &ArrivalDistribution::lo)
        .def_property_readonly("hi", &ArrivalDistribution::hi)
        .def("mean", &ArrivalDistribution::mean)
        .def("variance", &ArrivalDistribution::variance)
        .def("coefficient_of_variation", &ArrivalDistribution::coefficient_of_variation)
        .def("cdf", &ArrivalDistribution::cdf, py::arg("x"))
        .def("inverse_cdf", &ArrivalDistribution::inverse_cdf, py::arg("q"))
        .def("skewness", &ArrivalDistribution::skewness);

    py::class_<QuadratureRule>(m, "QuadratureRule")
        .def_readonly("nodes", &QuadratureRule::nodes)
        .def_readonly("weights", &QuadratureRule::weights)
        .def("size", &QuadratureRule::size);

    m.def("make_quadrature", &make_quadrature, py::arg("dist"),
          py::arg("n") = kDefaultQuadratureNodes);

    py::class_<CostParams>(m, "CostParams")
        .def(py::init([](double c, double p, double a, double w, double gamma, double mu) {
                 CostParams cp{c, p, a, w, gamma, mu};
                 cp.validate();
                 return cp;
             }),
             py::arg("c") = 0.1, py::arg("p") = 1.0, py::arg("a") = 5.0, py::arg("w") = 0.0,
             py::arg("gamma") = 1.0, py::arg("mu") = 1.0)
        .def_readwrite("c", &CostParams::c)
        .def_readwrite("p", &CostParams::p)
        .def_readwrite("a", &CostParams::a)
        .def_readwrite("w", &CostParams::w)
        .def_readwrite("gamma", &CostParams::gamma)
        .def_readwrite("mu", &CostParams::mu)
        .def("effective_abandon_cost", &CostParams::effective_abandon_cost);

    py::class_<PerformanceMeasures>(m, "PerformanceMeasures")
        .def_readonly("p_out", &PerformanceMeasures::p_out)
        .def_readonly("p_ab", &PerformanceMeasures::p_ab)
        .def_readonly("q_bar", &PerformanceMeasures::q_bar)
        .def_readonly("s_bar", &PerformanceMeasures::s_bar)
        .def_readonly("z", &PerformanceMeasures::z);

    m.def(
        "analyze",
        [](double l, int n, std::optional<int> t, const CostParams& costs) {
            StationaryModel model{l, n, threshold_in(t), costs.gamma, costs.mu};
            return perf_measures(model, steady_state(model), costs);
        },
        py::arg("l"), py::arg("n"), py::arg("t"), py::arg("costs") = CostParams{},
        "Exact stationary performance of the realized M/M/N/T+M chain");

    m.def(
        "stationary_probs",
        [](double l, int n, std::optional<int> t, double gamma, double mu) {
            StationaryModel model{l, n, threshold_in(t), gamma, mu};
            return steady_state(model).probs;
        },
        py::arg("l"), py::arg("n"), py::arg("t"), py::arg("gamma") = 1.0, py::arg("mu") = 1.0);

    m.def(
        "threshold_search",
        [](int n, double l, const CostParams& costs) {
            const ThresholdSearchResult r = threshold_search(n, l, costs);
            return py::make_tuple(threshold_out(r.t_opt), r.z_opt, r.cap_reached);
        },
        py::arg("n"), py::arg("l"), py::arg("costs") = CostParams{},
        "Optimal admission threshold for fixed (N, l): (t_or_None, z, cap_reached)");

    py::class_<MdpSolution>(m, "MdpSolution")
        .def_readonly("admit", &MdpSolution::admit)
        .def_readonly("average_cost", &MdpSolution::average_cost)
        .def("is_threshold_policy", &MdpSolution::is_threshold_policy)
        .def("threshold", &MdpSolution::threshold);

    m.def("mdp_oracle", &mdp_oracle, py::arg("n"), py::arg("l"), py::arg("costs"),
          py::arg("state_cap"));

    m.def("zhat", &zhat, py::arg("m"), py::arg("t_hat"), py::arg("p"), py::arg("a_eff"),
          py::arg("gamma"));
    m.def("zhat_inf", &zhat_inf, py::arg("m"), py::arg("a_eff"), py::arg("gamma"));
    m.def("that_star", &that_star, py::arg("m"), py::arg("costs") = CostParams{});
    m.def("zhat_min", &zhat_min, py::arg("m"), py::arg("costs") = CostParams{});

    py::class_<BetaSolution>(m, "BetaSolution")
        .def_readonly("beta_star", &BetaSolution::beta_star)
        .def_readonly("value", &BetaSolution::value)
        .def_readonly("bracket_lo", &BetaSolution::bracket_lo)
        .def_readonly("bracket_hi", &BetaSolution::bracket_hi);

    m.def(
        "beta_star",
        [](const ArrivalDistribution& dist, const CostParams& costs, int nodes) {
            return beta_star(standardize(dist), costs, make_quadrature(dist, nodes));
        },
        py::arg("dist"), py::arg("costs") = CostParams{},
        py::arg("nodes") = kDefaultQuadratureNodes);

    m.def(
        "approx_total_cost",
        [](double n, const ArrivalDistribution& dist, const CostParams& costs, int nodes) {
            return approx_total_cost(n, dist, costs, make_quadrature(dist, nodes));
        },
        py::arg("n"), py::arg("dist"), py::arg("costs") = CostParams{},
        py::arg("nodes") = kDefaultQuadratureNodes);

    py::class_<StaffingCostPoint>(m, "StaffingCostPoint")
        .def_readonly("n", &StaffingCostPoint::n)
        .def_readonly("expected_cost", &StaffingCostPoint::expected_cost)
        .def_readonly("cap_reached", &StaffingCostPoint::cap_reached);

    py::class_<ExactSolution>(m, "ExactSolution")
        .def_readonly("n_opt", &ExactSolution::n_opt)
        .def_readonly("c_opt", &ExactSolution::c_opt)
        .def_readonly("curve", &ExactSolution::curve)
        .def_readonly("n_max", &ExactSolution::n_max);

    m.def(
        "expected_cost_for_staffing",
        [](int n, const ArrivalDistribution& dist, const CostParams& costs, int nodes) {
            return expected_cost_for_staffing(n, dist, costs, make_quadrature(dist, nodes));
        },
        py::arg("n"), py::arg("dist"), py::arg("costs") = CostParams{},
        py::arg("nodes") = kDefaultQuadratureNodes);

    m.def(
        "optimal_staffing",
        [](const ArrivalDistribution& dist, const CostParams& costs, int nodes,
           std::optional<int> n_max, bool fast) {
            return optimal_staffing(dist, costs, make_quadrature(dist, nodes), {n_max, fast});
        },
        py::arg("dist"), py::arg("costs") = CostParams{},
        py::arg("nodes") = kDefaultQuadratureNodes, py::arg("n_max") = std::nullopt,
        py::arg("fast") = false);

    py::class_<StaffingPolicy>(m, "StaffingPolicy")
        .def_property_readonly("kind",
                               [](const StaffingPolicy& p) { return to_string(p.kind); })
        .def_readonly("n", &StaffingPolicy::n)
        .def_readonly("beta", &StaffingPolicy::beta)
        .def_property_readonly("routing",
                               [](const StaffingPolicy& p) { return to_string(p.routing); })
        .def_readonly("lambda_", &StaffingPolicy::lambda);

    m.def(
        "policy_u",
        [](const ArrivalDistribution& dist, const CostParams& costs, int nodes) {
            return make_policy_u(dist, costs, make_quadrature(dist, nodes));
        },
        py::arg("dist"), py::arg("costs") = CostParams{},
        py::arg("nodes") = kDefaultQuadratureNodes);
    m.def("policy_d", &make_policy_d, py::arg("dist"), py::arg("costs") = CostParams{});
    m.def("policy_nv", &make_policy_nv, py::arg("dist"), py::arg("costs") = CostParams{});

    m.def(
        "realize_threshold_u",
        [](const StaffingPolicy& policy, double l, const CostParams& costs) {
            return threshold_out(realize_threshold_u(policy, l, policy.lambda, costs));
        },
        py::arg("policy"), py::arg("l"), py::arg("costs") = CostParams{});

    m.def(
        "evaluate_policy",
        [](const StaffingPolicy& policy, const ArrivalDistribution& dist,
           const CostParams& costs, int nodes) {
            return evaluate_policy(policy, dist, costs, make_quadrature(dist, nodes));
        },
        py::arg("policy"), py::arg("dist"), py::arg("costs") = CostParams{},
        py::arg("nodes") = kDefaultQuadratureNodes);

    py::class_<PolicyReportRow>(m, "PolicyReportRow")
        .def_readonly("policy", &PolicyReportRow::policy)
        .def_readonly("expected_cost", &PolicyReportRow::expected_cost)
        .def_readonly("staffing_error", &PolicyReportRow::staffing_error)
        .def_readonly("pct_cost_error", &PolicyReportRow::pct_cost_error);

    py::class_<ComparisonReport>(m, "ComparisonReport")
        .def_readonly("exact", &ComparisonReport::exact)
        .def_readonly("rows", &ComparisonReport::rows);

    m.def(
        "compare_policies",
        [](const ArrivalDistribution& dist, const CostParams& costs, int nodes) {
            return compare_policies(dist, costs, make_quadrature(dist, nodes));
        },
        py::arg("dist"), py::arg("costs") = CostParams{},
        py::arg("nodes") = kDefaultQuadratureNodes);

    m.def(
        "regime_guard",
        [](const CostParams& costs) {
            const RegimeDecision d = regime_guard(costs);
            py::dict out;
            out["regime"] = to_string(d.regime);
            out["mandated_staffing"] =
                d.mandated_staffing ? py::cast(*d.mandated_staffing) : py::none();
            out["mandated_routing"] =
                d.mandated_routing ? py::cast(to_string(*d.mandated_routing)) : py::none();
            return out;
        },
        py::arg("costs") = CostParams{});

    m.def("effective_abandon_cost", &effective_abandon_cost, py::arg("costs"));

    py::class_<Estimate>(m, "Estimate")
        .def_readonly("value", &Estimate::value)
        .def_readonly("half_width", &Estimate::half_width);

    py::class_<SimEstimate>(m, "SimEstimate")
        .def_readonly("p_out", &SimEstimate::p_out)
        .def_readonly("p_ab", &SimEstimate::p_ab)
        .def_readonly("q_bar", &SimEstimate::q_bar)
        .def_readonly("z", &SimEstimate::z)
        .def_readonly("arrivals", &SimEstimate::arrivals)
        .def_readonly("admitted", &SimEstimate::admitted)
        .def_readonly("outsourced", &SimEstimate::outsourced)
        .def_readonly("served", &SimEstimate::served)
        .def_readonly("abandoned", &SimEstimate::abandoned)
        .def_readonly("in_system_end", &SimEstimate::in_system_end);

    m.def(
        "simulate",
        [](double l, int n, std::optional<int> t, const CostParams& costs, double horizon,
           double warmup, int batches, std::uint64_t seed) {
            SimConfig config;
            config.model = {l, n, threshold_in(t), costs.gamma, costs.mu};
            config.costs = costs;
            config.horizon = horizon;
            config.warmup = warmup;
            config.batches = batches;
            config.seed = seed;
            return simulate(config);
        },
        py::arg("l"), py::arg("n"), py::arg("t"), py::arg("costs") = CostParams{},
        py::arg("horizon") = 1e5, py::arg("warmup") = 1e4, py::arg("batches") = 20,
        py::arg("seed") = 1);

    m.def("reproduce_table", &reproduce_table, py::arg("id"),
          py::arg("nodes") = kReproduceNodes,
          "CSV text for one of the bundled studies");
    m.def("reproduce_table_ids", &reproduce_table_ids);
}
