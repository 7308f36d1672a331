#include "costaff/policies.hpp"

#include <cmath>

namespace costaff {

namespace {

int round_nearest(double x) {
    return static_cast<int>(std::floor(x + 0.5));
}

double stage2_cost(const StaffingPolicy& policy, double l, const CostParams& costs) {
    switch (policy.routing) {
        case RoutingMode::ThresholdFromDiffusion: {
            const Threshold t = realize_threshold_u(policy, l, policy.lambda, costs);
            StationaryModel model{l, policy.n, t, costs.gamma, costs.mu};
            return perf_measures(model, steady_state(model), costs).z;
        }
        case RoutingMode::OptimalPerRealization:
            return threshold_search(policy.n, l, costs).z_opt;
        case RoutingMode::NeverOutsource: {
            StationaryModel model{l, policy.n, Threshold::infinite(), costs.gamma, costs.mu};
            return perf_measures(model, steady_state(model), costs).z;
        }
        case RoutingMode::OutsourceAll:
            return costs.p * l;
    }
    return 0.0;
}

}  // namespace

double effective_abandon_cost(const CostParams& costs) {
    costs.validate();
    return costs.effective_abandon_cost();
}

RegimeDecision regime_guard(const CostParams& costs) {
    costs.validate();
    const double a_eff = costs.effective_abandon_cost();
    RegimeDecision d;
    if (costs.c >= std::min(a_eff, costs.p)) {
        d.mandated_staffing = 0;
        if (a_eff > costs.p) {
            d.regime = Regime::CompleteOutsourcing;
            d.mandated_routing = RoutingMode::OutsourceAll;
        } else {
            d.regime = Regime::NoOperation;
            d.mandated_routing = RoutingMode::NeverOutsource;  // all calls abandon
        }
        return d;
    }
    if (a_eff <= costs.p) {
        d.regime = Regime::NoOutsourcing;
        d.mandated_routing = RoutingMode::NeverOutsource;
        return d;
    }
    d.regime = Regime::CoSourcing;
    return d;
}

StaffingPolicy make_policy_u(const ArrivalDistribution& dist, const CostParams& costs,
                             const QuadratureRule& rule) {
    const StandardizedDistribution sd = standardize(dist);
    const BetaSolution bs = beta_star(sd, costs, rule);
    StaffingPolicy policy;
    policy.kind = PolicyKind::U;
    policy.beta = bs.beta_star;
    policy.lambda = sd.center;
    policy.n = std::max(0, round_nearest(sd.center + bs.beta_star * sd.scale));
    policy.routing = RoutingMode::ThresholdFromDiffusion;
    return policy;
}

Threshold realize_threshold_u(const StaffingPolicy& policy_u, double l, double lambda,
                              const CostParams& costs) {
    if (l < 0.0) {
        throw Error("realized arrival rate must be non-negative");
    }
    if (costs.effective_abandon_cost() <= costs.p) {
        return Threshold::infinite();
    }
    const double x = (l - lambda) / std::sqrt(lambda);
    const double t_hat = that_star(policy_u.beta.value() - x, costs);
    return Threshold::finite(policy_u.n + round_nearest(t_hat * std::sqrt(l)));
}

StaffingPolicy make_policy_d(const ArrivalDistribution& dist, const CostParams& costs) {
    const double lambda = dist.mean();
    if (lambda <= 0.0) {
        throw ZeroMeanError("policy D requires a positive mean arrival rate");
    }
    // beta_1* from the deterministic diffusion objective (X identically 0).
    const ArrivalDistribution point = ArrivalDistribution::degenerate(lambda);
    const StandardizedDistribution sd = standardize(point);
    const BetaSolution bs = beta_star(sd, costs, make_quadrature(point, 1));
    StaffingPolicy policy;
    policy.kind = PolicyKind::D;
    policy.beta = bs.beta_star;
    policy.lambda = lambda;
    policy.n = std::max(0, round_nearest(lambda + bs.beta_star * std::sqrt(lambda)));
    policy.routing = RoutingMode::OptimalPerRealization;
    return policy;
}

StaffingPolicy make_policy_nv(const ArrivalDistribution& dist, const CostParams& costs) {
    costs.validate();
    const double underage_base = std::min(costs.effective_abandon_cost(), costs.p);
    if (costs.c >= underage_base) {
        throw InvalidRegimeError("newsvendor ratio is non-positive; regime_guard applies");
    }
    const double ratio = (underage_base - costs.c) / underage_base;
    StaffingPolicy policy;
    policy.kind = PolicyKind::NV;
    policy.lambda = dist.mean();
    policy.n = std::max(0, round_nearest(dist.inverse_cdf(ratio)));
    policy.routing = RoutingMode::OptimalPerRealization;
    return policy;
}

double evaluate_policy(const StaffingPolicy& policy, [[maybe_unused]] const ArrivalDistribution& dist,
                       const CostParams& costs, const QuadratureRule& rule) {
    costs.validate();
    const double stage2 = expect([&](double l) { return stage2_cost(policy, l, costs); }, rule);
    return costs.c * policy.n + stage2;
}

ComparisonReport compare_policies(const ArrivalDistribution& dist, const CostParams& costs,
                                  const QuadratureRule& rule, const SearchOptions& options) {
    ComparisonReport report;
    report.exact = optimal_staffing(dist, costs, rule, options);
    const StaffingPolicy policies[] = {make_policy_u(dist, costs, rule),
                                       make_policy_d(dist, costs),
                                       make_policy_nv(dist, costs)};
    for (const StaffingPolicy& policy : policies) {
        PolicyReportRow row;
        row.policy = policy;
        row.expected_cost = evaluate_policy(policy, dist, costs, rule);
        row.staffing_error = report.exact.n_opt - policy.n;
        row.pct_cost_error =
            100.0 * (row.expected_cost - report.exact.c_opt) / report.exact.c_opt;
        report.rows.push_back(row);
    }
    return report;
}

std::string to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::U: return "u";
        case PolicyKind::D: return "d";
        case PolicyKind::NV: return "nv";
        case PolicyKind::Opt: return "opt";
        case PolicyKind::Custom: return "custom";
    }
    return "?";
}

std::string to_string(RoutingMode mode) {
    switch (mode) {
        case RoutingMode::ThresholdFromDiffusion: return "threshold-from-diffusion";
        case RoutingMode::OptimalPerRealization: return "optimal-per-realization";
        case RoutingMode::NeverOutsource: return "never-outsource";
        case RoutingMode::OutsourceAll: return "outsource-all";
    }
    return "?";
}

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::CoSourcing: return "co-sourcing";
        case Regime::CompleteOutsourcing: return "complete-outsourcing";
        case Regime::NoOutsourcing: return "no-outsourcing";
        case Regime::NoOperation: return "no-operation";
    }
    return "?";
}

}  // namespace costaff
