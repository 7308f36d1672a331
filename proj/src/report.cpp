#include "costaff/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace costaff {

using nlohmann::json;

namespace {

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw ConfigError(std::string("missing or non-numeric field '") + key + "'");
    }
    return j[key].get<double>();
}

std::string format(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

}  // namespace

ArrivalDistribution dist_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw ConfigError("distribution literal needs a string 'kind'");
    }
    const std::string kind = j["kind"].get<std::string>();
    try {
        if (kind == "degenerate") {
            return ArrivalDistribution::degenerate(require_number(j, "value"));
        }
        if (kind == "uniform") {
            return ArrivalDistribution::uniform(require_number(j, "lo"), require_number(j, "hi"));
        }
        if (kind == "beta") {
            return ArrivalDistribution::scaled_beta(require_number(j, "alpha1"),
                                                    require_number(j, "alpha2"),
                                                    require_number(j, "lo"),
                                                    require_number(j, "hi"));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown distribution kind '" + kind + "'");
}

json dist_to_json(const ArrivalDistribution& dist) {
    switch (dist.kind()) {
        case DistKind::Degenerate: return {{"kind", "degenerate"}, {"value", dist.lo()}};
        case DistKind::Uniform: return {{"kind", "uniform"}, {"lo", dist.lo()}, {"hi", dist.hi()}};
        case DistKind::ScaledBeta:
            return {{"kind", "beta"},
                    {"alpha1", dist.alpha1()},
                    {"alpha2", dist.alpha2()},
                    {"lo", dist.lo()},
                    {"hi", dist.hi()}};
    }
    return {};
}

RunConfig parse_run_config(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("run configuration must be a JSON object");
    }
    RunConfig config;
    if (j.contains("distribution")) {
        config.dist = dist_from_json(j["distribution"]);
    }
    if (j.contains("costs")) {
        const json& c = j["costs"];
        if (!c.is_object()) throw ConfigError("'costs' must be an object");
        if (c.contains("c")) config.costs.c = require_number(c, "c");
        if (c.contains("p")) config.costs.p = require_number(c, "p");
        if (c.contains("a")) config.costs.a = require_number(c, "a");
        if (c.contains("w")) config.costs.w = require_number(c, "w");
        if (c.contains("gamma")) config.costs.gamma = require_number(c, "gamma");
        if (c.contains("mu")) config.costs.mu = require_number(c, "mu");
    }
    try {
        config.costs.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    if (j.contains("quadrature_nodes")) {
        config.quad_nodes = static_cast<int>(require_number(j, "quadrature_nodes"));
        if (config.quad_nodes < 1) throw ConfigError("quadrature_nodes must be >= 1");
    }
    if (j.contains("n_max")) {
        config.n_max = static_cast<int>(require_number(j, "n_max"));
        if (*config.n_max < 0) throw ConfigError("n_max must be >= 0");
    }
    if (j.contains("fast")) {
        if (!j["fast"].is_boolean()) throw ConfigError("'fast' must be boolean");
        config.fast = j["fast"].get<bool>();
    }
    if (j.contains("label")) {
        if (!j["label"].is_string()) throw ConfigError("'label' must be a string");
        config.label = j["label"].get<std::string>();
    }
    if (j.contains("output")) {
        if (!j["output"].is_string()) throw ConfigError("'output' must be a string");
        config.output = j["output"].get<std::string>();
    }
    if (j.contains("n_grid")) {
        const json& g = j["n_grid"];
        if (g.is_array()) {
            for (const json& v : g) {
                if (!v.is_number()) throw ConfigError("'n_grid' entries must be numbers");
                config.n_grid.push_back(v.get<int>());
            }
        } else if (g.is_object()) {
            const int from = static_cast<int>(require_number(g, "from"));
            const int to = static_cast<int>(require_number(g, "to"));
            const int step = g.contains("step") ? static_cast<int>(require_number(g, "step")) : 1;
            if (step <= 0) throw ConfigError("'n_grid.step' must be positive");
            for (int n = from; n <= to; n += step) config.n_grid.push_back(n);
        } else {
            throw ConfigError("'n_grid' must be an array or {from,to,step}");
        }
    }
    if (j.contains("model")) {
        const json& m = j["model"];
        if (!m.is_object()) throw ConfigError("'model' must be an object");
        StationaryModel model;
        model.l = require_number(m, "l");
        model.n_servers = static_cast<int>(require_number(m, "n"));
        if (m.contains("t") && m["t"].is_string()) {
            if (m["t"].get<std::string>() != "infinite") {
                throw ConfigError("'model.t' must be an integer or \"infinite\"");
            }
            model.threshold = Threshold::infinite();
        } else {
            model.threshold = Threshold::finite(static_cast<int>(require_number(m, "t")));
        }
        model.gamma = config.costs.gamma;
        model.mu = config.costs.mu;
        try {
            model.validate();
        } catch (const Error& e) {
            throw ConfigError(e.what());
        }
        config.model = model;
    }
    if (j.contains("horizon")) config.horizon = require_number(j, "horizon");
    if (j.contains("warmup")) config.warmup = require_number(j, "warmup");
    if (j.contains("batches")) config.batches = static_cast<int>(require_number(j, "batches"));
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) {
            throw ConfigError("'seed' must be a non-negative integer");
        }
        config.seed = j["seed"].get<std::uint64_t>();
    }
    return config;
}

std::string default_label(const ArrivalDistribution& dist) {
    char buf[96];
    switch (dist.kind()) {
        case DistKind::Degenerate:
            std::snprintf(buf, sizeof(buf), "deg(%g)", dist.lo());
            break;
        case DistKind::Uniform:
            std::snprintf(buf, sizeof(buf), "U[%g,%g]", dist.lo(), dist.hi());
            break;
        case DistKind::ScaledBeta:
            std::snprintf(buf, sizeof(buf), "Beta(%g,%g)[%g,%g]", dist.alpha1(), dist.alpha2(),
                          dist.lo(), dist.hi());
            break;
    }
    return buf;
}

std::string fmt_cost(double value) {
    return format("%.6g", value);
}

std::string fmt_pct_from_rounded(double cost, double cost_opt) {
    const double c = std::strtod(fmt_cost(cost).c_str(), nullptr);
    const double c0 = std::strtod(fmt_cost(cost_opt).c_str(), nullptr);
    return format("%.12g", 100.0 * (c - c0) / c0);
}

std::string solve_exact_csv(const std::string& label, const ExactSolution& sol,
                            const CostParams& costs) {
    std::ostringstream os;
    os << "label,n_opt,c_opt,regime,n_max,nodes,cap_reached\n";
    os << label << ',' << sol.n_opt << ',' << fmt_cost(sol.c_opt) << ','
       << to_string(regime_guard(costs).regime) << ',' << sol.n_max << ',' << sol.quad_nodes
       << ',' << (sol.any_cap_reached() ? 1 : 0) << '\n';
    return os.str();
}

std::string curve_csv(const ExactSolution& sol) {
    std::ostringstream os;
    os << "N,expected_cost\n";
    for (const StaffingCostPoint& pt : sol.curve) {
        os << pt.n << ',' << fmt_cost(pt.expected_cost) << '\n';
    }
    return os.str();
}

std::string compare_csv_header() {
    return "label,n_opt,c_opt,"
           "n_u,c_u,u_staffing_error,u_pct_error,"
           "n_d,c_d,d_staffing_error,d_pct_error,"
           "n_nv,c_nv,nv_staffing_error,nv_pct_error\n";
}

std::string compare_csv_row(const std::string& label, const ComparisonReport& report) {
    std::ostringstream os;
    os << label << ',' << report.exact.n_opt << ',' << fmt_cost(report.exact.c_opt);
    for (const PolicyReportRow& row : report.rows) {
        os << ',' << row.policy.n << ',' << fmt_cost(row.expected_cost) << ','
           << row.staffing_error << ','
           << fmt_pct_from_rounded(row.expected_cost, report.exact.c_opt);
    }
    os << '\n';
    return os.str();
}

std::vector<Figure7Row> figure7_rows(const RunConfig& config) {
    if (config.n_grid.empty()) {
        throw ConfigError("figure7 needs a non-empty 'n_grid'");
    }
    const QuadratureRule rule = config.quadrature();
    std::vector<Figure7Row> rows;
    rows.reserve(config.n_grid.size());
    for (int n : config.n_grid) {
        if (n < 0) throw ConfigError("'n_grid' entries must be non-negative");
        Figure7Row row;
        row.n = n;
        row.exact_cost = expected_cost_for_staffing(n, config.dist, config.costs, rule);
        row.diffusion_cost = approx_total_cost(n, config.dist, config.costs, rule);
        rows.push_back(row);
    }
    return rows;
}

std::string figure7_csv(const std::vector<Figure7Row>& rows) {
    std::ostringstream os;
    os << "N,exact_cost,diffusion_cost,difference\n";
    for (const Figure7Row& row : rows) {
        os << row.n << ',' << fmt_cost(row.exact_cost) << ',' << fmt_cost(row.diffusion_cost)
           << ',' << fmt_cost(row.exact_cost - row.diffusion_cost) << '\n';
    }
    return os.str();
}

json policy_to_json(const StaffingPolicy& policy) {
    json j{{"kind", to_string(policy.kind)},
           {"N", policy.n},
           {"routing", to_string(policy.routing)},
           {"lambda", policy.lambda}};
    if (policy.beta) j["beta"] = *policy.beta;
    return j;
}

json sim_to_json(const SimEstimate& e) {
    const auto est = [](const Estimate& x) {
        return json{{"estimate", x.value}, {"half_width", x.half_width}};
    };
    return json{{"p_out", est(e.p_out)},
                {"p_ab", est(e.p_ab)},
                {"q_bar", est(e.q_bar)},
                {"z", est(e.z)},
                {"counts",
                 {{"arrivals", e.arrivals},
                  {"admitted", e.admitted},
                  {"outsourced", e.outsourced},
                  {"served", e.served},
                  {"abandoned", e.abandoned},
                  {"in_system_end", e.in_system_end}}}};
}

namespace {

constexpr double kTable2Lambdas[] = {1, 9, 25, 100, 225, 400, 625, 900, 1600};

// The three bundled uncertainty levels at lambda = 100.
ArrivalDistribution cv_level_dist(int level) {
    switch (level) {
        case 0: return ArrivalDistribution::uniform(90.0, 110.0);
        case 1: return ArrivalDistribution::uniform(50.0, 150.0);
        default: return ArrivalDistribution::uniform(10.0, 190.0);
    }
}

constexpr double kCostSweep[] = {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5,
                                 0.6,  0.7,  0.8, 0.9, 0.95, 0.99};

std::string table2_csv(int nodes) {
    std::ostringstream os;
    os << "lambda,label,n_opt,c_opt,n_u,c_u,staffing_error,pct_error\n";
    for (double lambda : kTable2Lambdas) {
        const double half = std::sqrt(lambda);
        const auto dist = ArrivalDistribution::uniform(lambda - half, lambda + half);
        const QuadratureRule rule = make_quadrature(dist, nodes);
        CostParams costs;
        const ExactSolution sol = optimal_staffing(dist, costs, rule);
        const StaffingPolicy u = make_policy_u(dist, costs, rule);
        const double cu = evaluate_policy(u, dist, costs, rule);
        os << format("%g", lambda) << ',' << default_label(dist) << ',' << sol.n_opt << ','
           << fmt_cost(sol.c_opt) << ',' << u.n << ',' << fmt_cost(cu) << ','
           << (sol.n_opt - u.n) << ',' << fmt_pct_from_rounded(cu, sol.c_opt) << '\n';
    }
    return os.str();
}

std::string ec_cv_csv(int nodes) {
    std::vector<ArrivalDistribution> dists{ArrivalDistribution::degenerate(100.0),
                                           ArrivalDistribution::uniform(99.0, 101.0)};
    for (int half = 10; half <= 90; half += 10) {
        dists.push_back(ArrivalDistribution::uniform(100.0 - half, 100.0 + half));
    }
    std::ostringstream os;
    os << compare_csv_header();
    CostParams costs;
    for (const auto& dist : dists) {
        const ComparisonReport report =
            compare_policies(dist, costs, make_quadrature(dist, nodes));
        os << compare_csv_row(default_label(dist), report);
    }
    return os.str();
}

std::string ec_cost_csv(int level, int nodes) {
    const ArrivalDistribution dist = cv_level_dist(level);
    const QuadratureRule rule = make_quadrature(dist, nodes);
    std::ostringstream os;
    os << compare_csv_header();
    for (double c : kCostSweep) {
        CostParams costs;
        costs.c = c;
        os << compare_csv_row(format("%g", c), compare_policies(dist, costs, rule));
    }
    return os.str();
}

// Beta arrival rates with mean 100 and the variance of the given CV level;
// shapes are pinned to alpha1 + alpha2 = 2 and the support follows from the
// mean and variance constraints.
ArrivalDistribution skew_dist(double alpha1, double sigma2) {
    const double alpha2 = 2.0 - alpha1;
    const double lo_half = std::sqrt(sigma2 * 3.0 * alpha1 / alpha2);
    const double hi_half = std::sqrt(sigma2 * 3.0 * alpha2 / alpha1);
    return ArrivalDistribution::scaled_beta(alpha1, alpha2, 100.0 - 10.0 * lo_half,
                                            100.0 + 10.0 * hi_half);
}

std::string ec_skew_csv(int level, int nodes) {
    const double sigma2 = level == 0 ? 1.0 / 3.0 : (level == 1 ? 25.0 / 3.0 : 27.0);
    const double alpha1_start = level == 2 ? 1.1 : 1.5;
    std::ostringstream os;
    os << compare_csv_header();
    CostParams costs;
    for (double alpha1 = alpha1_start; alpha1 > 0.45; alpha1 -= 0.1) {
        const ArrivalDistribution dist = skew_dist(alpha1, sigma2);
        char label[48];
        std::snprintf(label, sizeof(label), "Beta(%.1f,%.1f)", alpha1, 2.0 - alpha1);
        os << compare_csv_row(label, compare_policies(dist, costs, make_quadrature(dist, nodes)));
    }
    return os.str();
}

std::string ec_beta_csv(int nodes) {
    std::ostringstream os;
    os << "c,beta_low_cv,beta_moderate_cv,beta_high_cv\n";
    for (double c : kCostSweep) {
        os << format("%g", c);
        for (int level = 0; level < 3; ++level) {
            const ArrivalDistribution dist = cv_level_dist(level);
            CostParams costs;
            costs.c = c;
            const BetaSolution bs =
                beta_star(standardize(dist), costs, make_quadrature(dist, nodes));
            os << ',' << format("%.6g", bs.beta_star);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace

std::vector<std::string> reproduce_table_ids() {
    return {"table2",     "ec-cv",       "ec-cost-low", "ec-cost-mid", "ec-cost-high",
            "ec-skew-low", "ec-skew-mid", "ec-skew-high", "ec-beta"};
}

std::string reproduce_table(const std::string& id, int nodes) {
    if (id == "table2") return table2_csv(nodes);
    if (id == "ec-cv") return ec_cv_csv(nodes);
    if (id == "ec-cost-low") return ec_cost_csv(0, nodes);
    if (id == "ec-cost-mid") return ec_cost_csv(1, nodes);
    if (id == "ec-cost-high") return ec_cost_csv(2, nodes);
    if (id == "ec-skew-low") return ec_skew_csv(0, nodes);
    if (id == "ec-skew-mid") return ec_skew_csv(1, nodes);
    if (id == "ec-skew-high") return ec_skew_csv(2, nodes);
    if (id == "ec-beta") return ec_beta_csv(nodes);
    throw ConfigError("unknown table id '" + id + "'");
}

}  // namespace costaff
