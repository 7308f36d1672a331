#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "costaff/report.hpp"

namespace {

using costaff::ConfigError;
using costaff::RunConfig;
using nlohmann::json;

struct CommonArgs {
    std::string config_path;
    std::string dist_literal;
    std::string label;
    std::string out_path;
    std::optional<double> c, p, a, w, gamma, mu;
    std::optional<int> nodes, n_max;
    bool fast = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON run configuration file");
    cmd->add_option("--dist", args.dist_literal,
                    R"(distribution literal, e.g. {"kind":"uniform","lo":90,"hi":110})");
    cmd->add_option("--label", args.label, "row label for CSV output");
    cmd->add_option("--out", args.out_path, "output file (default stdout)");
    cmd->add_option("--c", args.c, "staffing cost per server per unit time");
    cmd->add_option("--p", args.p, "outsourcing cost per call");
    cmd->add_option("--a", args.a, "abandonment cost per call");
    cmd->add_option("--w", args.w, "waiting cost per customer per unit time");
    cmd->add_option("--gamma", args.gamma, "abandonment (patience) rate");
    cmd->add_option("--mu", args.mu, "service rate");
    cmd->add_option("--nodes", args.nodes, "quadrature node count");
    cmd->add_option("--n-max", args.n_max, "staffing search upper bound");
    cmd->add_flag("--fast", args.fast, "stop the staffing scan after 25 consecutive increases");
}

// File config first, then CLI flags on top.
RunConfig resolve_config(const CommonArgs& args) {
    json j = json::object();
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path);
        if (!in) throw ConfigError("cannot open config file '" + args.config_path + "'");
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw ConfigError(std::string("malformed JSON config: ") + e.what());
        }
    }
    RunConfig config = costaff::parse_run_config(j);
    if (!args.dist_literal.empty()) {
        try {
            config.dist = costaff::dist_from_json(json::parse(args.dist_literal));
        } catch (const json::exception& e) {
            throw ConfigError(std::string("malformed --dist literal: ") + e.what());
        }
    }
    if (args.c) config.costs.c = *args.c;
    if (args.p) config.costs.p = *args.p;
    if (args.a) config.costs.a = *args.a;
    if (args.w) config.costs.w = *args.w;
    if (args.gamma) config.costs.gamma = *args.gamma;
    if (args.mu) config.costs.mu = *args.mu;
    try {
        config.costs.validate();
    } catch (const costaff::Error& e) {
        throw ConfigError(e.what());
    }
    if (args.nodes) {
        if (*args.nodes < 1) throw ConfigError("--nodes must be >= 1");
        config.quad_nodes = *args.nodes;
    }
    if (args.n_max) config.n_max = *args.n_max;
    if (args.fast) config.fast = true;
    if (!args.label.empty()) config.label = args.label;
    if (config.label.empty()) config.label = costaff::default_label(config.dist);
    if (!args.out_path.empty()) config.output = args.out_path;
    return config;
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot open output file '" + out_path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Staffing and threshold-outsourcing policies for Erlang-A systems "
                 "with an uncertain arrival rate"};
    app.require_subcommand(1);

    CommonArgs solve_args;
    std::string curve_path;
    auto* solve = app.add_subcommand("solve-exact", "exhaustive staffing search");
    add_common(solve, solve_args);
    solve->add_option("--curve-out", curve_path, "also write the N vs expected-cost curve");

    CommonArgs policy_args;
    std::string policy_kind;
    auto* policy = app.add_subcommand("policy", "construct a staffing policy (u, d or nv)");
    policy->add_option("kind", policy_kind, "policy kind: u, d or nv")->required();
    add_common(policy, policy_args);

    CommonArgs compare_args;
    auto* compare = app.add_subcommand("compare", "compare U, D and NV to the exact optimum");
    add_common(compare, compare_args);

    CommonArgs fig_args;
    std::optional<int> n_from, n_to, n_step;
    auto* fig = app.add_subcommand("figure7", "exact vs diffusion cost over a staffing grid");
    add_common(fig, fig_args);
    fig->add_option("--n-from", n_from, "grid start");
    fig->add_option("--n-to", n_to, "grid end (inclusive)");
    fig->add_option("--n-step", n_step, "grid step");

    CommonArgs sim_args;
    std::optional<double> sim_l, sim_horizon, sim_warmup;
    std::optional<int> sim_n, sim_batches;
    std::optional<std::uint64_t> sim_seed;
    std::string sim_t;
    auto* sim = app.add_subcommand("simulate", "discrete-event estimate for a realized system");
    add_common(sim, sim_args);
    sim->add_option("--l", sim_l, "realized arrival rate");
    sim->add_option("--n", sim_n, "server count");
    sim->add_option("--t", sim_t, "admission threshold (integer or 'infinite')");
    sim->add_option("--horizon", sim_horizon, "simulated time units");
    sim->add_option("--warmup", sim_warmup, "discarded warmup time");
    sim->add_option("--batches", sim_batches, "batch-means batches");
    sim->add_option("--seed", sim_seed, "RNG seed");

    CommonArgs repro_args;
    std::string table_id;
    auto* repro = app.add_subcommand("reproduce-table", "regenerate a bundled study as CSV");
    repro->add_option("id", table_id, "table2 | ec-cv | ec-cost-{low,mid,high} | "
                                      "ec-skew-{low,mid,high} | ec-beta")->required();
    add_common(repro, repro_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            const RunConfig config = resolve_config(solve_args);
            costaff::SearchOptions opts{config.n_max, config.fast};
            const auto start = std::chrono::steady_clock::now();
            const costaff::ExactSolution sol =
                costaff::optimal_staffing(config.dist, config.costs, config.quadrature(), opts);
            const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
            std::cerr << "solve-exact: " << elapsed.count() << " s\n";
            write_output(config.output.value_or(""),
                         costaff::solve_exact_csv(config.label, sol, config.costs));
            if (!curve_path.empty()) write_output(curve_path, costaff::curve_csv(sol));
        } else if (policy->parsed()) {
            const RunConfig config = resolve_config(policy_args);
            costaff::StaffingPolicy result;
            if (policy_kind == "u") {
                result = costaff::make_policy_u(config.dist, config.costs, config.quadrature());
            } else if (policy_kind == "d") {
                result = costaff::make_policy_d(config.dist, config.costs);
            } else if (policy_kind == "nv") {
                result = costaff::make_policy_nv(config.dist, config.costs);
            } else {
                throw ConfigError("policy kind must be one of u, d, nv");
            }
            write_output(config.output.value_or(""), costaff::policy_to_json(result).dump(2) + "\n");
        } else if (compare->parsed()) {
            const RunConfig config = resolve_config(compare_args);
            costaff::SearchOptions opts{config.n_max, config.fast};
            const costaff::ComparisonReport report =
                costaff::compare_policies(config.dist, config.costs, config.quadrature(), opts);
            write_output(config.output.value_or(""),
                         costaff::compare_csv_header() +
                             costaff::compare_csv_row(config.label, report));
        } else if (fig->parsed()) {
            RunConfig config = resolve_config(fig_args);
            if (n_from && n_to) {
                config.n_grid.clear();
                for (int n = *n_from; n <= *n_to; n += n_step.value_or(1)) {
                    config.n_grid.push_back(n);
                }
            }
            write_output(config.output.value_or(""),
                         costaff::figure7_csv(costaff::figure7_rows(config)));
        } else if (sim->parsed()) {
            RunConfig config = resolve_config(sim_args);
            costaff::SimConfig sc;
            if (config.model) sc.model = *config.model;
            sc.model.gamma = config.costs.gamma;
            sc.model.mu = config.costs.mu;
            if (sim_l) sc.model.l = *sim_l;
            if (sim_n) sc.model.n_servers = *sim_n;
            if (!sim_t.empty()) {
                if (sim_t == "infinite") {
                    sc.model.threshold = costaff::Threshold::infinite();
                } else {
                    try {
                        sc.model.threshold = costaff::Threshold::finite(std::stoi(sim_t));
                    } catch (const std::exception&) {
                        throw ConfigError("--t must be an integer or 'infinite'");
                    }
                }
            }
            sc.costs = config.costs;
            sc.horizon = sim_horizon.value_or(config.horizon);
            sc.warmup = sim_warmup.value_or(config.warmup);
            sc.batches = sim_batches.value_or(config.batches);
            sc.seed = sim_seed.value_or(config.seed);
            try {
                sc.model.validate();
                sc.validate();
            } catch (const costaff::DegenerateHorizonError&) {
                throw;
            } catch (const costaff::Error& e) {
                throw ConfigError(e.what());
            }
            write_output(config.output.value_or(""),
                         costaff::sim_to_json(costaff::simulate(sc)).dump(2) + "\n");
        } else if (repro->parsed()) {
            const int nodes = repro_args.nodes.value_or(costaff::kReproduceNodes);
            if (nodes < 1) throw ConfigError("--nodes must be >= 1");
            write_output(repro_args.out_path, costaff::reproduce_table(table_id, nodes));
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const costaff::InvalidRegimeError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
