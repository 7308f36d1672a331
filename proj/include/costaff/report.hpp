#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "costaff/arrival.hpp"
#include "costaff/exact_search.hpp"
#include "costaff/policies.hpp"
#include "costaff/simulator.hpp"

namespace costaff {

// One parsed run configuration: a distribution, costs, quadrature size and
// command-specific extras. Defaults follow the co-sourcing base case
// c = 0.1, p = 1, a = 5, w = 0, gamma = 1, mu = 1.
struct RunConfig {
    ArrivalDistribution dist = ArrivalDistribution::uniform(90.0, 110.0);
    CostParams costs;
    int quad_nodes = kDefaultQuadratureNodes;
    std::optional<int> n_max;
    bool fast = false;
    std::string label;
    std::optional<std::string> output;

    // figure7
    std::vector<int> n_grid;
    // simulate
    std::optional<StationaryModel> model;
    double horizon = 1e5;
    double warmup = 1e4;
    int batches = 20;
    std::uint64_t seed = 1;

    QuadratureRule quadrature() const { return make_quadrature(dist, quad_nodes); }
};

ArrivalDistribution dist_from_json(const nlohmann::json& j);
nlohmann::json dist_to_json(const ArrivalDistribution& dist);
RunConfig parse_run_config(const nlohmann::json& j);

std::string default_label(const ArrivalDistribution& dist);

// Fixed CSV formatting: costs at 6 significant digits, percent errors
// recomputed from the rounded costs so emitted rows are self-consistent.
std::string fmt_cost(double value);
std::string fmt_pct_from_rounded(double cost, double cost_opt);

std::string solve_exact_csv(const std::string& label, const ExactSolution& sol,
                            const CostParams& costs);
std::string curve_csv(const ExactSolution& sol);
std::string compare_csv_header();
std::string compare_csv_row(const std::string& label, const ComparisonReport& report);

struct Figure7Row {
    int n = 0;
    double exact_cost = 0.0;
    double diffusion_cost = 0.0;
};
std::vector<Figure7Row> figure7_rows(const RunConfig& config);
std::string figure7_csv(const std::vector<Figure7Row>& rows);

nlohmann::json policy_to_json(const StaffingPolicy& policy);
nlohmann::json sim_to_json(const SimEstimate& estimate);

// Bundled study presets; node counts default to 128 to
// resolve the threshold-rounding jumps in the U-policy integrand.
inline constexpr int kReproduceNodes = 128;

std::string reproduce_table(const std::string& id, int nodes = kReproduceNodes);
std::vector<std::string> reproduce_table_ids();

}  // namespace costaff
