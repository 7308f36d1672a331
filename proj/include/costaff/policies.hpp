#pragma once

#include <optional>
#include <string>
#include <vector>

#include "costaff/arrival.hpp"
#include "costaff/diffusion.hpp"
#include "costaff/exact_search.hpp"
#include "costaff/queue_core.hpp"

namespace costaff {

enum class PolicyKind { U, D, NV, Opt, Custom };

enum class RoutingMode {
    ThresholdFromDiffusion,  // realized threshold from the scaled T* equation
    OptimalPerRealization,   // per-realization threshold search
    NeverOutsource,
    OutsourceAll,
};

struct StaffingPolicy {
    PolicyKind kind = PolicyKind::Custom;
    int n = 0;
    std::optional<double> beta;  // safety parameter, when square-root staffed
    RoutingMode routing = RoutingMode::OptimalPerRealization;
    double lambda = 0.0;  // mean arrival rate the policy was built for
};

enum class Regime { CoSourcing, CompleteOutsourcing, NoOutsourcing, NoOperation };

// Which of the four cost-parameter cells applies, and what it mandates.
struct RegimeDecision {
    Regime regime = Regime::CoSourcing;
    std::optional<int> mandated_staffing;          // 0 in the right-hand cells
    std::optional<RoutingMode> mandated_routing;   // empty means free
};

double effective_abandon_cost(const CostParams& costs);

// Partition of the (c, p, a') space: c >= min(a', p) forces N = 0 with
// outsource-all (a' > p) or abandon-all (a' <= p); otherwise a' <= p forbids
// outsourcing and a' > p leaves both decisions free.
RegimeDecision regime_guard(const CostParams& costs);

// Universal policy: N = [lambda + beta* sqrt(lambda)] with beta* minimizing
// the diffusion objective over the standardized arrival distribution.
StaffingPolicy make_policy_u(const ArrivalDistribution& dist, const CostParams& costs,
                             const QuadratureRule& rule);

// Realized outsourcing threshold for U: x = (l - lambda)/sqrt(lambda),
// T = N + [T*(beta* - x) sqrt(l)]; infinite when a' <= p.
Threshold realize_threshold_u(const StaffingPolicy& policy_u, double l, double lambda,
                              const CostParams& costs);

// Benchmark D: square-root staffing computed as if the arrival rate were
// deterministic at its mean.
StaffingPolicy make_policy_d(const ArrivalDistribution& dist, const CostParams& costs);

// Benchmark NV: newsvendor staffing at the (min(a', p) - c)/min(a', p)
// quantile of the arrival rate. Throws InvalidRegimeError if c >= min(a', p).
StaffingPolicy make_policy_nv(const ArrivalDistribution& dist, const CostParams& costs);

// c*N + E over realizations of the stage-2 cost under the policy's routing.
double evaluate_policy(const StaffingPolicy& policy, const ArrivalDistribution& dist,
                       const CostParams& costs, const QuadratureRule& rule);

struct PolicyReportRow {
    StaffingPolicy policy;
    double expected_cost = 0.0;
    int staffing_error = 0;       // n_opt - n_policy
    double pct_cost_error = 0.0;  // 100 * (cost - c_opt)/c_opt
};

struct ComparisonReport {
    ExactSolution exact;
    std::vector<PolicyReportRow> rows;  // U, D, NV
};

ComparisonReport compare_policies(const ArrivalDistribution& dist, const CostParams& costs,
                                  const QuadratureRule& rule, const SearchOptions& options = {});

std::string to_string(PolicyKind kind);
std::string to_string(RoutingMode mode);
std::string to_string(Regime regime);

}  // namespace costaff
