#pragma once

#include <optional>
#include <vector>

#include "costaff/arrival.hpp"
#include "costaff/queue_core.hpp"

namespace costaff {

struct StaffingCostPoint {
    int n = 0;
    double expected_cost = 0.0;
    bool cap_reached = false;  // some realization hit the threshold-search cap
};

// Result of the exhaustive staffing search: the argmin, the minimum
// expected cost, and the full cost curve for diagnostics.
struct ExactSolution {
    int n_opt = 0;
    double c_opt = 0.0;
    std::vector<StaffingCostPoint> curve;
    int n_max = 0;
    int quad_nodes = 0;

    bool any_cap_reached() const;
};

// c*N + E[z_opt(N, Lambda)] via quadrature; cap_reached (when given) is set
// if any realization's threshold search hit its cap.
double expected_cost_for_staffing(int n_servers, const ArrivalDistribution& dist,
                                  const CostParams& costs, const QuadratureRule& rule,
                                  bool* cap_reached = nullptr);

// Staffing above the largest realizable load plus five sqrt-scale buffers is
// never optimal under linear costs.
int default_n_max(const ArrivalDistribution& dist);

struct SearchOptions {
    std::optional<int> n_max;
    // Stop after 25 consecutive cost increases instead of a full scan.
    bool fast_stop = false;
};

// Full scan over N in 0..n_max; ties break toward smaller N.
ExactSolution optimal_staffing(const ArrivalDistribution& dist, const CostParams& costs,
                               const QuadratureRule& rule, const SearchOptions& options = {});

}  // namespace costaff
