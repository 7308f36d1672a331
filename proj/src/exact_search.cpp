#include "costaff/exact_search.hpp"

#include <cmath>

namespace costaff {

bool ExactSolution::any_cap_reached() const {
    for (const auto& pt : curve) {
        if (pt.cap_reached) return true;
    }
    return false;
}

double expected_cost_for_staffing(int n_servers, [[maybe_unused]] const ArrivalDistribution& dist,
                                  const CostParams& costs, const QuadratureRule& rule,
                                  bool* cap_reached) {
    bool hit_cap = false;
    const double stage2 = expect(
        [&](double l) {
            const ThresholdSearchResult r = threshold_search(n_servers, l, costs);
            hit_cap = hit_cap || r.cap_reached;
            return r.z_opt;
        },
        rule);
    if (cap_reached != nullptr) *cap_reached = hit_cap;
    return costs.c * n_servers + stage2;
}

int default_n_max(const ArrivalDistribution& dist) {
    const double hi = dist.hi();
    return static_cast<int>(std::ceil(hi + 5.0 * std::sqrt(hi))) + 10;
}

ExactSolution optimal_staffing(const ArrivalDistribution& dist, const CostParams& costs,
                               const QuadratureRule& rule, const SearchOptions& options) {
    costs.validate();
    ExactSolution sol;
    sol.n_max = options.n_max.value_or(default_n_max(dist));
    if (sol.n_max < 0) {
        throw Error("n_max must be non-negative");
    }
    sol.quad_nodes = rule.size();
    sol.curve.reserve(static_cast<size_t>(sol.n_max) + 1);

    int increases = 0;
    double prev = 0.0;
    for (int n = 0; n <= sol.n_max; ++n) {
        bool cap = false;
        const double cost = expected_cost_for_staffing(n, dist, costs, rule, &cap);
        sol.curve.push_back({n, cost, cap});
        if (sol.curve.size() == 1 || cost < sol.c_opt) {
            sol.n_opt = n;
            sol.c_opt = cost;
        }
        if (options.fast_stop) {
            increases = (n > 0 && cost >= prev) ? increases + 1 : 0;
            if (increases >= 25) break;
            prev = cost;
        }
    }
    return sol;
}

}  // namespace costaff
