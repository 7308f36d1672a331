#include "costaff/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "costaff/normal.hpp"

namespace costaff {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A/B evaluated directly; the Gaussian-ratio term of B is written as
// phi(u)*R(-m) for m < 0, which never overflows.
double zhat_direct(double m, double u, double v, double p, double a_eff, double sg) {
    double ratio_term;
    if (m < 0.0) {
        ratio_term = normal_pdf(u) * mills_upper(-m);
    } else {
        const double log_ratio = 0.5 * (m * m - u * u);
        if (log_ratio > 700.0) {
            // B blows up while A stays bounded (heavily overstaffed, gamma > 1).
            return 0.0;
        }
        ratio_term = std::exp(log_ratio) * normal_cdf(m);
    }
    const double a_term = p * normal_pdf(v) +
                          a_eff * (normal_pdf(u) - normal_pdf(v) +
                                   u * (normal_cdf(u) - normal_cdf(v)));
    const double b_term = ratio_term + (normal_cdf(v) - normal_cdf(u)) / sg;
    if (b_term <= 0.0) {
        return 0.0;  // every Gaussian underflowed; true value is below 1e-250
    }
    return std::max(a_term / b_term, 0.0);
}

// Understaffed branch (m < 0, v <= 0): divide A and B by phi(v) and write
// normal cdfs through the upper Mills ratio. This keeps all terms at
// polynomial magnitudes for arbitrarily negative m and collapses exactly to
// p*phi(m)/Phi(m) at T = 0.
double zhat_scaled_negative(double m, double u, double v, double p, double a_eff, double sg) {
    const double inv_r = std::exp(0.5 * (v * v - u * u));  // phi(u)/phi(v) in (0, 1]
    const double ru = mills_upper(-u);
    const double rv = mills_upper(-v);
    const double a_term = p + a_eff * (inv_r - 1.0 + u * (inv_r * ru - rv));
    const double b_term = inv_r * mills_upper(-m) + (rv - inv_r * ru) / sg;
    return std::max(a_term / b_term, 0.0);
}

}  // namespace

double zhat(double m, double t_hat, double p, double a_eff, double gamma) {
    if (std::isinf(t_hat)) {
        return zhat_inf(m, a_eff, gamma);
    }
    const double sg = std::sqrt(gamma);
    const double u = m / sg;
    const double v = sg * t_hat + u;
    if (m < 0.0 && v <= 0.0) {
        return zhat_scaled_negative(m, u, v, p, a_eff, sg);
    }
    return zhat_direct(m, u, v, p, a_eff, sg);
}

double zhat_inf(double m, double a_eff, double gamma) {
    const double sg = std::sqrt(gamma);
    const double u = m / sg;
    // A(m, inf) = a' * [phi(u) + u*(Phi(u) - 1)]; no cancellation for u <= 0,
    // and for u > 0 written through the Mills ratio.
    double a_term;
    if (u <= 0.0) {
        a_term = a_eff * (normal_pdf(u) - u * normal_cdf(-u));
    } else {
        a_term = a_eff * normal_pdf(u) * (1.0 - u * mills_upper(u));
    }
    const double log_ratio = 0.5 * (m * m - u * u);
    double b_term;
    if (m < 0.0) {
        b_term = normal_pdf(u) * mills_upper(-m) + normal_cdf(-u) / sg;
    } else {
        if (log_ratio > 700.0) return 0.0;
        b_term = std::exp(log_ratio) * normal_cdf(m) + normal_cdf(-u) / sg;
    }
    if (b_term <= 0.0) {
        return m > 0.0 ? 0.0 : a_term;  // b underflow only happens overstaffed
    }
    return std::max(a_term / b_term, 0.0);
}

double that_star(double m, const CostParams& costs) {
    const double a_eff = costs.effective_abandon_cost();
    if (a_eff <= costs.p) {
        return kInf;
    }
    const double slope = (a_eff - costs.p) * costs.gamma;
    const auto g = [&](double t) {
        return slope * t - zhat(m, t, costs.p, a_eff, costs.gamma) - costs.p * m;
    };
    if (g(0.0) >= 0.0) {
        return 0.0;  // boundary root; cannot occur for finite m in exact arithmetic
    }
    double lo = 0.0, hi = 1.0;
    while (g(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e3) {
            throw BracketFailureError("no sign change for the scaled-threshold equation");
        }
    }
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (std::abs(gm) < 1e-10) return mid;
        if (gm < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15 * std::max(1.0, mid)) break;
    }
    return mid;
}

double zhat_min(double m, const CostParams& costs) {
    return zhat(m, that_star(m, costs), costs.p, costs.effective_abandon_cost(), costs.gamma);
}

double diffusion_objective(double beta, const StandardizedDistribution& x_dist,
                           const CostParams& costs, const QuadratureRule& rule) {
    const double stage2 =
        expect_standardized(x_dist, [&](double x) { return zhat_min(beta - x, costs); }, rule);
    return costs.c * beta + stage2;
}

BetaSolution beta_star(const StandardizedDistribution& x_dist, const CostParams& costs,
                       const QuadratureRule& rule) {
    costs.validate();
    if (costs.c >= std::min(costs.effective_abandon_cost(), costs.p)) {
        // The objective loses coercivity and the expanding scan would never
        // terminate; staffing is forced to zero in this regime anyway.
        throw InvalidRegimeError("beta_star requires c < min(a', p)");
    }
    const auto f = [&](double b) { return diffusion_objective(b, x_dist, costs, rule); };

    constexpr double kStep = 0.25;
    double lo = -5.0, hi = 5.0;
    std::vector<double> grid, vals;
    for (double b = lo; b <= hi + 1e-12; b += kStep) {
        grid.push_back(b);
        vals.push_back(f(b));
    }
    // Expand until both ends sit at least c above the interior minimum.
    for (;;) {
        const size_t imin = static_cast<size_t>(
            std::min_element(vals.begin(), vals.end()) - vals.begin());
        bool grew = false;
        if (vals.front() < vals[imin] + costs.c) {
            std::vector<double> g2, v2;
            for (double b = grid.front() - 5.0; b < grid.front() - 1e-12; b += kStep) {
                g2.push_back(b);
                v2.push_back(f(b));
            }
            grid.insert(grid.begin(), g2.begin(), g2.end());
            vals.insert(vals.begin(), v2.begin(), v2.end());
            grew = true;
        }
        if (vals.back() < *std::min_element(vals.begin(), vals.end()) + costs.c) {
            const double start = grid.back() + kStep;
            for (double b = start; b < start + 5.0 - 1e-12; b += kStep) {
                grid.push_back(b);
                vals.push_back(f(b));
            }
            grew = true;
        }
        if (!grew) break;
    }

    const size_t imin =
        static_cast<size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    double a = grid[imin > 0 ? imin - 1 : 0];
    double b = grid[std::min(imin + 1, grid.size() - 1)];

    BetaSolution sol;
    sol.bracket_lo = grid.front();
    sol.bracket_hi = grid.back();

    // Golden section on the bracketing cell pair.
    constexpr double kGolden = 0.6180339887498949;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-6) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        }
    }
    sol.beta_star = 0.5 * (a + b);
    sol.value = f(sol.beta_star);
    return sol;
}

double approx_total_cost(double n_servers, const ArrivalDistribution& dist,
                         const CostParams& costs, const QuadratureRule& rule) {
    const StandardizedDistribution sd = standardize(dist);
    const double beta = (n_servers - sd.center) / sd.scale;
    const double stage2 =
        expect_standardized(sd, [&](double x) { return zhat_min(beta - x, costs); }, rule);
    return costs.c * n_servers + sd.scale * stage2;
}

}  // namespace costaff
