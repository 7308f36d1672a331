#pragma once

#include "costaff/arrival.hpp"
#include "costaff/queue_core.hpp"

namespace costaff {

// Scaled operating cost of the limiting diffusion at drift argument
// m = beta - x and scaled threshold t_hat: the ratio A(m, T)/B(m, T) of
// Gaussian terms evaluated with argument m/sqrt(gamma). Passing an
// infinite t_hat gives the never-outsource limit.
double zhat(double m, double t_hat, double p, double a_eff, double gamma);

// lim_{T->inf} zhat(m, T); all p-terms vanish.
double zhat_inf(double m, double a_eff, double gamma);

// The scaled threshold T*(m): infinite when a' <= p, otherwise the unique
// root of (a' - p)*gamma*T - zhat(m, T) = p*m, located by bracketing and
// bisection to |g| < 1e-10. Throws BracketFailureError if no sign change
// appears before T = 1e3 (should not occur for a' > p).
double that_star(double m, const CostParams& costs);

// zhat evaluated at its minimizing threshold T*(m).
double zhat_min(double m, const CostParams& costs);

// c*beta + E[zhat(beta - X, T*(beta - X))] over the standardized arrival
// distribution.
double diffusion_objective(double beta, const StandardizedDistribution& x_dist,
                           const CostParams& costs, const QuadratureRule& rule);

struct BetaSolution {
    double beta_star = 0.0;
    double value = 0.0;  // c*beta_star + E[zhat(...)]
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

// Global minimizer of the diffusion objective: coarse 0.25-step scan over
// an expanding bracket, refined by golden section to 1e-6. Coercivity
// guarantees the expansion terminates; convexity is not assumed.
BetaSolution beta_star(const StandardizedDistribution& x_dist, const CostParams& costs,
                       const QuadratureRule& rule);

// Diffusion approximation of the expected cost at staffing level n:
// c*n + sqrt(lambda) * E[zhat(beta - X, T*(beta - X))], beta = (n - lambda)/sqrt(lambda).
double approx_total_cost(double n_servers, const ArrivalDistribution& dist,
                         const CostParams& costs, const QuadratureRule& rule);

}  // namespace costaff
