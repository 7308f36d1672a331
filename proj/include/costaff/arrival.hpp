#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "costaff/errors.hpp"

namespace costaff {

enum class DistKind { Degenerate, Uniform, ScaledBeta };

// The random arrival rate Lambda. Three families: a point mass, a uniform
// on [lo, hi], and a beta on [lo, hi] with shapes (alpha1, alpha2).
// Support must be non-negative; Lambda is a non-negative random variable.
class ArrivalDistribution {
  public:
    static ArrivalDistribution degenerate(double value);
    static ArrivalDistribution uniform(double lo, double hi);
    static ArrivalDistribution scaled_beta(double alpha1, double alpha2, double lo, double hi);

    DistKind kind() const { return kind_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double alpha1() const { return alpha1_; }
    double alpha2() const { return alpha2_; }

    double mean() const;
    double variance() const;
    // sqrt(Var)/mean; throws ZeroMeanError when the mean is zero.
    double coefficient_of_variation() const;
    double cdf(double x) const;
    // Smallest x with F(x) >= q; throws InvalidQuantileError outside [0, 1].
    double inverse_cdf(double q) const;
    double skewness() const;

  private:
    ArrivalDistribution(DistKind kind, double lo, double hi, double a1, double a2);

    DistKind kind_;
    double lo_ = 0.0;
    double hi_ = 0.0;
    double alpha1_ = 0.0;
    double alpha2_ = 0.0;
};

// Probability-weighted nodes on the distribution's support: sum of weights
// is the total mass 1. Gauss-Legendre for uniform supports, Gauss-Jacobi
// against the beta density for scaled-beta, a single node for a point mass.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }
};

inline constexpr int kDefaultQuadratureNodes = 64;

QuadratureRule make_quadrature(const ArrivalDistribution& dist, int n = kDefaultQuadratureNodes);

// Quadrature approximation of E[f(Lambda)]. Deterministic for a fixed rule.
template <class F>
double expect(const F& f, const QuadratureRule& rule) {
    double acc = 0.0;
    for (int i = 0; i < rule.size(); ++i) {
        const double fx = f(rule.nodes[i]);
        if (!std::isfinite(fx)) {
            throw NonFiniteIntegrandError("integrand is non-finite at quadrature node " +
                                          std::to_string(rule.nodes[i]));
        }
        acc += rule.weights[i] * fx;
    }
    return acc;
}

// X = (Lambda - lambda)/sqrt(lambda), the standardized arrival rate.
// Quadrature nodes for Lambda map to x-nodes; l = center + x*scale maps back.
struct StandardizedDistribution {
    ArrivalDistribution underlying;
    double center;  // lambda = E[Lambda]
    double scale;   // sqrt(lambda)

    double x_from_l(double l) const { return (l - center) / scale; }
    double l_from_x(double x) const { return center + x * scale; }
};

// Throws ZeroMeanError when E[Lambda] = 0.
StandardizedDistribution standardize(const ArrivalDistribution& dist);

// E[f(X)] over the standardized variable, reusing the rule for Lambda.
template <class F>
double expect_standardized(const StandardizedDistribution& sd, const F& f,
                           const QuadratureRule& rule) {
    return expect([&](double l) { return f(sd.x_from_l(l)); }, rule);
}

}  // namespace costaff
