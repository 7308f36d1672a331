#include "costaff/arrival.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>

namespace costaff {

namespace {

// Regularized incomplete beta I_x(a, b); the beta cdf on [0, 1].
double beta_cdf01(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return boost::math::ibeta(a, b, x);
}

}  // namespace

ArrivalDistribution::ArrivalDistribution(DistKind kind, double lo, double hi, double a1, double a2)
    : kind_(kind), lo_(lo), hi_(hi), alpha1_(a1), alpha2_(a2) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw Error("arrival distribution support must be finite");
    }
    if (lo < 0.0) {
        throw Error("arrival distribution support must be non-negative");
    }
    if (lo > hi) {
        throw Error("arrival distribution support is empty (lo > hi)");
    }
    if (kind == DistKind::ScaledBeta && (a1 <= 0.0 || a2 <= 0.0)) {
        throw Error("beta shape parameters must be positive");
    }
}

ArrivalDistribution ArrivalDistribution::degenerate(double value) {
    return {DistKind::Degenerate, value, value, 0.0, 0.0};
}

ArrivalDistribution ArrivalDistribution::uniform(double lo, double hi) {
    return {DistKind::Uniform, lo, hi, 0.0, 0.0};
}

ArrivalDistribution ArrivalDistribution::scaled_beta(double alpha1, double alpha2, double lo,
                                                     double hi) {
    return {DistKind::ScaledBeta, lo, hi, alpha1, alpha2};
}

double ArrivalDistribution::mean() const {
    switch (kind_) {
        case DistKind::Degenerate: return lo_;
        case DistKind::Uniform: return 0.5 * (lo_ + hi_);
        case DistKind::ScaledBeta: return lo_ + (hi_ - lo_) * alpha1_ / (alpha1_ + alpha2_);
    }
    return 0.0;
}

double ArrivalDistribution::variance() const {
    const double w = hi_ - lo_;
    switch (kind_) {
        case DistKind::Degenerate: return 0.0;
        case DistKind::Uniform: return w * w / 12.0;
        case DistKind::ScaledBeta: {
            const double s = alpha1_ + alpha2_;
            return w * w * alpha1_ * alpha2_ / (s * s * (s + 1.0));
        }
    }
    return 0.0;
}

double ArrivalDistribution::coefficient_of_variation() const {
    const double m = mean();
    if (m == 0.0) {
        throw ZeroMeanError("coefficient of variation undefined for zero mean");
    }
    return std::sqrt(variance()) / m;
}

double ArrivalDistribution::cdf(double x) const {
    switch (kind_) {
        case DistKind::Degenerate: return x >= lo_ ? 1.0 : 0.0;
        case DistKind::Uniform:
            if (x <= lo_) return 0.0;
            if (x >= hi_) return 1.0;
            if (hi_ == lo_) return 1.0;
            return (x - lo_) / (hi_ - lo_);
        case DistKind::ScaledBeta:
            if (x <= lo_) return 0.0;
            if (x >= hi_) return 1.0;
            return beta_cdf01(alpha1_, alpha2_, (x - lo_) / (hi_ - lo_));
    }
    return 0.0;
}

double ArrivalDistribution::inverse_cdf(double q) const {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw InvalidQuantileError("quantile must lie in [0, 1]");
    }
    switch (kind_) {
        case DistKind::Degenerate: return lo_;
        case DistKind::Uniform: return lo_ + q * (hi_ - lo_);
        case DistKind::ScaledBeta: {
            if (q == 0.0) return lo_;
            if (q == 1.0) return hi_;
            // Bracketed bisection on the regularized incomplete beta.
            double a = 0.0, b = 1.0;
            for (int i = 0; i < 200 && b - a > 1e-10; ++i) {
                const double mid = 0.5 * (a + b);
                if (beta_cdf01(alpha1_, alpha2_, mid) >= q) {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            return lo_ + 0.5 * (a + b) * (hi_ - lo_);
        }
    }
    return lo_;
}

double ArrivalDistribution::skewness() const {
    switch (kind_) {
        case DistKind::Degenerate:
        case DistKind::Uniform: return 0.0;
        case DistKind::ScaledBeta: {
            const double s = alpha1_ + alpha2_;
            return 2.0 * (alpha2_ - alpha1_) * std::sqrt(s + 1.0) /
                   ((s + 2.0) * std::sqrt(alpha1_ * alpha2_));
        }
    }
    return 0.0;
}

StandardizedDistribution standardize(const ArrivalDistribution& dist) {
    const double lambda = dist.mean();
    if (lambda <= 0.0) {
        throw ZeroMeanError("standardization requires a positive mean arrival rate");
    }
    return {dist, lambda, std::sqrt(lambda)};
}

}  // namespace costaff
