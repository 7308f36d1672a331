#pragma once

#include <cmath>

namespace costaff {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
inline constexpr double kSqrt2 = 1.4142135623730950488016887;

// Standard normal density.
inline double normal_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

// Standard normal cdf via erfc; relative error a few ulp out to |x| ~ 37.
inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / kSqrt2);
}

// Upper Mills ratio R(t) = Phi(-t)/phi(t) for t >= 0.
// Direct ratio is fine until phi(t) approaches the subnormal range; past
// that use the asymptotic expansion 1/t - 1/t^3 + 3/t^5 - ...
inline double mills_upper(double t) {
    if (t <= 35.0) {
        return normal_cdf(-t) / normal_pdf(t);
    }
    const double r = 1.0 / (t * t);
    return (1.0 - r * (1.0 - 3.0 * r * (1.0 - 5.0 * r * (1.0 - 7.0 * r)))) / t;
}

}  // namespace costaff
