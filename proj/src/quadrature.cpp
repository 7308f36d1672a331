#include "costaff/arrival.hpp"

#include <algorithm>
#include <cmath>

namespace costaff {

namespace {

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
// Legendre recurrence. Nodes ascending; weights sum to 2.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    constexpr double kEps = 1e-15;
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= kEps) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

// Gauss-Jacobi nodes and weights on [-1, 1] for the weight function
// (1-x)^alf (1+x)^bet, by Newton iteration on the Jacobi recurrence.
// Nodes come out descending and are reversed before returning.
void gauss_jacobi(int n, double alf, double bet, std::vector<double>& x, std::vector<double>& w) {
    constexpr double kEps = 3e-14;
    constexpr int kMaxIt = 14;
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const double alfbet = alf + bet;
    for (int i = 0; i < n; ++i) {
        double z;
        if (i == 0) {
            const double an = alf / n, bn = bet / n;
            const double r1 = (1.0 + alf) * (2.78 / (4.0 + n * n) + 0.768 * an / n);
            const double r2 = 1.0 + 1.48 * an + 0.96 * bn + 0.452 * an * an + 0.83 * an * bn;
            z = 1.0 - r1 / r2;
        } else if (i == 1) {
            const double r1 = (4.1 + alf) / ((1.0 + alf) * (1.0 + 0.156 * alf));
            const double r2 = 1.0 + 0.06 * (n - 8.0) * (1.0 + 0.12 * alf) / n;
            const double r3 = 1.0 + 0.012 * bet * (1.0 + 0.25 * std::abs(alf)) / n;
            z = x[0] - (1.0 - x[0]) * r1 * r2 * r3;
        } else if (i == 2) {
            const double r1 = (1.67 + 0.28 * alf) / (1.0 + 0.37 * alf);
            const double r2 = 1.0 + 0.22 * (n - 8.0) / n;
            const double r3 = 1.0 + 8.0 * bet / ((6.28 + bet) * n * n);
            z = x[1] - (x[0] - x[1]) * r1 * r2 * r3;
        } else if (i == n - 2) {
            const double r1 = (1.0 + 0.235 * bet) / (0.766 + 0.119 * bet);
            const double r2 = 1.0 / (1.0 + 0.639 * (n - 4.0) / (1.0 + 0.71 * (n - 4.0)));
            const double r3 = 1.0 / (1.0 + 20.0 * alf / ((7.5 + alf) * n * n));
            z = x[i - 1] + (x[i - 1] - x[i - 2]) * r1 * r2 * r3;
        } else if (i == n - 1) {
            const double r1 = (1.0 + 0.37 * bet) / (1.67 + 0.28 * bet);
            const double r2 = 1.0 / (1.0 + 0.22 * (n - 8.0) / n);
            const double r3 = 1.0 / (1.0 + 8.0 * alf / ((6.28 + alf) * n * n));
            z = x[i - 1] + (x[i - 1] - x[i - 2]) * r1 * r2 * r3;
        } else {
            z = 3.0 * x[i - 1] - 3.0 * x[i - 2] + x[i - 3];
        }
        double pp = 0.0, p2 = 0.0, temp = 0.0;
        for (int it = 0; it < kMaxIt; ++it) {
            temp = 2.0 + alfbet;
            double p1 = (alf - bet + temp * z) / 2.0;
            p2 = 1.0;
            for (int j = 2; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                temp = 2.0 * j + alfbet;
                const double a = 2.0 * j * (j + alfbet) * (temp - 2.0);
                const double b = (temp - 1.0) * (alf * alf - bet * bet + temp * (temp - 2.0) * z);
                const double c = 2.0 * (j - 1.0 + alf) * (j - 1.0 + bet) * temp;
                p1 = (b * p2 - c * p3) / a;
            }
            pp = (n * (alf - bet - temp * z) * p1 + 2.0 * (n + alf) * (n + bet) * p2) /
                 (temp * (1.0 - z * z));
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= kEps) break;
        }
        x[i] = z;
        w[i] = std::exp(std::lgamma(alf + n) + std::lgamma(bet + n) - std::lgamma(n + 1.0) -
                        std::lgamma(n + alfbet + 1.0)) *
               temp * std::pow(2.0, alfbet) / (pp * p2);
    }
    std::reverse(x.begin(), x.end());
    std::reverse(w.begin(), w.end());
}

}  // namespace

QuadratureRule make_quadrature(const ArrivalDistribution& dist, int n) {
    if (n < 1) {
        throw Error("quadrature rule needs at least one node");
    }
    QuadratureRule rule;
    if (dist.kind() == DistKind::Degenerate || dist.hi() == dist.lo()) {
        rule.nodes = {dist.lo()};
        rule.weights = {1.0};
        return rule;
    }
    std::vector<double> t, w;
    if (dist.kind() == DistKind::Uniform) {
        gauss_legendre(n, t, w);
        rule.nodes.resize(n);
        rule.weights.resize(n);
        for (int i = 0; i < n; ++i) {
            rule.nodes[i] = dist.lo() + 0.5 * (t[i] + 1.0) * (dist.hi() - dist.lo());
            rule.weights[i] = 0.5 * w[i];
        }
        return rule;
    }
    // Scaled beta: the density x^(a1-1) (1-x)^(a2-1) on [0,1] corresponds to
    // the Jacobi weight (1-t)^(a2-1) (1+t)^(a1-1) under x = (1+t)/2.
    gauss_jacobi(n, dist.alpha2() - 1.0, dist.alpha1() - 1.0, t, w);
    double total = 0.0;
    for (double wi : w) total += wi;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = dist.lo() + 0.5 * (t[i] + 1.0) * (dist.hi() - dist.lo());
        rule.weights[i] = w[i] / total;
    }
    return rule;
}

}  // namespace costaff
