#include "costaff/queue_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace costaff {

void CostParams::validate() const {
    if (c < 0.0 || p < 0.0 || a < 0.0 || w < 0.0) {
        throw Error("cost parameters must be non-negative");
    }
    if (gamma <= 0.0) {
        throw Error("patience rate gamma must be positive");
    }
    if (mu <= 0.0) {
        throw Error("service rate mu must be positive");
    }
}

void StationaryModel::validate() const {
    if (l < 0.0 || !std::isfinite(l)) {
        throw Error("arrival rate must be non-negative and finite");
    }
    if (n_servers < 0) {
        throw Error("server count must be non-negative");
    }
    if (!threshold.is_infinite && threshold.value < n_servers) {
        throw Error("finite threshold must be at least the server count");
    }
    if (gamma <= 0.0 || mu <= 0.0) {
        throw Error("gamma and mu must be positive");
    }
}

double death_rate(int n, int n_servers, double gamma, double mu) {
    return std::min(n, n_servers) * mu + gamma * std::max(n - n_servers, 0);
}

namespace {

// States needed before the mass-based cutoff may stop the recursion.
int min_truncation(int n_servers) {
    return n_servers + static_cast<int>(20.0 * std::sqrt(static_cast<double>(std::max(n_servers, 1)))) + 50;
}

}  // namespace

SteadyState steady_state(const StationaryModel& model) {
    model.validate();
    SteadyState ss;
    if (model.l == 0.0) {
        const int top = model.threshold.is_infinite ? 0 : model.threshold.value;
        ss.probs.assign(static_cast<size_t>(top) + 1, 0.0);
        ss.probs[0] = 1.0;
        ss.truncation = top;
        return ss;
    }

    const double logl = std::log(model.l);
    std::vector<double> logw{0.0};  // log of unnormalized weights
    double tail_bound = 0.0;

    if (!model.threshold.is_infinite) {
        const int top = model.threshold.value;
        logw.reserve(static_cast<size_t>(top) + 1);
        for (int k = 1; k <= top; ++k) {
            logw.push_back(logw.back() + logl -
                           std::log(death_rate(k, model.n_servers, model.gamma, model.mu)));
        }
    } else {
        const int floor_states = min_truncation(model.n_servers);
        for (int k = 1;; ++k) {
            const double mu_k = death_rate(k, model.n_servers, model.gamma, model.mu);
            logw.push_back(logw.back() + logl - std::log(mu_k));
            if (k < floor_states) continue;
            const double r = model.l / mu_k;
            if (r >= 1.0) continue;
            // Remaining mass is bounded by a geometric tail from the last
            // retained weight.
            const double log_tail = logw.back() + std::log(r / (1.0 - r));
            const double log_peak = *std::max_element(logw.begin(), logw.end());
            if (log_tail - log_peak < std::log(1e-12)) {
                tail_bound = std::exp(log_tail - log_peak);
                break;
            }
        }
    }

    const double m = *std::max_element(logw.begin(), logw.end());
    double total = 0.0;
    ss.probs.resize(logw.size());
    for (size_t k = 0; k < logw.size(); ++k) {
        ss.probs[k] = std::exp(logw[k] - m);
        total += ss.probs[k];
    }
    for (double& pk : ss.probs) pk /= total;
    ss.truncation = static_cast<int>(logw.size()) - 1;
    ss.tail_bound = tail_bound / total;
    return ss;
}

PerformanceMeasures perf_measures(const StationaryModel& model, const SteadyState& ss,
                                  const CostParams& costs) {
    costs.validate();
    PerformanceMeasures pm;
    double q = 0.0, s = 0.0;
    for (int k = 0; k <= ss.truncation; ++k) {
        const double th = ss.probs[static_cast<size_t>(k)];
        s += std::min(k, model.n_servers) * th;
        if (k > model.n_servers) q += (k - model.n_servers) * th;
    }
    pm.q_bar = q;
    pm.s_bar = s;
    pm.p_out = model.threshold.is_infinite ? 0.0 : ss.probs.back();
    pm.p_ab = model.l > 0.0 ? model.gamma * q / model.l : 0.0;
    pm.z = costs.p * model.l * pm.p_out +
           costs.effective_abandon_cost() * model.gamma * pm.q_bar;
    return pm;
}

namespace {

// Operating cost of tau(infinity): no outsourcing, so z = a' * gamma * Qbar.
double never_outsource_cost(int n_servers, double l, const CostParams& costs) {
    if (l == 0.0) return 0.0;
    StationaryModel model{l, n_servers, Threshold::infinite(), costs.gamma, costs.mu};
    const SteadyState ss = steady_state(model);
    return perf_measures(model, ss, costs).z;
}

}  // namespace

ThresholdSearchResult threshold_search(int n_servers, double l, const CostParams& costs) {
    costs.validate();
    if (n_servers < 0 || l < 0.0) {
        throw Error("threshold_search requires N >= 0 and l >= 0");
    }
    const double a_eff = costs.effective_abandon_cost();
    if (a_eff <= costs.p) {
        // Outsourcing never pays in this regime; admit everyone.
        return {Threshold::infinite(), never_outsource_cost(n_servers, l, costs), false, 0};
    }
    if (l == 0.0) {
        return {Threshold::finite(n_servers), 0.0, false, 0};
    }

    const int cap =
        n_servers + static_cast<int>(std::ceil(20.0 * std::sqrt(std::max(l, 1.0)))) + 100;
    const double logl = std::log(l);

    // Streaming log-sum-exp over the weight recursion: scaled sums are kept
    // relative to the running max log-weight.
    double logw = 0.0;      // log weight of the current top state
    double scale = 0.0;     // running max of log weights
    double sum_w = 1.0;     // sum of exp(logw_k - scale)
    double sum_q = 0.0;     // sum of (k - N)+ exp(logw_k - scale)
    for (int k = 1; k <= n_servers; ++k) {
        logw += logl - std::log(death_rate(k, n_servers, costs.gamma, costs.mu));
        if (logw > scale) {
            const double f = std::exp(scale - logw);
            sum_w *= f;
            sum_q *= f;
            scale = logw;
        }
        sum_w += std::exp(logw - scale);
    }

    int t = n_servers;
    double z_prev = costs.p * l * std::exp(logw - scale) / sum_w;  // T = N: empty queue
    while (t < cap) {
        const int k = t + 1;
        logw += logl - std::log(death_rate(k, n_servers, costs.gamma, costs.mu));
        if (logw > scale) {
            const double f = std::exp(scale - logw);
            sum_w *= f;
            sum_q *= f;
            scale = logw;
        }
        const double wk = std::exp(logw - scale);
        sum_w += wk;
        sum_q += (k - n_servers) * wk;
        const double z = (costs.p * l * wk + a_eff * costs.gamma * sum_q) / sum_w;
        if (z >= z_prev) {
            return {Threshold::finite(t), z_prev, false, cap};
        }
        z_prev = z;
        t = k;
    }
    return {Threshold::finite(t), z_prev, true, cap};
}

bool MdpSolution::is_threshold_policy() const {
    bool seen_reject = false;
    for (int an : admit) {
        if (an == 0) {
            seen_reject = true;
        } else if (seen_reject) {
            return false;
        }
    }
    return true;
}

int MdpSolution::threshold() const {
    for (size_t n = 0; n < admit.size(); ++n) {
        if (admit[n] == 0) return static_cast<int>(n);
    }
    return static_cast<int>(admit.size());
}

MdpSolution mdp_oracle(int n_servers, double l, const CostParams& costs, int state_cap) {
    costs.validate();
    if (state_cap < n_servers + 1) {
        throw Error("mdp_oracle state cap must exceed the server count");
    }
    const double a_eff = costs.effective_abandon_cost();
    const int s = state_cap + 1;  // states 0..state_cap
    const double big =
        l + n_servers * costs.mu + costs.gamma * std::max(state_cap - n_servers, 0);
    const double theta = big > 0.0 ? big : 1.0;  // uniformization rate

    std::vector<double> h(s, 0.0), h_next(s, 0.0);
    double g = 0.0;
    constexpr int kMaxIters = 2'000'000;
    constexpr double kSpanTol = 1e-11;

    for (int it = 0; it < kMaxIters; ++it) {
        for (int n = 0; n < s; ++n) {
            const double mu_n = death_rate(n, n_servers, costs.gamma, costs.mu);
            const double ab_rate = costs.gamma * std::max(n - n_servers, 0);
            double v = 0.0;
            if (l > 0.0) {
                const double reject = costs.p + h[n];
                const double accept =
                    n < state_cap ? h[n + 1] : std::numeric_limits<double>::infinity();
                v += l * std::min(accept, reject);
            }
            if (n > 0) {
                v += mu_n * h[n - 1] + ab_rate * a_eff;
            }
            v += (theta - l - mu_n) * h[n];
            h_next[n] = v / theta;
        }
        double lo = h_next[0] - h[0], hi = lo;
        for (int n = 1; n < s; ++n) {
            const double d = h_next[n] - h[n];
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
        g = 0.5 * (lo + hi) * theta;
        const double ref = h_next[0];
        for (int n = 0; n < s; ++n) h[n] = h_next[n] - ref;
        if (hi - lo < kSpanTol) {
            MdpSolution sol;
            sol.average_cost = g;
            sol.admit.assign(s, 1);
            for (int n = 0; n < s; ++n) {
                const bool rejecting = n == state_cap || costs.p + h[n] <= h[n + 1];
                sol.admit[n] = rejecting ? 0 : 1;
            }
            return sol;
        }
    }
    throw NoConvergenceError("relative value iteration did not contract within budget");
}

}  // namespace costaff
