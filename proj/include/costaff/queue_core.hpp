#pragma once

#include <vector>

#include "costaff/errors.hpp"

namespace costaff {

// Cost and rate parameters. Rates are per mean service time (mu defaults
// to 1), so c, p and a are directly comparable.
struct CostParams {
    double c = 0.1;      // staffing cost per server per unit time
    double p = 1.0;      // outsourcing cost per call
    double a = 5.0;      // abandonment cost per call
    double w = 0.0;      // waiting cost per customer per unit time
    double gamma = 1.0;  // abandonment (patience) rate
    double mu = 1.0;     // service rate

    // a' = a + w/gamma; waiting costs fold into the abandonment cost.
    double effective_abandon_cost() const { return a + w / gamma; }

    void validate() const;
};

// Admission threshold: finite level T >= N, or infinite (never outsource).
struct Threshold {
    static Threshold finite(int t) { return Threshold{false, t}; }
    static Threshold infinite() { return Threshold{true, 0}; }

    bool is_infinite = false;
    int value = 0;

    bool operator==(const Threshold&) const = default;
};

// A realized M/M/N/T+M chain: arrival rate l, N servers, admission
// threshold T (on the number in system), patience rate gamma, service
// rate mu.
struct StationaryModel {
    double l = 0.0;
    int n_servers = 0;
    Threshold threshold = Threshold::infinite();
    double gamma = 1.0;
    double mu = 1.0;

    void validate() const;
};

// Stationary distribution over states 0..T (or 0..truncation when T is
// infinite). Probabilities sum to 1; tail_bound bounds the truncated mass.
struct SteadyState {
    std::vector<double> probs;
    int truncation = 0;
    double tail_bound = 0.0;
};

struct PerformanceMeasures {
    double p_out = 0.0;  // probability an arrival is routed out
    double p_ab = 0.0;   // probability an arrival abandons
    double q_bar = 0.0;  // mean queue length
    double s_bar = 0.0;  // mean busy servers
    double z = 0.0;      // operating cost rate p*l*p_out + a'*gamma*q_bar
};

// Death rate in state n: min(n, N)*mu + gamma*[n - N]+.
double death_rate(int n, int n_servers, double gamma, double mu);

// Stationary distribution via log-space weight recursion normalized with
// log-sum-exp. Infinite thresholds are truncated where the remaining tail
// mass drops below 1e-12.
SteadyState steady_state(const StationaryModel& model);

PerformanceMeasures perf_measures(const StationaryModel& model, const SteadyState& ss,
                                  const CostParams& costs);

struct ThresholdSearchResult {
    Threshold t_opt = Threshold::infinite();
    double z_opt = 0.0;
    bool cap_reached = false;  // search hit the cap before a local increase
    int cap = 0;
};

// Optimal admission threshold for fixed (N, l): infinite when a' <= p,
// otherwise the first T >= N with z(T+1) >= z(T), capped at
// N + ceil(20*sqrt(max(l,1))) + 100.
ThresholdSearchResult threshold_search(int n_servers, double l, const CostParams& costs);

// Average-cost admission-control MDP solved by relative value iteration on
// the uniformized chain; a test oracle for threshold_search on small
// instances.
struct MdpSolution {
    std::vector<int> admit;  // admit[n] = 1 if an arrival in state n is accepted
    double average_cost = 0.0;

    // True when admit is 1..1 0..0; the switch index is the threshold.
    bool is_threshold_policy() const;
    // First state with admit = 0, or admit.size() when all-admit.
    int threshold() const;
};

MdpSolution mdp_oracle(int n_servers, double l, const CostParams& costs, int state_cap);

}  // namespace costaff
