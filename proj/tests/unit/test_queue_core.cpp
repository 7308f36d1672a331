#include <doctest.h>

#include <cmath>

#include "costaff/queue_core.hpp"
#include "costaff/rng.hpp"
#include "support/oracles.hpp"

using namespace costaff;

namespace {

CostParams base_costs() {
    return {};  // c=0.1, p=1, a=5, w=0, gamma=1, mu=1
}

}  // namespace

TEST_CASE("death rate") {
    CHECK(death_rate(0, 3, 1.0, 1.0) == 0.0);
    CHECK(death_rate(3, 3, 1.0, 1.0) == 3.0);
    CHECK(death_rate(5, 2, 1.0, 1.0) == 5.0);  // 2*mu + 3*gamma
    CHECK(death_rate(5, 2, 0.5, 2.0) == doctest::Approx(5.5));
}

TEST_CASE("steady state, empty system") {
    const StationaryModel model{0.0, 3, Threshold::finite(5), 1.0, 1.0};
    const SteadyState ss = steady_state(model);
    CHECK(ss.probs[0] == 1.0);
    for (size_t k = 1; k < ss.probs.size(); ++k) CHECK(ss.probs[k] == 0.0);
}

TEST_CASE("steady state, two-state chain") {
    const StationaryModel model{1.0, 1, Threshold::finite(1), 1.0, 1.0};
    const SteadyState ss = steady_state(model);
    REQUIRE(ss.probs.size() == 2);
    CHECK(ss.probs[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ss.probs[1] == doctest::Approx(0.5).epsilon(1e-14));

    const PerformanceMeasures pm = perf_measures(model, ss, base_costs());
    CHECK(pm.p_out == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(pm.z == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(pm.q_bar == 0.0);
}

TEST_CASE("steady state matches a dense balance-equation solve") {
    const StationaryModel model{3.0, 2, Threshold::finite(4), 1.0, 1.0};
    const SteadyState ss = steady_state(model);
    const auto dense = testing::dense_chain_solve(3.0, 2, 4, 1.0, 1.0);
    REQUIRE(ss.probs.size() == dense.size());
    for (size_t k = 0; k < dense.size(); ++k) {
        CHECK(ss.probs[k] == doctest::Approx(dense[k]).epsilon(1e-12));
    }
}

TEST_CASE("steady state matches the dense solve on random models up to N=50") {
    Xoshiro256pp rng(7);
    for (int i = 0; i < 30; ++i) {
        const int n = 1 + static_cast<int>(49 * rng.uniform01());
        const int t = n + static_cast<int>(60 * rng.uniform01());
        const double l = 0.2 + 70.0 * rng.uniform01();
        const double gamma = 0.2 + 2.0 * rng.uniform01();
        const double mu = 0.5 + 1.5 * rng.uniform01();
        const StationaryModel model{l, n, Threshold::finite(t), gamma, mu};
        const SteadyState ss = steady_state(model);
        const auto dense = testing::dense_chain_solve(l, n, t, gamma, mu);
        for (size_t k = 0; k < dense.size(); ++k) {
            // Relative agreement above the dense solver's ~1e-16 noise
            // floor; deep-tail states only need absolute agreement there.
            CHECK(std::abs(ss.probs[k] - dense[k]) <= 1e-13 + 1e-10 * dense[k]);
        }
    }
}

TEST_CASE("stationary identities on random models") {
    Xoshiro256pp rng(11);
    for (int i = 0; i < 60; ++i) {
        const int n = static_cast<int>(200 * rng.uniform01());
        const bool infinite = rng.uniform01() < 0.3;
        const int t = n + static_cast<int>(200 * rng.uniform01());
        const double l = 300.0 * rng.uniform01();
        CostParams costs = base_costs();
        costs.gamma = 0.1 + 3.0 * rng.uniform01();
        costs.mu = 0.3 + 2.0 * rng.uniform01();
        const StationaryModel model{
            l, n, infinite ? Threshold::infinite() : Threshold::finite(t), costs.gamma, costs.mu};
        const SteadyState ss = steady_state(model);

        double total = 0.0;
        for (double pk : ss.probs) {
            CHECK(pk >= 0.0);
            total += pk;
        }
        CHECK(std::abs(total - 1.0) < 1e-12);

        const PerformanceMeasures pm = perf_measures(model, ss, costs);
        // Rate in = rate out, and abandonment flow matches the mean queue.
        const double scale = std::max(1.0, l);
        CHECK(std::abs(l * (1.0 - pm.p_out) - (costs.mu * pm.s_bar + l * pm.p_ab)) <
              1e-9 * scale);
        CHECK(std::abs(l * pm.p_ab - costs.gamma * pm.q_bar) < 1e-9 * scale);
    }
}

TEST_CASE("steady state handles large loads without overflow") {
    const StationaryModel model{1600.0, 1685, Threshold::finite(1760), 1.0, 1.0};
    const SteadyState ss = steady_state(model);
    double total = 0.0;
    for (double pk : ss.probs) total += pk;
    CHECK(std::abs(total - 1.0) < 1e-12);
}

TEST_CASE("infinite threshold truncation covers the bulk of the chain") {
    const StationaryModel model{100.0, 0, Threshold::infinite(), 1.0, 1.0};
    const SteadyState ss = steady_state(model);
    // N = 0 and gamma = 1 gives a Poisson(100) queue; the mean must appear.
    const PerformanceMeasures pm = perf_measures(model, ss, base_costs());
    CHECK(pm.q_bar == doctest::Approx(100.0).epsilon(1e-9));
    CHECK(ss.tail_bound < 1e-12);
}

TEST_CASE("threshold search, never-outsource regime") {
    CostParams costs = base_costs();
    costs.a = 1.0;
    costs.p = 5.0;
    const ThresholdSearchResult r = threshold_search(4, 6.0, costs);
    CHECK(r.t_opt.is_infinite);
    // Cost equals the tau(infinity) evaluation.
    const StationaryModel model{6.0, 4, Threshold::infinite(), 1.0, 1.0};
    const double z_inf = perf_measures(model, steady_state(model), costs).z;
    CHECK(r.z_opt == doctest::Approx(z_inf).epsilon(1e-12));
}

TEST_CASE("threshold search, empty system") {
    const ThresholdSearchResult r = threshold_search(5, 0.0, base_costs());
    CHECK_FALSE(r.t_opt.is_infinite);
    CHECK(r.t_opt.value == 5);
    CHECK(r.z_opt == 0.0);
}

TEST_CASE("threshold search matches the exhaustive grid") {
    const CostParams costs = base_costs();
    const ThresholdSearchResult r = threshold_search(121, 100.0, costs);
    REQUIRE_FALSE(r.t_opt.is_infinite);
    const auto grid = testing::grid_threshold_min(121, 100.0, r.cap, costs);
    CHECK(r.t_opt.value == grid.t_opt);
    CHECK(r.z_opt == doctest::Approx(grid.z_opt).epsilon(1e-12));
}

TEST_CASE("threshold search matches the grid on random small instances") {
    Xoshiro256pp rng(13);
    for (int i = 0; i < 100; ++i) {
        const int n = static_cast<int>(25 * rng.uniform01());
        const double l = 0.1 + 30.0 * rng.uniform01();
        CostParams costs = base_costs();
        costs.p = 0.2 + 2.0 * rng.uniform01();
        costs.a = costs.p + 0.1 + 4.0 * rng.uniform01();  // keep a' > p
        costs.gamma = 0.2 + 2.0 * rng.uniform01();
        const ThresholdSearchResult r = threshold_search(n, l, costs);
        REQUIRE_FALSE(r.t_opt.is_infinite);
        const auto grid = testing::grid_threshold_min(n, l, r.cap, costs);
        // On heavily overstaffed instances the cost curve plateaus at machine
        // precision and the argmin is only defined up to that flatness.
        const double z_at_search = testing::z_of_threshold(n, l, r.t_opt.value, costs);
        const bool flat =
            std::abs(z_at_search - grid.z_opt) <= 1e-12 * std::max(grid.z_opt, 1e-300);
        CHECK((r.t_opt.value == grid.t_opt || flat));
        CHECK(r.z_opt == doctest::Approx(grid.z_opt).epsilon(1e-9));
    }
}

TEST_CASE("mdp oracle agrees with the threshold search") {
    const CostParams costs = base_costs();
    const MdpSolution sol = mdp_oracle(3, 3.0, costs, 80);
    CHECK(sol.is_threshold_policy());
    const ThresholdSearchResult r = threshold_search(3, 3.0, costs);
    REQUIRE_FALSE(r.t_opt.is_infinite);
    CHECK(sol.threshold() == r.t_opt.value);
    CHECK(sol.average_cost == doctest::Approx(r.z_opt).epsilon(1e-6));
}

TEST_CASE("mdp oracle admits everywhere when outsourcing dominates abandonment") {
    CostParams costs = base_costs();
    costs.a = 1.0;
    costs.p = 5.0;
    const MdpSolution sol = mdp_oracle(2, 3.0, costs, 60);
    for (size_t k = 0; k + 1 < sol.admit.size(); ++k) {
        CHECK(sol.admit[k] == 1);
    }
}

TEST_CASE("mdp oracle, empty system") {
    const MdpSolution sol = mdp_oracle(2, 0.0, base_costs(), 40);
    CHECK(sol.average_cost == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(steady_state(StationaryModel{-1.0, 1, Threshold::finite(1), 1.0, 1.0}),
                    Error);
    CHECK_THROWS_AS(steady_state(StationaryModel{1.0, 3, Threshold::finite(2), 1.0, 1.0}),
                    Error);
    CHECK_THROWS_AS(steady_state(StationaryModel{1.0, 1, Threshold::finite(1), 0.0, 1.0}),
                    Error);
}
