#pragma once

#include <cstdint>

#include "costaff/queue_core.hpp"

namespace costaff {

struct SimConfig {
    StationaryModel model;
    CostParams costs;
    double horizon = 1e5;   // simulated time units
    double warmup = 1e4;    // discarded prefix
    int batches = 20;       // batch-means batches
    std::uint64_t seed = 1;

    void validate() const;
};

struct Estimate {
    double value = 0.0;
    double half_width = 0.0;  // 95% batch-means half width
};

struct SimEstimate {
    Estimate p_out;
    Estimate p_ab;
    Estimate q_bar;
    Estimate z;
    // Whole-run event counts; admitted = served + abandoned + in_system_end.
    std::uint64_t arrivals = 0;
    std::uint64_t admitted = 0;
    std::uint64_t outsourced = 0;
    std::uint64_t served = 0;
    std::uint64_t abandoned = 0;
    std::uint64_t in_system_end = 0;
};

// Event-driven simulation of the realized M/M/N+M system with threshold
// admission. Abandonment is implemented by per-customer patience deadlines
// drawn at arrival, which is equivalent in law to Markovian abandonment.
// Deterministic for a fixed seed. Throws DegenerateHorizonError when a
// batch would hold fewer than 10 events (except in the trivial l = 0 case,
// whose estimates are exactly zero).
SimEstimate simulate(const SimConfig& config);

}  // namespace costaff
