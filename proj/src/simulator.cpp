#include "costaff/simulator.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <cstdint>
#include <deque>
#include <queue>
#include <unordered_set>
#include <vector>

#include "costaff/rng.hpp"

namespace costaff {

void SimConfig::validate() const {
    model.validate();
    costs.validate();
    if (!(horizon > warmup) || warmup < 0.0) {
        throw Error("need horizon > warmup >= 0");
    }
    if (batches < 2) {
        throw Error("batch means needs at least 2 batches");
    }
}

namespace {

enum class EventType : std::uint8_t { Arrival, ServiceDone, Abandon };

struct Event {
    double time;
    std::uint64_t seq;  // deterministic tie-break
    EventType type;
    std::uint64_t customer;
};

struct EventLater {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.seq > b.seq;
    }
};

struct BatchAccumulator {
    std::uint64_t arrivals = 0;
    std::uint64_t outsourced = 0;
    std::uint64_t abandoned = 0;
    double queue_time = 0.0;  // integral of queue length over the batch
};

Estimate batch_mean(const std::vector<double>& samples, double t_quantile) {
    const double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= n;
    double var = 0.0;
    for (double s : samples) var += (s - mean) * (s - mean);
    var /= (n - 1.0);
    return {mean, t_quantile * std::sqrt(var / n)};
}

}  // namespace

SimEstimate simulate(const SimConfig& config) {
    config.validate();
    SimEstimate out;
    if (config.model.l == 0.0) {
        return out;  // no arrivals ever; every estimate is exactly zero
    }

    const double l = config.model.l;
    const int n_servers = config.model.n_servers;
    const double mu = config.model.mu;
    const double gamma = config.model.gamma;
    const Threshold threshold = config.model.threshold;
    const double a_eff = config.costs.effective_abandon_cost();

    Xoshiro256pp rng(config.seed);
    std::priority_queue<Event, std::vector<Event>, EventLater> calendar;
    std::uint64_t seq = 0;
    const auto schedule = [&](double time, EventType type, std::uint64_t customer) {
        calendar.push({time, seq++, type, customer});
    };

    // Waiting room: FIFO ids plus the set of ids still waiting. Customers
    // that abandoned stay in the deque and are skipped when a server frees.
    std::deque<std::uint64_t> fifo;
    std::unordered_set<std::uint64_t> waiting;
    std::uint64_t next_customer = 0;
    int busy = 0;
    int in_system = 0;

    const int batches = config.batches;
    const double batch_len = (config.horizon - config.warmup) / batches;
    std::vector<BatchAccumulator> acc(static_cast<size_t>(batches));
    std::uint64_t measured_events = 0;

    const auto batch_of = [&](double t) {
        const int b = static_cast<int>((t - config.warmup) / batch_len);
        return std::min(std::max(b, 0), batches - 1);
    };

    double now = 0.0;
    // Distribute the queue-length integral over the batch windows it spans.
    const auto advance_time = [&](double to) {
        if (in_system > n_servers) {
            const double q = in_system - n_servers;
            double from = std::max(now, config.warmup);
            const double end = std::min(to, config.horizon);
            while (from < end) {
                const int b = batch_of(from);
                const double edge = std::min(end, config.warmup + (b + 1) * batch_len);
                acc[static_cast<size_t>(b)].queue_time += q * (edge - from);
                from = edge;
            }
        }
        now = to;
    };

    schedule(rng.exponential(l), EventType::Arrival, 0);
    while (!calendar.empty()) {
        const Event ev = calendar.top();
        if (ev.time >= config.horizon) break;
        calendar.pop();
        advance_time(ev.time);
        const bool measured = now >= config.warmup;
        if (measured) ++measured_events;

        switch (ev.type) {
            case EventType::Arrival: {
                ++out.arrivals;
                const std::uint64_t id = next_customer++;
                const bool admit = threshold.is_infinite || in_system < threshold.value;
                if (admit) {
                    ++out.admitted;
                    ++in_system;
                    if (busy < n_servers) {
                        ++busy;
                        schedule(now + rng.exponential(mu), EventType::ServiceDone, id);
                    } else {
                        fifo.push_back(id);
                        waiting.insert(id);
                        schedule(now + rng.exponential(gamma), EventType::Abandon, id);
                    }
                } else {
                    ++out.outsourced;
                    if (measured) ++acc[static_cast<size_t>(batch_of(now))].outsourced;
                }
                if (measured) ++acc[static_cast<size_t>(batch_of(now))].arrivals;
                schedule(now + rng.exponential(l), EventType::Arrival, 0);
                break;
            }
            case EventType::ServiceDone: {
                ++out.served;
                --busy;
                --in_system;
                while (!fifo.empty()) {
                    const std::uint64_t id = fifo.front();
                    fifo.pop_front();
                    if (waiting.erase(id) > 0) {
                        ++busy;
                        schedule(now + rng.exponential(mu), EventType::ServiceDone, id);
                        break;
                    }
                }
                break;
            }
            case EventType::Abandon: {
                if (waiting.erase(ev.customer) > 0) {
                    ++out.abandoned;
                    --in_system;
                    if (measured) ++acc[static_cast<size_t>(batch_of(now))].abandoned;
                }
                break;
            }
        }
    }
    advance_time(config.horizon);
    out.in_system_end = static_cast<std::uint64_t>(in_system);

    if (measured_events < 10 * static_cast<std::uint64_t>(batches)) {
        throw DegenerateHorizonError("fewer than 10 events per batch; extend the horizon");
    }

    const boost::math::students_t tdist(batches - 1);
    const double tq = boost::math::quantile(tdist, 0.975);
    std::vector<double> p_out_s, p_ab_s, q_s, z_s;
    for (const BatchAccumulator& b : acc) {
        const double arr = static_cast<double>(b.arrivals);
        p_out_s.push_back(arr > 0 ? b.outsourced / arr : 0.0);
        p_ab_s.push_back(arr > 0 ? b.abandoned / arr : 0.0);
        q_s.push_back(b.queue_time / batch_len);
        z_s.push_back((config.costs.p * b.outsourced + a_eff * b.abandoned) / batch_len);
    }
    out.p_out = batch_mean(p_out_s, tq);
    out.p_ab = batch_mean(p_ab_s, tq);
    out.q_bar = batch_mean(q_s, tq);
    out.z = batch_mean(z_s, tq);
    return out;
}

}  // namespace costaff
