// Discrete events acting on a SystemState, and the samplers that draw them.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "opengossip/core.hpp"
#include "opengossip/rng.hpp"
#include "opengossip/trajectory.hpp"

namespace opengossip {

enum class EventType { gossip, departure, arrival, replacement };

struct EventKind {
    EventType type = EventType::gossip;
    std::uint64_t i = 0;  // gossip first index / departing or replaced index
    std::uint64_t j = 0;  // gossip second index
    double value = 0.0;   // arriving value

    static EventKind make_gossip(std::uint64_t i, std::uint64_t j) {
        return {EventType::gossip, i, j, 0.0};
    }
    static EventKind make_departure(std::uint64_t i) {
        return {EventType::departure, i, 0, 0.0};
    }
    static EventKind make_arrival(double value) {
        return {EventType::arrival, 0, 0, value};
    }
    static EventKind make_replacement(std::uint64_t i, double value) {
        return {EventType::replacement, i, 0, value};
    }
};

inline EventTag tag_of(const EventKind& ev) {
    switch (ev.type) {
        case EventType::gossip: return EventTag::gossip;
        case EventType::departure: return EventTag::departure;
        case EventType::arrival: return EventTag::arrival;
        case EventType::replacement: return EventTag::replacement;
    }
    return EventTag::none;
}

inline double sample_arrival_value(const ArrivalDistribution& dist, RngStream& rng) {
    switch (dist.kind) {
        case ArrivalKind::uniform_centered: {
            const double half_width = std::sqrt(3.0 * dist.sigma2);
            return rng.uniform(-half_width, half_width);
        }
        case ArrivalKind::gaussian:
            return std::sqrt(dist.sigma2) * rng.gaussian();
        case ArrivalKind::two_point:
            return rng.bernoulli(0.5) ? std::sqrt(dist.sigma2) : -std::sqrt(dist.sigma2);
        case ArrivalKind::degenerate_zero:
            return 0.0;
    }
    throw std::logic_error("sample_arrival_value: unknown kind");
}

// Applies one event in place. The event clock advances by exactly 1; a
// self-gossip (i == j) leaves the values bit-identical.
inline void apply_event_inplace(SystemState& state, const EventKind& ev) {
    const std::size_t n = state.values.size();
    switch (ev.type) {
        case EventType::gossip: {
            if (ev.i >= n || ev.j >= n)
                throw std::out_of_range("apply_event: gossip index out of range");
            if (ev.i != ev.j) {
                const double mid = 0.5 * (state.values[ev.i] + state.values[ev.j]);
                state.values[ev.i] = mid;
                state.values[ev.j] = mid;
            }
            break;
        }
        case EventType::departure: {
            if (n == 0)
                throw std::invalid_argument("apply_event: departure from an empty system");
            if (ev.i >= n)
                throw std::out_of_range("apply_event: departure index out of range");
            state.values.erase(state.values.begin() +
                               static_cast<std::ptrdiff_t>(ev.i));
            break;
        }
        case EventType::arrival: {
            state.values.push_back(ev.value);
            ++state.next_label;
            break;
        }
        case EventType::replacement: {
            if (n == 0)
                throw std::invalid_argument(
                    "apply_event: replacement requires a departing agent");
            if (ev.i >= n)
                throw std::out_of_range("apply_event: replacement index out of range");
            state.values.erase(state.values.begin() +
                               static_cast<std::ptrdiff_t>(ev.i));
            state.values.push_back(ev.value);
            ++state.next_label;
            break;
        }
    }
    ++state.time;
}

inline SystemState apply_event(const SystemState& state, const EventKind& ev) {
    SystemState next = state;
    apply_event_inplace(next, ev);
    return next;
}

// Fixed-size mode: replacement with probability p, otherwise a gossip step
// with an ordered pair (i, j) drawn independently and uniformly (i == j is
// allowed and applies as a no-op).
inline EventKind sample_event_fixed(std::size_t n, double p,
                                    const ArrivalDistribution& dist, RngStream& rng) {
    if (n < 2) throw std::invalid_argument("sample_event_fixed: n must be >= 2");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("sample_event_fixed: p must lie in [0,1]");
    if (rng.bernoulli(p)) {
        const std::uint64_t i = rng.below(n);
        return EventKind::make_replacement(i, sample_arrival_value(dist, rng));
    }
    const std::uint64_t i = rng.below(n);
    const std::uint64_t j = rng.below(n);
    return EventKind::make_gossip(i, j);
}

// Growing mode: arrival with probability p_n, otherwise a gossip step. The
// number of gossip steps between consecutive arrivals is geometric:
// P(K = k) = (1 - p_n)^k p_n.
inline EventKind sample_event_growing(std::size_t n, double p_n,
                                      const ArrivalDistribution& dist, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("sample_event_growing: n must be >= 1");
    if (!(p_n > 0.0 && p_n <= 1.0))
        throw std::invalid_argument("sample_event_growing: p_n must lie in (0,1]");
    if (rng.bernoulli(p_n))
        return EventKind::make_arrival(sample_arrival_value(dist, rng));
    const std::uint64_t i = rng.below(n);
    const std::uint64_t j = rng.below(n);
    return EventKind::make_gossip(i, j);
}

}  // namespace opengossip
