// Time-indexed records of simulated or analytically propagated moments.
#pragma once

#include <cstdint>
#include <vector>

namespace opengossip {

enum class TrajectoryKind { empirical_single, empirical_ensemble_mean, analytic };

enum class EventTag { none, gossip, departure, arrival, replacement };

inline const char* to_string(EventTag tag) {
    switch (tag) {
        case EventTag::none: return "init";
        case EventTag::gossip: return "gossip";
        case EventTag::departure: return "departure";
        case EventTag::arrival: return "arrival";
        case EventTag::replacement: return "replacement";
    }
    return "?";
}

struct TrajectorySample {
    std::uint64_t t = 0;
    std::uint64_t n = 0;
    double mean = 0.0;
    double sq_mean = 0.0;
    double mean_sq = 0.0;
    double variance = 0.0;
    EventTag event = EventTag::none;
    std::vector<double> values;  // populated only when value recording is on
};

struct Trajectory {
    TrajectoryKind kind = TrajectoryKind::empirical_single;
    std::vector<TrajectorySample> samples;
};

}  // namespace opengossip
