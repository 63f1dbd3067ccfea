// Monte Carlo simulation of open gossip systems: single seeded realizations
// in fixed-size and growing modes, and ensembles with pointwise mean and
// standard error of the scale-independent moments.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "opengossip/config.hpp"
#include "opengossip/core.hpp"
#include "opengossip/events.hpp"
#include "opengossip/rng.hpp"
#include "opengossip/trajectory.hpp"

namespace opengossip {

struct EnsembleResult {
    Trajectory mean_trajectory;    // pointwise mean over replicates
    Trajectory stderr_trajectory;  // pointwise sample sd / sqrt(replicates)
    std::uint32_t replicates = 0;
};

inline SystemState initial_state(const SimConfig& cfg, RngStream& rng) {
    std::vector<double> values;
    values.reserve(cfg.n0);
    switch (cfg.init) {
        case InitKind::iid:
            for (std::uint32_t k = 0; k < cfg.n0; ++k)
                values.push_back(sample_arrival_value(cfg.dist, rng));
            break;
        case InitKind::consensus:
            values.assign(cfg.n0, cfg.consensus_value);
            break;
        case InitKind::explicit_values:
            values = cfg.init_values;
            break;
    }
    return make_state(std::move(values));
}

namespace detail {

inline TrajectorySample sample_of(const SystemState& state, EventTag tag,
                                  bool keep_values) {
    const EmpiricalMoments m = empirical_summary(state.values);
    TrajectorySample s;
    s.t = state.time;
    s.n = state.values.size();
    s.mean = m.mean;
    s.sq_mean = m.sq_mean;
    s.mean_sq = m.mean_sq;
    s.variance = m.variance;
    s.event = tag;
    if (keep_values) s.values = state.values;
    return s;
}

}  // namespace detail

// Fixed-size realization: starts from n0 agents, applies `horizon` sampled
// events (or runs until `stop_after_replacements` replacements), recording
// the moments after every event.
inline Trajectory run_fixed(const SimConfig& cfg, RngStream rng) {
    cfg.validate();
    if (cfg.mode != SimMode::fixed_size)
        throw std::invalid_argument("run_fixed: config mode must be fixed_size");

    SystemState state = initial_state(cfg, rng);
    Trajectory traj;
    traj.kind = TrajectoryKind::empirical_single;
    if (!cfg.stop_after_replacements)
        traj.samples.reserve(static_cast<std::size_t>(cfg.horizon) + 1);
    traj.samples.push_back(detail::sample_of(state, EventTag::none, cfg.record_values));

    std::uint64_t replacements = 0;
    std::uint64_t events = 0;
    while (true) {
        if (cfg.stop_after_replacements) {
            if (replacements >= *cfg.stop_after_replacements) break;
        } else if (events >= cfg.horizon) {
            break;
        }
        const EventKind ev = sample_event_fixed(state.size(), cfg.p, cfg.dist, rng);
        apply_event_inplace(state, ev);
        ++events;
        if (ev.type == EventType::replacement) ++replacements;
        traj.samples.push_back(detail::sample_of(state, tag_of(ev), cfg.record_values));
    }
    return traj;
}

// Growing realization: runs until `horizon` arrivals have occurred,
// recording the moments just after each arrival (per event when
// record_every_event is set).
inline Trajectory run_growing(const SimConfig& cfg, RngStream rng) {
    cfg.validate();
    if (cfg.mode != SimMode::growing)
        throw std::invalid_argument("run_growing: config mode must be growing");

    SystemState state = initial_state(cfg, rng);
    Trajectory traj;
    traj.kind = TrajectoryKind::empirical_single;
    if (!cfg.record_every_event)
        traj.samples.reserve(static_cast<std::size_t>(cfg.horizon) + 1);
    traj.samples.push_back(detail::sample_of(state, EventTag::none, cfg.record_values));

    std::uint64_t arrivals = 0;
    while (arrivals < cfg.horizon) {
        const double p_n = cfg.schedule.at(state.size());
        const EventKind ev = sample_event_growing(state.size(), p_n, cfg.dist, rng);
        apply_event_inplace(state, ev);
        if (ev.type == EventType::arrival) {
            ++arrivals;
            traj.samples.push_back(
                detail::sample_of(state, tag_of(ev), cfg.record_values));
        } else if (cfg.record_every_event) {
            traj.samples.push_back(
                detail::sample_of(state, tag_of(ev), cfg.record_values));
        }
    }
    return traj;
}

inline Trajectory run_single(const SimConfig& cfg, RngStream rng) {
    return cfg.mode == SimMode::fixed_size ? run_fixed(cfg, rng) : run_growing(cfg, rng);
}

// Ensemble of independent replicates on streams (seed, 0..R-1), aggregated
// in stream order. Samples are aligned by slot: event index in fixed mode,
// arrival index in growing mode.
inline EnsembleResult run_ensemble(const SimConfig& cfg, std::uint64_t base_seed) {
    cfg.validate();
    if (cfg.replicates < 2)
        throw std::invalid_argument(
            "run_ensemble: replicates must be >= 2 (standard error is undefined)");
    if (cfg.stop_after_replacements)
        throw std::invalid_argument("run_ensemble: ensembles require a fixed event horizon");

    struct Acc {
        RunningMoments t, mean, sq_mean, mean_sq, variance;
        std::uint64_t n = 0;
    };
    std::vector<Acc> slots;

    for (std::uint32_t rep = 0; rep < cfg.replicates; ++rep) {
        const Trajectory traj = run_single(cfg, RngStream(base_seed, rep));
        if (slots.empty()) {
            slots.resize(traj.samples.size());
        } else if (slots.size() != traj.samples.size()) {
            throw std::logic_error("run_ensemble: replicate sample counts diverged");
        }
        for (std::size_t k = 0; k < traj.samples.size(); ++k) {
            const TrajectorySample& s = traj.samples[k];
            Acc& a = slots[k];
            a.t.add(static_cast<double>(s.t));
            a.mean.add(s.mean);
            a.sq_mean.add(s.sq_mean);
            a.mean_sq.add(s.mean_sq);
            a.variance.add(s.variance);
            a.n = s.n;
        }
    }

    const double r = static_cast<double>(cfg.replicates);
    auto stderr_of = [&](const RunningMoments& m) {
        return std::sqrt(m.sum_sq_dev() / (r - 1.0)) / std::sqrt(r);
    };

    EnsembleResult result;
    result.replicates = cfg.replicates;
    result.mean_trajectory.kind = TrajectoryKind::empirical_ensemble_mean;
    result.stderr_trajectory.kind = TrajectoryKind::empirical_ensemble_mean;
    result.mean_trajectory.samples.reserve(slots.size());
    result.stderr_trajectory.samples.reserve(slots.size());
    for (const Acc& a : slots) {
        TrajectorySample mean_s;
        mean_s.t = static_cast<std::uint64_t>(std::llround(a.t.mean));
        mean_s.n = a.n;
        mean_s.mean = a.mean.mean;
        mean_s.sq_mean = a.sq_mean.mean;
        mean_s.mean_sq = a.mean_sq.mean;
        mean_s.variance = a.variance.mean;
        result.mean_trajectory.samples.push_back(mean_s);

        TrajectorySample se_s;
        se_s.t = mean_s.t;
        se_s.n = a.n;
        se_s.mean = stderr_of(a.mean);
        se_s.sq_mean = stderr_of(a.sq_mean);
        se_s.mean_sq = stderr_of(a.mean_sq);
        se_s.variance = stderr_of(a.variance);
        result.stderr_trajectory.samples.push_back(se_s);
    }
    return result;
}

}  // namespace opengossip
