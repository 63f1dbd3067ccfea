// Run configuration for the simulator: event probabilities, arrival value
// distribution, size schedule, horizon, seeding and replication.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "opengossip/core.hpp"

namespace opengossip {

// Arrival probability p_n as a function of the current system size n.
//   constant:     p_n = p
//   arrival_rate: p_n = lambda_a / (lambda_a + lambda_g * n)
//                 (fixed per-unit-time arrival rate against gossip rate ~n)
//   harmonic:     p_n = min(1, c / n)
//   table:        p_n = table[n-1], clamped to the last entry beyond the end
struct GrowthSchedule {
    enum class Kind { constant, arrival_rate, harmonic, table };

    Kind kind = Kind::constant;
    double p = 1.0;
    double lambda_a = 1.0;
    double lambda_g = 1.0;
    double c = 1.0;
    std::vector<double> table;

    double at(std::uint64_t n) const {
        switch (kind) {
            case Kind::constant:
                return p;
            case Kind::arrival_rate:
                return lambda_a / (lambda_a + lambda_g * static_cast<double>(n));
            case Kind::harmonic: {
                const double v = c / static_cast<double>(n);
                return v < 1.0 ? v : 1.0;
            }
            case Kind::table: {
                if (table.empty())
                    throw std::invalid_argument("growth schedule: empty table");
                const std::size_t i = n >= 1 ? static_cast<std::size_t>(n - 1) : 0;
                return i < table.size() ? table[i] : table.back();
            }
        }
        throw std::logic_error("growth schedule: unknown kind");
    }

    void validate() const {
        switch (kind) {
            case Kind::constant:
                if (!(p > 0.0 && p <= 1.0))
                    throw std::invalid_argument("growth schedule: constant p must lie in (0,1]");
                break;
            case Kind::arrival_rate:
                if (!(lambda_a > 0.0) || !(lambda_g >= 0.0))
                    throw std::invalid_argument(
                        "growth schedule: arrival_rate requires lambda_a > 0 and lambda_g >= 0");
                break;
            case Kind::harmonic:
                if (!(c > 0.0))
                    throw std::invalid_argument("growth schedule: harmonic c must be > 0");
                break;
            case Kind::table:
                if (table.empty())
                    throw std::invalid_argument("growth schedule: empty table");
                for (double v : table)
                    if (!(v > 0.0 && v <= 1.0))
                        throw std::invalid_argument(
                            "growth schedule: table entries must lie in (0,1]");
                break;
        }
    }
};

enum class SimMode { fixed_size, growing };

enum class InitKind { iid, consensus, explicit_values };

struct SimConfig {
    SimMode mode = SimMode::fixed_size;
    std::uint32_t n0 = 2;

    // fixed_size mode: per-event replacement probability. p = 0 gives a
    // closed gossip-only system.
    double p = 0.5;

    // growing mode: arrival probability schedule.
    GrowthSchedule schedule{};

    ArrivalDistribution dist{};

    // Event count (fixed_size) or arrival count (growing).
    std::uint64_t horizon = 1;

    // fixed_size single runs: stop after this many replacements instead of
    // after `horizon` events.
    std::optional<std::uint64_t> stop_after_replacements{};

    std::uint32_t replicates = 1;
    std::uint64_t seed = 0;

    InitKind init = InitKind::iid;
    double consensus_value = 0.0;
    std::vector<double> init_values;

    bool record_values = false;       // keep per-agent values in each sample
    bool record_every_event = false;  // growing mode: sample per event, not per arrival

    void validate() const {
        dist.validate();
        if (horizon < 1)
            throw std::invalid_argument("config: horizon must be >= 1");
        if (replicates < 1)
            throw std::invalid_argument("config: replicates must be >= 1");
        if (mode == SimMode::fixed_size) {
            if (n0 < 2)
                throw std::invalid_argument("config: fixed_size mode requires n0 >= 2");
            if (!(p >= 0.0 && p <= 1.0))
                throw std::invalid_argument(
                    "config: replacement probability p must lie in [0,1]");
            if (stop_after_replacements) {
                if (replicates != 1)
                    throw std::invalid_argument(
                        "config: stop_after_replacements requires replicates == 1");
                if (!(p > 0.0))
                    throw std::invalid_argument(
                        "config: stop_after_replacements requires p > 0");
                if (*stop_after_replacements < 1)
                    throw std::invalid_argument(
                        "config: stop_after_replacements must be >= 1");
            }
        } else {
            if (n0 < 1)
                throw std::invalid_argument("config: growing mode requires n0 >= 1");
            schedule.validate();
            if (stop_after_replacements)
                throw std::invalid_argument(
                    "config: stop_after_replacements applies to fixed_size mode only");
        }
        if (init == InitKind::explicit_values && init_values.size() != n0)
            throw std::invalid_argument("config: explicit initial values must have length n0");
        if (record_values && mode != SimMode::fixed_size)
            throw std::invalid_argument("config: value recording applies to fixed_size mode");
        if (replicates > 1) {
            if (record_values)
                throw std::invalid_argument("config: value recording is single-replicate only");
            if (record_every_event && mode == SimMode::growing)
                throw std::invalid_argument(
                    "config: per-event recording in growing mode is single-replicate only");
        }
    }
};

}  // namespace opengossip
