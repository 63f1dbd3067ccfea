// Pointwise comparison of ensemble moment trajectories against an analytic
// reference, in units of the ensemble standard error.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "opengossip/core.hpp"
#include "opengossip/sim.hpp"

namespace opengossip {

struct SeriesCheck {
    std::size_t points = 0;
    std::size_t within = 0;
    double max_abs_z = 0.0;
    std::size_t worst_slot = 0;
    bool pass = false;

    double fraction_within() const {
        return points == 0 ? 1.0 : static_cast<double>(within) / static_cast<double>(points);
    }
};

struct ComparisonReport {
    SeriesCheck sq_mean;
    SeriesCheck mean_sq;
    SeriesCheck variance;
    double k = 4.0;
    double min_fraction = 0.99;
    bool pass = false;
};

namespace detail {

// A point with zero standard error (deterministic start, degenerate config)
// passes only if the values agree to within floating-point noise.
inline double z_score(double empirical, double reference, double se) {
    if (se > 0.0) return std::abs(empirical - reference) / se;
    const double tol = 1e-12 * std::max(1.0, std::abs(reference));
    return std::abs(empirical - reference) <= tol
               ? 0.0
               : std::numeric_limits<double>::infinity();
}

inline void tally(SeriesCheck& check, std::size_t slot, double empirical,
                  double reference, double se, double k) {
    const double z = z_score(empirical, reference, se);
    ++check.points;
    if (z <= k) ++check.within;
    if (z > check.max_abs_z) {
        check.max_abs_z = z;
        check.worst_slot = slot;
    }
}

}  // namespace detail

// Compares the ensemble mean of each moment against `reference` slot by
// slot, starting at `from_slot`. A series passes when at least
// `min_fraction` of its points fall within k standard errors.
inline ComparisonReport compare_trajectories(const EnsembleResult& ensemble,
                                             const std::vector<MomentVector>& reference,
                                             double k = 4.0, double min_fraction = 0.99,
                                             std::size_t from_slot = 0) {
    const auto& means = ensemble.mean_trajectory.samples;
    const auto& ses = ensemble.stderr_trajectory.samples;
    if (means.size() != reference.size())
        throw std::invalid_argument(
            "compare_trajectories: ensemble and reference horizons are misaligned");
    if (!(k > 0.0)) throw std::invalid_argument("compare_trajectories: k must be > 0");
    if (from_slot >= means.size())
        throw std::invalid_argument("compare_trajectories: from_slot beyond series end");

    ComparisonReport report;
    report.k = k;
    report.min_fraction = min_fraction;
    for (std::size_t s = from_slot; s < means.size(); ++s) {
        const MomentVector& ref = reference[s];
        detail::tally(report.sq_mean, s, means[s].sq_mean, ref.sq_mean, ses[s].sq_mean, k);
        detail::tally(report.mean_sq, s, means[s].mean_sq, ref.mean_sq, ses[s].mean_sq, k);
        detail::tally(report.variance, s, means[s].variance, ref.variance(),
                      ses[s].variance, k);
    }
    for (SeriesCheck* c : {&report.sq_mean, &report.mean_sq, &report.variance})
        c->pass = c->fraction_within() >= min_fraction;
    report.pass = report.sq_mean.pass && report.mean_sq.pass && report.variance.pass;
    return report;
}

}  // namespace opengossip
