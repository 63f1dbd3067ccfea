// Exhaustive one-step conditional expectations E(X' | x) for each event type
// on small systems. These enumerate every equally likely branch of one event
// and average the resulting empirical moments; they provide ground truth for
// the closed-form maps without touching any of their code paths.
//
// Arrivals use the two-point distribution +-sqrt(sigma2): the expected
// moments after an arrival depend on the value distribution only through its
// mean and variance, so two branches are exact for any zero-mean choice.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "opengossip/core.hpp"

namespace opengossip {

inline constexpr std::size_t oracle_max_size = 8;

namespace detail {

inline void check_oracle_size(std::size_t n, std::size_t min_n, const char* who) {
    if (n < min_n || n > oracle_max_size)
        throw std::invalid_argument(std::string(who) + ": system size out of oracle range");
}

// compensated accumulator for branch averages
struct BranchSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double t = sum + x;
        carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    double average(double branches) const { return (sum + carry) / branches; }
};

}  // namespace detail

// Averages over all n^2 ordered pairs (i, j), self-pairs included.
inline MomentVector gossip_oracle(std::span<const double> x) {
    const std::size_t n = x.size();
    detail::check_oracle_size(n, 1, "gossip_oracle");
    detail::BranchSum sq, ms;
    std::vector<double> y(x.begin(), x.end());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            y.assign(x.begin(), x.end());
            const double mid = 0.5 * (y[i] + y[j]);
            y[i] = mid;
            y[j] = mid;
            const MomentVector m = empirical_summary(y).moments();
            sq.add(m.sq_mean);
            ms.add(m.mean_sq);
        }
    }
    const double branches = static_cast<double>(n * n);
    return {sq.average(branches), ms.average(branches)};
}

// Averages over the n equally likely departures.
inline MomentVector departure_oracle(std::span<const double> x) {
    const std::size_t n = x.size();
    detail::check_oracle_size(n, 2, "departure_oracle");
    detail::BranchSum sq, ms;
    std::vector<double> y;
    for (std::size_t i = 0; i < n; ++i) {
        y.assign(x.begin(), x.end());
        y.erase(y.begin() + static_cast<std::ptrdiff_t>(i));
        const MomentVector m = empirical_summary(y).moments();
        sq.add(m.sq_mean);
        ms.add(m.mean_sq);
    }
    const double branches = static_cast<double>(n);
    return {sq.average(branches), ms.average(branches)};
}

// Averages the two branches of a +-sqrt(sigma2) arrival.
inline MomentVector arrival_oracle(std::span<const double> x, double sigma2) {
    const std::size_t n = x.size();
    detail::check_oracle_size(n, 1, "arrival_oracle");
    if (!(sigma2 >= 0.0))
        throw std::invalid_argument("arrival_oracle: sigma2 must be >= 0");
    const double s = std::sqrt(sigma2);
    detail::BranchSum sq, ms;
    std::vector<double> y;
    for (const double v : {s, -s}) {
        y.assign(x.begin(), x.end());
        y.push_back(v);
        const MomentVector m = empirical_summary(y).moments();
        sq.add(m.sq_mean);
        ms.add(m.mean_sq);
    }
    return {sq.average(2.0), ms.average(2.0)};
}

// Averages over all n departures x 2 arrival branches of one replacement.
inline MomentVector replacement_oracle(std::span<const double> x, double sigma2) {
    const std::size_t n = x.size();
    detail::check_oracle_size(n, 2, "replacement_oracle");
    if (!(sigma2 >= 0.0))
        throw std::invalid_argument("replacement_oracle: sigma2 must be >= 0");
    const double s = std::sqrt(sigma2);
    detail::BranchSum sq, ms;
    std::vector<double> y;
    for (std::size_t i = 0; i < n; ++i) {
        for (const double v : {s, -s}) {
            y.assign(x.begin(), x.end());
            y.erase(y.begin() + static_cast<std::ptrdiff_t>(i));
            y.push_back(v);
            const MomentVector m = empirical_summary(y).moments();
            sq.add(m.sq_mean);
            ms.add(m.mean_sq);
        }
    }
    const double branches = static_cast<double>(2 * n);
    return {sq.average(branches), ms.average(branches)};
}

}  // namespace opengossip
