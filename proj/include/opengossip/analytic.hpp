// Closed-form expected-moment dynamics for open gossip systems.
//
// Every event type (gossip, arrival, departure, replacement) acts on the
// expected moment vector X = (sq_mean, mean_sq) as an affine map; this header
// implements those maps, the per-event mixed map for fixed-size systems with
// random replacements, its fixed point and spectrum, the inter-arrival map
// for growing systems, the scaled-variance recursion and its upper bound,
// and the closed-system baseline they are measured against.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "opengossip/core.hpp"

namespace opengossip {

// One gossip step at size n:
//   sq_mean' = sq_mean
//   mean_sq' = sq_mean/n + (1 - 1/n) * mean_sq
// so the variance contracts by exactly (1 - 1/n) in expectation.
inline AffineMap2 gossip_map(std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("gossip_map: n must be >= 1");
    const double inv = 1.0 / static_cast<double>(n);
    return {1.0, 0.0, inv, 1.0 - inv, 0.0, 0.0};
}

// Arrival of one zero-mean, variance-sigma2 value into a system of size n:
//   A = diag(n^2/(n+1)^2, n/(n+1)),  b = sigma2 * (1/(n+1)^2, 1/(n+1))
inline AffineMap2 arrival_map(std::uint64_t n, double sigma2) {
    if (n < 1)
        throw std::invalid_argument("arrival_map: n must be >= 1 (no map for an empty system)");
    const double r = static_cast<double>(n) / static_cast<double>(n + 1);
    const double s = 1.0 / static_cast<double>(n + 1);
    return {r * r, 0.0, 0.0, r, sigma2 * s * s, sigma2 * s};
}

// Departure of one uniformly chosen agent from a system of size n >= 2:
//   A = ((n^2-2n)/(n-1)^2, 1/(n-1)^2; 0, 1)
// The mean-square component is preserved exactly.
inline AffineMap2 departure_map(std::uint64_t n) {
    if (n < 2)
        throw std::invalid_argument(
            "departure_map: n must be >= 2 (departure would empty the system)");
    const double nd = static_cast<double>(n);
    const double d2 = (nd - 1.0) * (nd - 1.0);
    return {nd * (nd - 2.0) / d2, 1.0 / d2, 0.0, 1.0, 0.0, 0.0};
}

// Replacement (departure immediately followed by an arrival; size unchanged):
//   A = ((n-2)/n, 1/n^2; 0, (n-1)/n),  b = (sigma2/n^2, sigma2/n)
// Equals arrival_map(n-1, sigma2) composed after departure_map(n).
inline AffineMap2 replacement_map(std::uint64_t n, double sigma2) {
    if (n < 2) throw std::invalid_argument("replacement_map: n must be >= 2");
    const double nd = static_cast<double>(n);
    const double inv = 1.0 / nd;
    return {(nd - 2.0) * inv, inv * inv,
            0.0,              (nd - 1.0) * inv,
            sigma2 * inv * inv, sigma2 * inv};
}

// Per-event map when each event is a replacement with probability p and a
// gossip step otherwise:
//   A = (1 - 2p/n, p/n^2; (1-p)/n, 1 - 1/n),  b = sigma2 * (p/n^2, p/n)
// This is the convex combination (1-p)*gossip_map(n) + p*replacement_map(n).
inline AffineMap2 mixed_event_map(std::uint64_t n, double p, double sigma2) {
    if (n < 2) throw std::invalid_argument("mixed_event_map: n must be >= 2");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("mixed_event_map: p must lie in [0,1]");
    const double nd = static_cast<double>(n);
    const double inv = 1.0 / nd;
    return {1.0 - 2.0 * p * inv, p * inv * inv,
            (1.0 - p) * inv,     1.0 - inv,
            sigma2 * p * inv * inv, sigma2 * p * inv};
}

// Unique fixed point of mixed_event_map for p > 0:
//   sq_mean* = sigma2 (p+1)/(p+2n-1)
//   mean_sq* = sigma2 (1 + p(2n-1))/(p+2n-1)
inline MomentVector fixed_point(std::uint64_t n, double p, double sigma2) {
    if (n < 2) throw std::invalid_argument("fixed_point: n must be >= 2");
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument(
            "fixed_point: p must lie in (0,1]; the p = 0 map has a non-unique fixed point");
    const double m = static_cast<double>(2 * n - 1);
    const double den = p + m;
    return {sigma2 * ((p + 1.0) / den), sigma2 * ((1.0 + p * m) / den)};
}

// Equilibrium variance sigma2 * 2p(n-1)/(p+2n-1), the difference of the
// fixed-point components in closed form.
inline double fixed_point_variance(std::uint64_t n, double p, double sigma2) {
    if (n < 2) throw std::invalid_argument("fixed_point_variance: n must be >= 2");
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("fixed_point_variance: p must lie in (0,1]");
    const double nd = static_cast<double>(n);
    return sigma2 * (2.0 * p * (nd - 1.0) / (p + 2.0 * nd - 1.0));
}

// Eigenstructure of the mixed-event matrix. Eigenvectors are scaled so the
// second component is 1 whenever it is nonzero.
struct Spectrum2 {
    double r_plus = 0.0;
    double r_minus = 0.0;
    double delta = 0.0;
    std::array<double, 2> v_plus{0.0, 0.0};
    std::array<double, 2> v_minus{0.0, 0.0};
};

// r_{+,-} = (2n - 2p - 1 +- sqrt(delta)) / (2n) with
// delta = (1-2p)^2 + 4p(1-p)/n. For p != 1 the eigenvectors are
// ((2p-1 -+ sqrt(delta))/(2(p-1)), 1); at p = 1 the matrix is upper
// triangular and the eigenvectors are read off directly.
inline Spectrum2 spectrum(std::uint64_t n, double p) {
    if (n < 2) throw std::invalid_argument("spectrum: n must be >= 2");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("spectrum: p must lie in [0,1]");
    const double nd = static_cast<double>(n);
    Spectrum2 sp;
    sp.delta = (1.0 - 2.0 * p) * (1.0 - 2.0 * p) + 4.0 * p * (1.0 - p) / nd;
    const double root = std::sqrt(sp.delta);
    sp.r_plus = (2.0 * nd - 2.0 * p - 1.0 + root) / (2.0 * nd);
    sp.r_minus = (2.0 * nd - 2.0 * p - 1.0 - root) / (2.0 * nd);
    if (p == 1.0) {
        // r_plus = 1 - 1/n pairs with (1/n, 1); r_minus = 1 - 2/n with (1, 0).
        sp.v_plus = {1.0 / nd, 1.0};
        sp.v_minus = {1.0, 0.0};
    } else {
        sp.v_plus = {(2.0 * p - 1.0 - root) / (2.0 * (p - 1.0)), 1.0};
        sp.v_minus = {(2.0 * p - 1.0 + root) / (2.0 * (p - 1.0)), 1.0};
    }
    return sp;
}

enum class SpectralRegime { gossip_dominated, replacement_dominated, boundary };

inline const char* to_string(SpectralRegime r) {
    switch (r) {
        case SpectralRegime::gossip_dominated: return "gossip_dominated";
        case SpectralRegime::replacement_dominated: return "replacement_dominated";
        case SpectralRegime::boundary: return "boundary";
    }
    return "?";
}

// Classifies which contraction the dominant eigenvalue tracks: the variance
// branch 1 - 1/n (gossip) or the squared-mean branch 1 - 2p/n (replacement).
// The two branches cross at p = 1/2, where the regime flips.
inline SpectralRegime spectral_radius_regime(std::uint64_t n, double p) {
    const Spectrum2 sp = spectrum(n, p);
    const double nd = static_cast<double>(n);
    const double d_gossip = std::abs(sp.r_plus - (1.0 - 1.0 / nd));
    const double d_repl = std::abs(sp.r_plus - (1.0 - 2.0 * p / nd));
    if (std::abs(d_gossip - d_repl) <= 1e-9) return SpectralRegime::boundary;
    return d_gossip < d_repl ? SpectralRegime::gossip_dominated
                             : SpectralRegime::replacement_dominated;
}

// Variance contraction accumulated over the geometric number of gossip steps
// between consecutive arrivals at size n: gamma = n / (n - 1 + 1/p).
inline double inter_arrival_gamma(std::uint64_t n, double p) {
    if (n < 1) throw std::invalid_argument("inter_arrival_gamma: n must be >= 1");
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument(
            "inter_arrival_gamma: p must lie in (0,1]; at p = 0 the expected number of "
            "gossip steps diverges");
    return static_cast<double>(n) / (static_cast<double>(n) - 1.0 + 1.0 / p);
}

// Expected-moment map from just after one arrival to just before the next:
//   A_G = (1, 0; 1 - gamma, gamma)
// Equals the geometric mixture p * sum_k ((1-p) A_g)^k = p (I - (1-p) A_g)^-1.
inline AffineMap2 inter_arrival_map(std::uint64_t n, double p) {
    const double gamma = inter_arrival_gamma(n, p);
    return {1.0, 0.0, 1.0 - gamma, gamma, 0.0, 0.0};
}

// State of the growing-system recursion at arrival n: the scaled variance
// w = n * E Var and the squared-mean expectation sigma2 / n.
struct GrowingRecursionState {
    std::uint64_t n = 1;
    double w = 0.0;
    double sq_mean = 0.0;

    double variance() const { return w / static_cast<double>(n); }
};

// Start of the recursion for a system assembled from n0 i.i.d. values:
// w = (n0 - 1) * sigma2, sq_mean = sigma2 / n0. n0 = 1 is the canonical
// single-founder start with zero variance.
inline GrowingRecursionState growing_initial(double sigma2, std::uint64_t n0 = 1) {
    if (n0 < 1) throw std::invalid_argument("growing_initial: n0 must be >= 1");
    if (!(sigma2 >= 0.0))
        throw std::invalid_argument("growing_initial: sigma2 must be >= 0");
    return {n0, static_cast<double>(n0 - 1) * sigma2, sigma2 / static_cast<double>(n0)};
}

// One arrival interval: w_{n+1} = gamma_n * w_n + sigma2 with
// gamma_n = n / (n - 1 + 1/p_n), and sq_mean_{n+1} = sigma2 / (n+1).
inline GrowingRecursionState growing_step(const GrowingRecursionState& state,
                                          double p_n, double sigma2) {
    if (state.n < 1) throw std::invalid_argument("growing_step: state.n must be >= 1");
    const double gamma = inter_arrival_gamma(state.n, p_n);
    GrowingRecursionState next;
    next.n = state.n + 1;
    next.w = gamma * state.w + sigma2;
    next.sq_mean = sigma2 / static_cast<double>(next.n);
    return next;
}

// Runs the recursion from n0 up to n_max; the result holds one state per
// size n0..n_max. p_of_n is evaluated at the pre-arrival size.
template <class PFn>
std::vector<GrowingRecursionState> growing_recursion(PFn&& p_of_n, double sigma2,
                                                     std::uint64_t n0,
                                                     std::uint64_t n_max) {
    if (n_max < n0) throw std::invalid_argument("growing_recursion: n_max must be >= n0");
    std::vector<GrowingRecursionState> out;
    out.reserve(static_cast<std::size_t>(n_max - n0 + 1));
    out.push_back(growing_initial(sigma2, n0));
    while (out.back().n < n_max)
        out.push_back(growing_step(out.back(), p_of_n(out.back().n), sigma2));
    return out;
}

// Limit of E Var at arrival times when the arrival probability is a constant
// p in (0,1]: p * sigma2.
inline double growing_limit(double p, double sigma2) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("growing_limit: p must lie in (0,1]");
    return p * sigma2;
}

// Closed upper bound on the scaled variance w_n when p_m <= p for m >= n0,
// with q = 1/p - 1 > 0:
//   w_n <= w_n0 ((n0+q)/(n+q))^q + sigma2/(n+q)^q * (n+q+1)^(q+1)/(q+1)
// Evaluated in log space so large q does not overflow.
inline double scaled_variance_bound(std::uint64_t n0, std::uint64_t n, double q,
                                    double w_n0, double sigma2) {
    if (!(q > 0.0)) throw std::invalid_argument("scaled_variance_bound: q must be > 0");
    if (n0 < 2) throw std::invalid_argument("scaled_variance_bound: n0 must be >= 2");
    if (n <= n0) throw std::invalid_argument("scaled_variance_bound: n must be > n0");
    if (!(w_n0 >= 0.0))
        throw std::invalid_argument("scaled_variance_bound: w_n0 must be >= 0");
    const double n0d = static_cast<double>(n0);
    const double nd = static_cast<double>(n);
    const double head = w_n0 * std::exp(q * (std::log(n0d + q) - std::log(nd + q)));
    const double tail = sigma2 / (q + 1.0) *
                        std::exp((q + 1.0) * std::log(nd + q + 1.0) - q * std::log(nd + q));
    return head + tail;
}

// Expected variance of a closed system of n i.i.d. values after n*K gossip
// steps: sigma2 * ((n-1)/n) * (1 - 1/n)^(n*K).
inline double closed_system_baseline(std::uint64_t n, double K, double sigma2) {
    if (n < 2) throw std::invalid_argument("closed_system_baseline: n must be >= 2");
    if (!(K >= 0.0)) throw std::invalid_argument("closed_system_baseline: K must be >= 0");
    const double nd = static_cast<double>(n);
    return sigma2 * ((nd - 1.0) / nd) * std::pow(1.0 - 1.0 / nd, nd * K);
}

// Large-n limit of the closed-system baseline: sigma2 * e^{-K}.
inline double closed_system_baseline_limit(double K, double sigma2) {
    if (!(K >= 0.0))
        throw std::invalid_argument("closed_system_baseline_limit: K must be >= 0");
    return sigma2 * std::exp(-K);
}

}  // namespace opengossip
