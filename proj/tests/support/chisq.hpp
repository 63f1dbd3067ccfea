// Chi-square distribution helpers for goodness-of-fit checks, built on the
// regularized lower incomplete gamma function (series expansion for small x,
// continued fraction otherwise).
#pragma once

#include <cmath>
#include <stdexcept>

namespace ogtest {

namespace detail {

inline double lower_gamma_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double upper_gamma_cf(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace detail

// Regularized lower incomplete gamma P(a, x).
inline double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    return x < a + 1.0 ? detail::lower_gamma_series(a, x)
                       : 1.0 - detail::upper_gamma_cf(a, x);
}

inline double chi_square_cdf(double x, double df) { return gamma_p(df / 2.0, x / 2.0); }

inline double chi_square_quantile(double prob, double df) {
    if (!(prob > 0.0 && prob < 1.0))
        throw std::invalid_argument("chi_square_quantile: prob must lie in (0,1)");
    double lo = 0.0;
    double hi = df + 10.0 * std::sqrt(2.0 * df) + 10.0;
    while (chi_square_cdf(hi, df) < prob) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (chi_square_cdf(mid, df) < prob ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace ogtest
