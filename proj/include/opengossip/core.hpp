// Core value types for open gossip systems: agent populations, the pair of
// scale-independent moments (squared mean, mean square), 2x2 affine moment
// maps, and the empirical statistics that connect them.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace opengossip {

// Pair of scale-independent moments of an agent population. Every expected
// moment update implemented in this library is affine in this vector.
struct MomentVector {
    double sq_mean = 0.0;  // (sum x_i / n)^2
    double mean_sq = 0.0;  // sum x_i^2 / n

    double variance() const { return mean_sq - sq_mean; }

    friend bool operator==(const MomentVector&, const MomentVector&) = default;
};

// Affine update X' = A*X + b acting on a MomentVector.
struct AffineMap2 {
    double a11 = 1.0, a12 = 0.0;
    double a21 = 0.0, a22 = 1.0;
    double b1 = 0.0, b2 = 0.0;

    MomentVector apply(const MomentVector& x) const {
        return {a11 * x.sq_mean + a12 * x.mean_sq + b1,
                a21 * x.sq_mean + a22 * x.mean_sq + b2};
    }

    static AffineMap2 identity() { return {}; }

    friend bool operator==(const AffineMap2&, const AffineMap2&) = default;
};

inline MomentVector apply_affine(const AffineMap2& map, const MomentVector& x) {
    return map.apply(x);
}

// compose(f, g)(x) = f(g(x))
inline AffineMap2 compose(const AffineMap2& f, const AffineMap2& g) {
    return {f.a11 * g.a11 + f.a12 * g.a21, f.a11 * g.a12 + f.a12 * g.a22,
            f.a21 * g.a11 + f.a22 * g.a21, f.a21 * g.a12 + f.a22 * g.a22,
            f.a11 * g.b1 + f.a12 * g.b2 + f.b1,
            f.a21 * g.b1 + f.a22 * g.b2 + f.b2};
}

// Iterates x <- map(x); the result holds steps+1 vectors starting with x0.
inline std::vector<MomentVector> iterate_affine(const AffineMap2& map,
                                                MomentVector x0,
                                                std::size_t steps) {
    std::vector<MomentVector> out;
    out.reserve(steps + 1);
    out.push_back(x0);
    for (std::size_t k = 0; k < steps; ++k) {
        x0 = map.apply(x0);
        out.push_back(x0);
    }
    return out;
}

// The agent population currently present: a flat list of values, a counter
// handing out never-reused labels, and an event clock. Plain value type;
// copies are independent.
struct SystemState {
    std::vector<double> values;
    std::uint64_t next_label = 0;
    std::uint64_t time = 0;

    std::size_t size() const { return values.size(); }
};

inline SystemState make_state(std::vector<double> values) {
    SystemState s;
    s.next_label = values.size();
    s.values = std::move(values);
    return s;
}

// Zero-mean arrival value distributions, parameterized by their variance.
enum class ArrivalKind { uniform_centered, gaussian, two_point, degenerate_zero };

struct ArrivalDistribution {
    ArrivalKind kind = ArrivalKind::uniform_centered;
    double sigma2 = 1.0;

    void validate() const {
        if (!(sigma2 >= 0.0) || !std::isfinite(sigma2))
            throw std::invalid_argument("arrival distribution: sigma2 must be finite and >= 0");
        if (kind == ArrivalKind::degenerate_zero && sigma2 != 0.0)
            throw std::invalid_argument("arrival distribution: degenerate_zero requires sigma2 == 0");
    }
};

inline const char* to_string(ArrivalKind k) {
    switch (k) {
        case ArrivalKind::uniform_centered: return "uniform";
        case ArrivalKind::gaussian: return "gaussian";
        case ArrivalKind::two_point: return "two-point";
        case ArrivalKind::degenerate_zero: return "zero";
    }
    return "?";
}

// One-pass accumulator: running mean plus compensated sum of squared
// deviations. Keeps populations up to ~1e6 values accurate and guarantees
// a nonnegative deviation sum, so mean_sq >= sq_mean by construction.
struct RunningMoments {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
    double m2_carry = 0.0;

    void add(double x) {
        ++count;
        const double d0 = x - mean;
        mean += d0 / static_cast<double>(count);
        const double inc = d0 * (x - mean);
        const double s = m2 + inc;
        if (std::abs(m2) >= std::abs(inc))
            m2_carry += (m2 - s) + inc;
        else
            m2_carry += (inc - s) + m2;
        m2 = s;
    }

    double sum_sq_dev() const { return m2 + m2_carry; }
};

struct EmpiricalMoments {
    double mean = 0.0;
    double sq_mean = 0.0;
    double mean_sq = 0.0;
    double variance = 0.0;

    MomentVector moments() const { return {sq_mean, mean_sq}; }
};

inline EmpiricalMoments empirical_summary(std::span<const double> values) {
    if (values.empty())
        throw std::invalid_argument("empirical moments: empty system");
    RunningMoments acc;
    for (double v : values) acc.add(v);
    EmpiricalMoments m;
    m.mean = acc.mean;
    m.sq_mean = acc.mean * acc.mean;
    m.variance = acc.sum_sq_dev() / static_cast<double>(acc.count);
    m.mean_sq = m.sq_mean + m.variance;
    return m;
}

inline MomentVector empirical_moments(const SystemState& state) {
    return empirical_summary(state.values).moments();
}

}  // namespace opengossip
