// CSV emission. All numbers are written with 17 significant digits so that
// identical runs produce byte-identical files and values round-trip exactly.
#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "opengossip/core.hpp"
#include "opengossip/sim.hpp"
#include "opengossip/trajectory.hpp"

namespace opengossip {

inline std::string format_sig17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct AnalyticCsvRow {
    std::uint64_t n = 0;
    double p = 0.0;
    double sigma2 = 0.0;
    std::uint64_t step = 0;
    MomentVector x{};
};

inline void write_analytic_csv(std::ostream& os, std::span<const AnalyticCsvRow> rows) {
    os << "n,p,sigma2,step,sq_mean,mean_sq,variance\n";
    for (const AnalyticCsvRow& r : rows) {
        os << r.n << ',' << format_sig17(r.p) << ',' << format_sig17(r.sigma2) << ','
           << r.step << ',' << format_sig17(r.x.sq_mean) << ','
           << format_sig17(r.x.mean_sq) << ',' << format_sig17(r.x.variance()) << '\n';
    }
}

// Same layout as the analytic schema plus a trailing variance_bound column.
struct BoundCsvRow {
    AnalyticCsvRow base{};
    double variance_bound = 0.0;
};

inline void write_bound_csv(std::ostream& os, std::span<const BoundCsvRow> rows) {
    os << "n,p,sigma2,step,sq_mean,mean_sq,variance,variance_bound\n";
    for (const BoundCsvRow& r : rows) {
        os << r.base.n << ',' << format_sig17(r.base.p) << ','
           << format_sig17(r.base.sigma2) << ',' << r.base.step << ','
           << format_sig17(r.base.x.sq_mean) << ',' << format_sig17(r.base.x.mean_sq)
           << ',' << format_sig17(r.base.x.variance()) << ','
           << format_sig17(r.variance_bound) << '\n';
    }
}

inline void write_single_csv(std::ostream& os, const Trajectory& traj) {
    const bool with_values =
        !traj.samples.empty() && !traj.samples.front().values.empty();
    os << "t,n,event,mean,sq_mean,mean_sq,variance";
    if (with_values) {
        for (std::size_t k = 0; k < traj.samples.front().values.size(); ++k)
            os << ",x" << k;
    }
    os << '\n';
    for (const TrajectorySample& s : traj.samples) {
        os << s.t << ',' << s.n << ',' << to_string(s.event) << ','
           << format_sig17(s.mean) << ',' << format_sig17(s.sq_mean) << ','
           << format_sig17(s.mean_sq) << ',' << format_sig17(s.variance);
        if (with_values)
            for (double v : s.values) os << ',' << format_sig17(v);
        os << '\n';
    }
}

// Ensemble series: mean and standard error per moment, with optional
// analytic reference columns aligned by slot.
inline void write_ensemble_csv(std::ostream& os, const EnsembleResult& ensemble,
                               const std::vector<MomentVector>* reference = nullptr) {
    os << "t,n,mean,mean_se,sq_mean,sq_mean_se,mean_sq,mean_sq_se,variance,variance_se";
    if (reference) os << ",sq_mean_ref,mean_sq_ref,variance_ref";
    os << '\n';
    const auto& means = ensemble.mean_trajectory.samples;
    const auto& ses = ensemble.stderr_trajectory.samples;
    for (std::size_t k = 0; k < means.size(); ++k) {
        const TrajectorySample& m = means[k];
        const TrajectorySample& e = ses[k];
        os << m.t << ',' << m.n << ',' << format_sig17(m.mean) << ','
           << format_sig17(e.mean) << ',' << format_sig17(m.sq_mean) << ','
           << format_sig17(e.sq_mean) << ',' << format_sig17(m.mean_sq) << ','
           << format_sig17(e.mean_sq) << ',' << format_sig17(m.variance) << ','
           << format_sig17(e.variance);
        if (reference) {
            const MomentVector& r = (*reference)[k];
            os << ',' << format_sig17(r.sq_mean) << ',' << format_sig17(r.mean_sq)
               << ',' << format_sig17(r.variance());
        }
        os << '\n';
    }
}

}  // namespace opengossip
