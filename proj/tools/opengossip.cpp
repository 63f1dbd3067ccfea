// opengossip CLI: closed-form analysis and Monte Carlo simulation of open
// gossip systems, with CSV series output and JSON run reports.
//
// Exit codes: 0 all requested verdicts pass, 1 a verdict failed,
// 2 invalid configuration or violated precondition.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "opengossip/opengossip.hpp"

using json = nlohmann::ordered_json;
using namespace opengossip;

namespace {

constexpr double default_sigma2 = 1.0 / 12.0;  // uniform on [-1/2, 1/2]

std::uint64_t default_seed() {
    if (const char* env = std::getenv("OPENGOSSIP_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 20240901;
}

void require_finite(const json& j, const std::string& path) {
    if (j.is_number_float() && !std::isfinite(j.get<double>()))
        throw std::runtime_error("non-finite value in report at " + path +
                                 " (overflow); aborting");
    if (j.is_object())
        for (auto it = j.begin(); it != j.end(); ++it)
            require_finite(it.value(), path + "/" + it.key());
    if (j.is_array())
        for (std::size_t k = 0; k < j.size(); ++k)
            require_finite(j[k], path + "/" + std::to_string(k));
}

void print_report(const json& report, const std::string& json_path) {
    require_finite(report, "");
    const std::string text = report.dump(2);
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) throw std::runtime_error("cannot open " + json_path);
        out << text << '\n';
    }
    std::cout << text << '\n';
}

template <class Writer>
void emit_csv(const std::string& path, Writer&& writer) {
    if (path.empty()) {
        writer(std::cout);
    } else {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path);
        writer(out);
    }
}

// Series commands print their JSON report only when the CSV went to a file;
// otherwise the CSV owns stdout and the report is written only on request.
void finish_series_report(json& report, const std::string& csv_path,
                          const std::string& json_path) {
    if (!csv_path.empty()) {
        report["csv"] = csv_path;
        print_report(report, json_path);
    } else if (!json_path.empty()) {
        require_finite(report, "");
        std::ofstream out(json_path);
        if (!out) throw std::runtime_error("cannot open " + json_path);
        out << report.dump(2) << '\n';
    }
}

// ---- shared option bundles -------------------------------------------------

struct DistOpts {
    std::string kind = "uniform";
    double sigma2 = default_sigma2;

    ArrivalDistribution build() const {
        ArrivalDistribution d;
        if (kind == "uniform") d.kind = ArrivalKind::uniform_centered;
        else if (kind == "gaussian") d.kind = ArrivalKind::gaussian;
        else if (kind == "two-point") d.kind = ArrivalKind::two_point;
        else if (kind == "zero") d.kind = ArrivalKind::degenerate_zero;
        else throw std::invalid_argument("unknown distribution kind: " + kind);
        d.sigma2 = sigma2;
        d.validate();
        return d;
    }
};

void add_dist_options(CLI::App* cmd, DistOpts& opts) {
    cmd->add_option("--sigma2", opts.sigma2, "arrival value variance")
        ->capture_default_str();
    cmd->add_option("--dist", opts.kind,
                    "arrival distribution: uniform|gaussian|two-point|zero")
        ->capture_default_str();
}

struct ScheduleOpts {
    std::optional<double> p;
    std::string kind;  // "", "rate", "harmonic"
    double lambda_a = 1.0;
    double lambda_g = 1.0;
    double c = 1.0;

    GrowthSchedule build() const {
        GrowthSchedule s;
        if (kind.empty() || kind == "constant") {
            if (!p) throw std::invalid_argument("growing mode needs --p or --schedule");
            s.kind = GrowthSchedule::Kind::constant;
            s.p = *p;
        } else if (kind == "rate") {
            s.kind = GrowthSchedule::Kind::arrival_rate;
            s.lambda_a = lambda_a;
            s.lambda_g = lambda_g;
        } else if (kind == "harmonic") {
            s.kind = GrowthSchedule::Kind::harmonic;
            s.c = c;
        } else {
            throw std::invalid_argument("unknown schedule kind: " + kind);
        }
        s.validate();
        return s;
    }

    json echo() const {
        json j;
        if (kind.empty() || kind == "constant") {
            j["kind"] = "constant";
            j["p"] = p ? *p : 0.0;
        } else if (kind == "rate") {
            j["kind"] = "rate";
            j["lambda_a"] = lambda_a;
            j["lambda_g"] = lambda_g;
        } else {
            j["kind"] = kind;
            j["c"] = c;
        }
        return j;
    }
};

void add_schedule_options(CLI::App* cmd, ScheduleOpts& opts) {
    auto* p_opt = cmd->add_option("--p", opts.p, "constant arrival probability in (0,1]");
    cmd->add_option("--schedule", opts.kind,
                    "arrival probability schedule: constant|rate|harmonic")
        ->excludes(p_opt)
        ->capture_default_str();
    cmd->add_option("--lambda-a", opts.lambda_a, "arrival rate (schedule=rate)")
        ->capture_default_str();
    cmd->add_option("--lambda-g", opts.lambda_g, "per-agent gossip rate (schedule=rate)")
        ->capture_default_str();
    cmd->add_option("--c", opts.c, "harmonic schedule constant: p_n = min(1, c/n)")
        ->capture_default_str();
}

json moments_json(const MomentVector& x) {
    return {{"sq_mean", x.sq_mean}, {"mean_sq", x.mean_sq}, {"variance", x.variance()}};
}

json series_json(const SeriesCheck& c) {
    return {{"points", c.points},
            {"within", c.within},
            {"fraction", c.fraction_within()},
            {"max_z", c.max_abs_z},
            {"worst_slot", c.worst_slot},
            {"pass", c.pass}};
}

json comparison_json(const ComparisonReport& r) {
    return {{"k", r.k},
            {"pass_fraction", r.min_fraction},
            {"sq_mean", series_json(r.sq_mean)},
            {"mean_sq", series_json(r.mean_sq)},
            {"variance", series_json(r.variance)},
            {"pass", r.pass}};
}

json final_sample_json(const EnsembleResult& ens) {
    const TrajectorySample& m = ens.mean_trajectory.samples.back();
    const TrajectorySample& e = ens.stderr_trajectory.samples.back();
    return {{"t", m.t},           {"n", m.n},
            {"mean", m.mean},     {"mean_se", e.mean},
            {"sq_mean", m.sq_mean}, {"sq_mean_se", e.sq_mean},
            {"mean_sq", m.mean_sq}, {"mean_sq_se", e.mean_sq},
            {"variance", m.variance}, {"variance_se", e.variance}};
}

MomentVector initial_expected_moments(const SimConfig& cfg) {
    switch (cfg.init) {
        case InitKind::iid:
            return {cfg.dist.sigma2 / static_cast<double>(cfg.n0), cfg.dist.sigma2};
        case InitKind::consensus:
            return {cfg.consensus_value * cfg.consensus_value,
                    cfg.consensus_value * cfg.consensus_value};
        case InitKind::explicit_values:
            return empirical_summary(cfg.init_values).moments();
    }
    throw std::logic_error("unknown init kind");
}

std::vector<MomentVector> growing_reference(const GrowthSchedule& schedule,
                                            double sigma2, std::uint64_t n0,
                                            std::uint64_t n_max) {
    std::vector<MomentVector> ref;
    for (const GrowingRecursionState& s :
         growing_recursion([&](std::uint64_t n) { return schedule.at(n); }, sigma2,
                           n0, n_max))
        ref.push_back({s.sq_mean, s.sq_mean + s.variance()});
    return ref;
}

// ---- analytic subcommands ---------------------------------------------------

struct AnalyticArgs {
    std::uint64_t n = 25;
    double p = 0.05;
    double sigma2 = default_sigma2;
    std::uint64_t steps = 1000;
    std::uint64_t n0 = 1;
    std::uint64_t n_max = 1000;
    double K = 5.0;
    std::optional<double> x0_sq_mean;
    std::optional<double> x0_mean_sq;
    ScheduleOpts schedule;
    std::string csv_path;
    std::string json_path;
};

int cmd_analytic_fixed_point(const AnalyticArgs& a) {
    const MomentVector x = fixed_point(a.n, a.p, a.sigma2);
    const MomentVector mapped = mixed_event_map(a.n, a.p, a.sigma2).apply(x);
    const double residual = std::max(std::abs(mapped.sq_mean - x.sq_mean),
                                     std::abs(mapped.mean_sq - x.mean_sq));
    json report{{"command", "analytic fixed-point"},
                {"n", a.n},
                {"p", a.p},
                {"sigma2", a.sigma2},
                {"fixed_point", moments_json(x)},
                {"variance_closed_form", fixed_point_variance(a.n, a.p, a.sigma2)},
                {"residual", residual}};
    print_report(report, a.json_path);
    return 0;
}

int cmd_analytic_spectrum(const AnalyticArgs& a) {
    const Spectrum2 sp = spectrum(a.n, a.p);
    json report{{"command", "analytic spectrum"},
                {"n", a.n},
                {"p", a.p},
                {"delta", sp.delta},
                {"r_plus", sp.r_plus},
                {"r_minus", sp.r_minus},
                {"v_plus", {sp.v_plus[0], sp.v_plus[1]}},
                {"v_minus", {sp.v_minus[0], sp.v_minus[1]}},
                {"regime", to_string(spectral_radius_regime(a.n, a.p))}};
    print_report(report, a.json_path);
    return 0;
}

int cmd_analytic_trajectory(const AnalyticArgs& a) {
    MomentVector x0{a.sigma2 / static_cast<double>(a.n), a.sigma2};
    if (a.x0_sq_mean) x0.sq_mean = *a.x0_sq_mean;
    if (a.x0_mean_sq) x0.mean_sq = *a.x0_mean_sq;
    const AffineMap2 map = mixed_event_map(a.n, a.p, a.sigma2);
    const std::vector<MomentVector> xs =
        iterate_affine(map, x0, static_cast<std::size_t>(a.steps));
    std::vector<AnalyticCsvRow> rows;
    rows.reserve(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k)
        rows.push_back({a.n, a.p, a.sigma2, k, xs[k]});
    emit_csv(a.csv_path, [&](std::ostream& os) { write_analytic_csv(os, rows); });
    json report{{"command", "analytic trajectory"}, {"n", a.n},
                {"p", a.p},         {"sigma2", a.sigma2},
                {"steps", a.steps}, {"x0", moments_json(x0)},
                {"final", moments_json(xs.back())}};
    finish_series_report(report, a.csv_path, a.json_path);
    return 0;
}

int cmd_analytic_growing(const AnalyticArgs& a) {
    const GrowthSchedule schedule = a.schedule.build();
    if (a.n_max < a.n0)
        throw std::invalid_argument("analytic growing: --n-max must be >= --n0");
    std::vector<AnalyticCsvRow> rows;
    for (const GrowingRecursionState& s : growing_recursion(
             [&](std::uint64_t n) { return schedule.at(n); }, a.sigma2, a.n0, a.n_max)) {
        const MomentVector x{s.sq_mean, s.sq_mean + s.variance()};
        rows.push_back({s.n, schedule.at(s.n), a.sigma2, s.n, x});
    }
    emit_csv(a.csv_path, [&](std::ostream& os) { write_analytic_csv(os, rows); });
    json report{{"command", "analytic growing"},
                {"schedule", a.schedule.echo()},
                {"sigma2", a.sigma2},
                {"n0", a.n0},
                {"n_max", a.n_max},
                {"final_variance", rows.back().x.variance()}};
    if (schedule.kind == GrowthSchedule::Kind::constant)
        report["limit_variance"] = growing_limit(schedule.p, a.sigma2);
    finish_series_report(report, a.csv_path, a.json_path);
    return 0;
}

int cmd_analytic_bound(const AnalyticArgs& a) {
    const double q = 1.0 / a.p - 1.0;
    if (!(q > 0.0))
        throw std::invalid_argument("analytic bound: requires p in (0,1) so q = 1/p - 1 > 0");
    if (a.n0 < 2 || a.n_max <= a.n0)
        throw std::invalid_argument("analytic bound: requires n0 >= 2 and n-max > n0");
    const auto states = growing_recursion([&](std::uint64_t) { return a.p; }, a.sigma2,
                                          1, a.n_max);
    const double w_n0 = states[a.n0 - 1].w;
    std::vector<BoundCsvRow> rows;
    bool dominated = true;
    for (std::uint64_t n = a.n0; n <= a.n_max; ++n) {
        const GrowingRecursionState& s = states[n - 1];
        const MomentVector x{s.sq_mean, s.sq_mean + s.variance()};
        const double bound =
            n == a.n0 ? s.variance()
                      : scaled_variance_bound(a.n0, n, q, w_n0, a.sigma2) /
                            static_cast<double>(n);
        if (s.variance() > bound) dominated = false;
        rows.push_back({{n, a.p, a.sigma2, n, x}, bound});
    }
    emit_csv(a.csv_path, [&](std::ostream& os) { write_bound_csv(os, rows); });
    const double limit = growing_limit(a.p, a.sigma2);
    json report{{"command", "analytic bound"},
                {"p", a.p},
                {"q", q},
                {"sigma2", a.sigma2},
                {"n0", a.n0},
                {"w_n0", w_n0},
                {"n_max", a.n_max},
                {"variance_at_n_max", rows.back().base.x.variance()},
                {"bound_at_n_max", rows.back().variance_bound},
                {"limit_variance", limit},
                {"bound_over_limit", rows.back().variance_bound / limit},
                {"dominated", dominated}};
    finish_series_report(report, a.csv_path, a.json_path);
    return dominated ? 0 : 1;
}

int cmd_analytic_baseline(const AnalyticArgs& a) {
    const double variance = closed_system_baseline(a.n, a.K, a.sigma2);
    const double limit = closed_system_baseline_limit(a.K, a.sigma2);
    const double p_equiv = 1.0 / (a.K + 1.0);
    json report{{"command", "analytic baseline"},
                {"n", a.n},
                {"K", a.K},
                {"sigma2", a.sigma2},
                {"variance", variance},
                {"limit_variance", limit},
                {"p_equivalent", p_equiv},
                {"open_system_limit", growing_limit(p_equiv, a.sigma2)},
                {"limit_ratio", limit / growing_limit(p_equiv, a.sigma2)}};
    print_report(report, a.json_path);
    return 0;
}

// ---- simulate / compare ------------------------------------------------------

struct SimArgs {
    std::uint64_t n = 25;
    double p = 0.05;
    std::uint64_t events = 2000;
    std::optional<std::uint64_t> replacements;
    std::uint64_t arrivals = 1000;
    std::uint64_t n0 = 1;
    std::uint32_t replicates = 1;
    std::uint64_t seed = default_seed();
    DistOpts dist;
    ScheduleOpts schedule;
    std::string init = "iid";
    double consensus_value = 0.0;
    std::vector<double> values;
    bool emit_values = false;
    bool per_event = false;
    bool overlay = false;
    double k = 4.0;
    double pass_fraction = 0.99;
    std::uint64_t min_n = 1;
    std::optional<double> analytic_p;
    std::string csv_path;
    std::string json_path;
};

SimConfig fixed_config(const SimArgs& a) {
    SimConfig cfg;
    cfg.mode = SimMode::fixed_size;
    cfg.n0 = static_cast<std::uint32_t>(a.n);
    cfg.p = a.p;
    cfg.dist = a.dist.build();
    cfg.horizon = a.events;
    cfg.stop_after_replacements = a.replacements;
    cfg.replicates = a.replicates;
    cfg.seed = a.seed;
    if (a.init == "iid") cfg.init = InitKind::iid;
    else if (a.init == "consensus") {
        cfg.init = InitKind::consensus;
        cfg.consensus_value = a.consensus_value;
    } else if (a.init == "values") {
        cfg.init = InitKind::explicit_values;
        cfg.init_values = a.values;
    } else {
        throw std::invalid_argument("unknown init kind: " + a.init);
    }
    cfg.record_values = a.emit_values;
    cfg.validate();
    return cfg;
}

SimConfig growing_config(const SimArgs& a) {
    SimConfig cfg;
    cfg.mode = SimMode::growing;
    cfg.n0 = static_cast<std::uint32_t>(a.n0);
    cfg.schedule = a.schedule.build();
    cfg.dist = a.dist.build();
    cfg.horizon = a.arrivals;
    cfg.replicates = a.replicates;
    cfg.seed = a.seed;
    cfg.record_every_event = a.per_event;
    cfg.record_values = a.emit_values;
    cfg.validate();
    return cfg;
}

json config_echo(const SimConfig& cfg) {
    json j{{"mode", cfg.mode == SimMode::fixed_size ? "fixed" : "growing"},
           {"n0", cfg.n0},
           {"dist", to_string(cfg.dist.kind)},
           {"sigma2", cfg.dist.sigma2},
           {"horizon", cfg.horizon},
           {"replicates", cfg.replicates},
           {"seed", cfg.seed}};
    if (cfg.mode == SimMode::fixed_size) j["p"] = cfg.p;
    return j;
}

void check_finite_trajectory(const Trajectory& traj) {
    for (const TrajectorySample& s : traj.samples)
        if (!std::isfinite(s.mean) || !std::isfinite(s.sq_mean) ||
            !std::isfinite(s.mean_sq) || !std::isfinite(s.variance))
            throw std::runtime_error("non-finite moment in trajectory (overflow); aborting");
}

int cmd_simulate_fixed(const SimArgs& a) {
    const SimConfig cfg = fixed_config(a);
    json report{{"command", "simulate fixed"}, {"config", config_echo(cfg)}};
    if (cfg.replicates == 1) {
        const Trajectory traj = run_fixed(cfg, RngStream(cfg.seed, 0));
        check_finite_trajectory(traj);
        emit_csv(a.csv_path, [&](std::ostream& os) { write_single_csv(os, traj); });
        const TrajectorySample& last = traj.samples.back();
        report["final"] = {{"t", last.t},
                           {"n", last.n},
                           {"mean", last.mean},
                           {"sq_mean", last.sq_mean},
                           {"mean_sq", last.mean_sq},
                           {"variance", last.variance}};
    } else {
        const EnsembleResult ens = run_ensemble(cfg, cfg.seed);
        check_finite_trajectory(ens.mean_trajectory);
        std::vector<MomentVector> ref;
        if (a.overlay) {
            const AffineMap2 map =
                mixed_event_map(cfg.n0, a.analytic_p.value_or(cfg.p), cfg.dist.sigma2);
            ref = iterate_affine(map, initial_expected_moments(cfg),
                                 static_cast<std::size_t>(cfg.horizon));
        }
        emit_csv(a.csv_path, [&](std::ostream& os) {
            write_ensemble_csv(os, ens, a.overlay ? &ref : nullptr);
        });
        report["final"] = final_sample_json(ens);
    }
    finish_series_report(report, a.csv_path, a.json_path);
    return 0;
}

int cmd_simulate_growing(const SimArgs& a) {
    const SimConfig cfg = growing_config(a);
    json report{{"command", "simulate growing"},
                {"config", config_echo(cfg)},
                {"schedule", a.schedule.echo()}};
    if (cfg.replicates == 1) {
        const Trajectory traj = run_growing(cfg, RngStream(cfg.seed, 0));
        check_finite_trajectory(traj);
        emit_csv(a.csv_path, [&](std::ostream& os) { write_single_csv(os, traj); });
        const TrajectorySample& last = traj.samples.back();
        report["final"] = {{"t", last.t},
                           {"n", last.n},
                           {"variance", last.variance},
                           {"sq_mean", last.sq_mean}};
    } else {
        const EnsembleResult ens = run_ensemble(cfg, cfg.seed);
        check_finite_trajectory(ens.mean_trajectory);
        std::vector<MomentVector> ref;
        if (a.overlay) {
            if (cfg.init != InitKind::iid)
                throw std::invalid_argument(
                    "growing-mode analytic overlay assumes i.i.d. initial values");
            ref = growing_reference(cfg.schedule, cfg.dist.sigma2, cfg.n0,
                                    cfg.n0 + cfg.horizon);
        }
        emit_csv(a.csv_path, [&](std::ostream& os) {
            write_ensemble_csv(os, ens, a.overlay ? &ref : nullptr);
        });
        report["final"] = final_sample_json(ens);
    }
    finish_series_report(report, a.csv_path, a.json_path);
    return 0;
}

int cmd_compare_fixed(const SimArgs& a) {
    SimArgs args = a;
    args.replicates = std::max<std::uint32_t>(a.replicates, 2);
    const SimConfig cfg = fixed_config(args);
    const EnsembleResult ens = run_ensemble(cfg, cfg.seed);
    check_finite_trajectory(ens.mean_trajectory);

    const double ana_p = a.analytic_p.value_or(cfg.p);
    const AffineMap2 map = mixed_event_map(cfg.n0, ana_p, cfg.dist.sigma2);
    const std::vector<MomentVector> ref = iterate_affine(
        map, initial_expected_moments(cfg), static_cast<std::size_t>(cfg.horizon));

    const ComparisonReport cmp =
        compare_trajectories(ens, ref, a.k, a.pass_fraction);

    json analytic_summary{{"p", ana_p}, {"final", moments_json(ref.back())}};
    if (ana_p > 0.0)
        analytic_summary["fixed_point"] =
            moments_json(fixed_point(cfg.n0, ana_p, cfg.dist.sigma2));
    json report{{"command", "compare fixed"},
                {"config", config_echo(cfg)},
                {"analytic", analytic_summary},
                {"empirical", {{"final", final_sample_json(ens)}}},
                {"comparison", comparison_json(cmp)},
                {"pass", cmp.pass}};
    if (!a.csv_path.empty()) {
        emit_csv(a.csv_path,
                 [&](std::ostream& os) { write_ensemble_csv(os, ens, &ref); });
        report["csv"] = a.csv_path;
    }
    print_report(report, a.json_path);
    return cmp.pass ? 0 : 1;
}

int cmd_compare_growing(const SimArgs& a) {
    SimArgs args = a;
    args.replicates = std::max<std::uint32_t>(a.replicates, 2);
    const SimConfig cfg = growing_config(args);
    if (cfg.init != InitKind::iid)
        throw std::invalid_argument("compare growing assumes i.i.d. initial values");
    const EnsembleResult ens = run_ensemble(cfg, cfg.seed);
    check_finite_trajectory(ens.mean_trajectory);

    GrowthSchedule ana_schedule = cfg.schedule;
    if (a.analytic_p) {
        ana_schedule = GrowthSchedule{};
        ana_schedule.kind = GrowthSchedule::Kind::constant;
        ana_schedule.p = *a.analytic_p;
    }
    const std::vector<MomentVector> ref =
        growing_reference(ana_schedule, cfg.dist.sigma2, cfg.n0, cfg.n0 + cfg.horizon);

    const std::size_t from_slot =
        a.min_n > cfg.n0 ? static_cast<std::size_t>(a.min_n - cfg.n0) : 0;
    const ComparisonReport cmp =
        compare_trajectories(ens, ref, a.k, a.pass_fraction, from_slot);

    json report{{"command", "compare growing"},
                {"config", config_echo(cfg)},
                {"schedule", a.schedule.echo()},
                {"analytic", {{"final", moments_json(ref.back())}}},
                {"empirical", {{"final", final_sample_json(ens)}}},
                {"min_n", a.min_n},
                {"comparison", comparison_json(cmp)},
                {"pass", cmp.pass}};
    if (!a.csv_path.empty()) {
        emit_csv(a.csv_path,
                 [&](std::ostream& os) { write_ensemble_csv(os, ens, &ref); });
        report["csv"] = a.csv_path;
    }
    print_report(report, a.json_path);
    return cmp.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"open gossip systems: simulation and exact moment analysis"};
    app.require_subcommand(1);

    // one argument bundle per leaf subcommand, so defaults never cross-talk
    AnalyticArgs fp_args, spec_args, traj_args, grow_args, bound_args, base_args;
    bound_args.n0 = 2;
    SimArgs simf_args, simg_args, cmpf_args, cmpg_args;
    cmpf_args.replicates = 1000;
    cmpg_args.replicates = 500;
    int rc = 0;

    // analytic
    auto* analytic = app.add_subcommand("analytic", "closed-form quantities");
    analytic->require_subcommand(1);

    auto* fp = analytic->add_subcommand("fixed-point",
                                        "equilibrium moments of the mixed-event map");
    fp->add_option("--n", fp_args.n, "system size")->required();
    fp->add_option("--p", fp_args.p, "replacement probability")->required();
    fp->add_option("--sigma2", fp_args.sigma2, "arrival variance")->capture_default_str();
    fp->add_option("--json", fp_args.json_path, "write the JSON report to this path");
    fp->callback([&] { rc = cmd_analytic_fixed_point(fp_args); });

    auto* spec_cmd = analytic->add_subcommand("spectrum",
                                              "eigenvalues and eigenvectors of the "
                                              "mixed-event matrix");
    spec_cmd->add_option("--n", spec_args.n)->required();
    spec_cmd->add_option("--p", spec_args.p)->required();
    spec_cmd->add_option("--json", spec_args.json_path);
    spec_cmd->callback([&] { rc = cmd_analytic_spectrum(spec_args); });

    auto* traj = analytic->add_subcommand(
        "trajectory", "iterate the mixed-event map from a start vector");
    traj->add_option("--n", traj_args.n)->required();
    traj->add_option("--p", traj_args.p)->required();
    traj->add_option("--sigma2", traj_args.sigma2)->capture_default_str();
    traj->add_option("--steps", traj_args.steps)->capture_default_str();
    traj->add_option("--x0-sq-mean", traj_args.x0_sq_mean,
                     "initial sq_mean (default sigma2/n)");
    traj->add_option("--x0-mean-sq", traj_args.x0_mean_sq,
                     "initial mean_sq (default sigma2)");
    traj->add_option("--csv", traj_args.csv_path,
                     "write the CSV here (stdout otherwise)");
    traj->add_option("--json", traj_args.json_path);
    traj->callback([&] { rc = cmd_analytic_trajectory(traj_args); });

    auto* grow = analytic->add_subcommand("growing",
                                          "variance recursion at arrival times");
    add_schedule_options(grow, grow_args.schedule);
    grow->add_option("--sigma2", grow_args.sigma2)->capture_default_str();
    grow->add_option("--n0", grow_args.n0)->capture_default_str();
    grow->add_option("--n-max", grow_args.n_max)->required();
    grow->add_option("--csv", grow_args.csv_path);
    grow->add_option("--json", grow_args.json_path);
    grow->callback([&] { rc = cmd_analytic_growing(grow_args); });

    auto* bound = analytic->add_subcommand(
        "bound", "closed upper bound on the scaled variance recursion");
    bound->add_option("--p", bound_args.p)->required();
    bound->add_option("--sigma2", bound_args.sigma2)->capture_default_str();
    bound->add_option("--n0", bound_args.n0)->capture_default_str();
    bound->add_option("--n-max", bound_args.n_max)->required();
    bound->add_option("--csv", bound_args.csv_path);
    bound->add_option("--json", bound_args.json_path);
    bound->callback([&] { rc = cmd_analytic_bound(bound_args); });

    auto* base = analytic->add_subcommand(
        "baseline", "closed system of n i.i.d. values after n*K gossips");
    base->add_option("--n", base_args.n)->required();
    base->add_option("--K", base_args.K)->required();
    base->add_option("--sigma2", base_args.sigma2)->capture_default_str();
    base->add_option("--json", base_args.json_path);
    base->callback([&] { rc = cmd_analytic_baseline(base_args); });

    // simulate
    auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo runs");
    simulate->require_subcommand(1);

    auto* sim_fixed = simulate->add_subcommand(
        "fixed", "fixed size: replacement w.p. p, gossip otherwise");
    sim_fixed->add_option("--n", simf_args.n, "system size")->required();
    sim_fixed->add_option("--p", simf_args.p, "replacement probability in [0,1]")
        ->required();
    add_dist_options(sim_fixed, simf_args.dist);
    sim_fixed->add_option("--events", simf_args.events, "event horizon")
        ->capture_default_str();
    sim_fixed->add_option("--replacements", simf_args.replacements,
                          "stop after this many replacements (single run)");
    sim_fixed->add_option("--seed", simf_args.seed, "RNG seed (env OPENGOSSIP_SEED)")
        ->capture_default_str();
    sim_fixed->add_option("--replicates", simf_args.replicates)->capture_default_str();
    sim_fixed->add_option("--init", simf_args.init, "iid|consensus|values")
        ->capture_default_str();
    sim_fixed->add_option("--consensus-value", simf_args.consensus_value)
        ->capture_default_str();
    sim_fixed->add_option("--values", simf_args.values, "explicit initial values")
        ->delimiter(',');
    sim_fixed->add_flag("--emit-values", simf_args.emit_values,
                        "include per-agent values in the CSV (single run)");
    sim_fixed->add_flag("--overlay", simf_args.overlay,
                        "append analytic reference columns (ensembles)");
    sim_fixed->add_option("--analytic-p", simf_args.analytic_p,
                          "override p used for the analytic overlay");
    sim_fixed->add_option("--csv", simf_args.csv_path);
    sim_fixed->add_option("--json", simf_args.json_path);
    sim_fixed->callback([&] { rc = cmd_simulate_fixed(simf_args); });

    auto* sim_grow = simulate->add_subcommand(
        "growing", "growing size: arrival w.p. p_n, gossip otherwise");
    add_schedule_options(sim_grow, simg_args.schedule);
    add_dist_options(sim_grow, simg_args.dist);
    sim_grow->add_option("--arrivals", simg_args.arrivals, "arrival horizon")
        ->capture_default_str();
    sim_grow->add_option("--n0", simg_args.n0)->capture_default_str();
    sim_grow->add_option("--seed", simg_args.seed)->capture_default_str();
    sim_grow->add_option("--replicates", simg_args.replicates)->capture_default_str();
    sim_grow->add_flag("--per-event", simg_args.per_event,
                       "sample after every event, not only at arrivals");
    sim_grow->add_flag("--overlay", simg_args.overlay);
    sim_grow->add_option("--csv", simg_args.csv_path);
    sim_grow->add_option("--json", simg_args.json_path);
    sim_grow->callback([&] { rc = cmd_simulate_growing(simg_args); });

    // compare
    auto* compare = app.add_subcommand(
        "compare", "run simulation and recursion, verdict in stderr units");
    compare->require_subcommand(1);

    auto* cmp_fixed = compare->add_subcommand("fixed", "ensemble vs mixed-event recursion");
    cmp_fixed->add_option("--n", cmpf_args.n)->required();
    cmp_fixed->add_option("--p", cmpf_args.p)->required();
    add_dist_options(cmp_fixed, cmpf_args.dist);
    cmp_fixed->add_option("--events", cmpf_args.events)->capture_default_str();
    cmp_fixed->add_option("--seed", cmpf_args.seed)->capture_default_str();
    cmp_fixed->add_option("--replicates", cmpf_args.replicates)->capture_default_str();
    cmp_fixed->add_option("--init", cmpf_args.init)->capture_default_str();
    cmp_fixed->add_option("--consensus-value", cmpf_args.consensus_value);
    cmp_fixed->add_option("--values", cmpf_args.values)->delimiter(',');
    cmp_fixed->add_option("--k", cmpf_args.k, "stderr multiple per point")
        ->capture_default_str();
    cmp_fixed->add_option("--pass-fraction", cmpf_args.pass_fraction)
        ->capture_default_str();
    cmp_fixed->add_option("--analytic-p", cmpf_args.analytic_p,
                          "override p on the analytic side");
    cmp_fixed->add_option("--csv", cmpf_args.csv_path);
    cmp_fixed->add_option("--json", cmpf_args.json_path);
    cmp_fixed->callback([&] { rc = cmd_compare_fixed(cmpf_args); });

    auto* cmp_grow = compare->add_subcommand("growing",
                                             "ensemble vs arrival-time recursion");
    add_schedule_options(cmp_grow, cmpg_args.schedule);
    add_dist_options(cmp_grow, cmpg_args.dist);
    cmp_grow->add_option("--arrivals", cmpg_args.arrivals)->capture_default_str();
    cmp_grow->add_option("--n0", cmpg_args.n0)->capture_default_str();
    cmp_grow->add_option("--seed", cmpg_args.seed)->capture_default_str();
    cmp_grow->add_option("--replicates", cmpg_args.replicates)->capture_default_str();
    cmp_grow->add_option("--min-n", cmpg_args.min_n,
                         "first size included in the verdict")
        ->capture_default_str();
    cmp_grow->add_option("--k", cmpg_args.k)->capture_default_str();
    cmp_grow->add_option("--pass-fraction", cmpg_args.pass_fraction)
        ->capture_default_str();
    cmp_grow->add_option("--analytic-p", cmpg_args.analytic_p);
    cmp_grow->add_option("--csv", cmpg_args.csv_path);
    cmp_grow->add_option("--json", cmpg_args.json_path);
    cmp_grow->callback([&] { rc = cmd_compare_growing(cmpg_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
