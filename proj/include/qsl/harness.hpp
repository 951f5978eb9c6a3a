#pragma once

// Orchestration: single runs with periodic diagnostics records, epsilon
// sweeps with log-log rate fits, and the CSV / JSON artifacts they emit.

#include <boost/math/distributions/students_t.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qsl/config.hpp"
#include "qsl/diagnostics.hpp"
#include "qsl/errors.hpp"
#include "qsl/snapshot.hpp"
#include "qsl/solver.hpp"

namespace qsl {

namespace fs = std::filesystem;

inline constexpr const char* kCsvHeader =
    "t,E,E_vol,kinetic,gl_energy,diss_parallel_cum,diss_transport_cum,maxQ,R_measured,clamp_count";

struct DiagnosticsRecord {
    double t = 0;
    double E = 0;
    double E_vol = 0;
    double kinetic = 0;
    double gl_energy = 0;
    double diss_parallel = 0;   ///< accumulated up to t
    double diss_transport = 0;  ///< accumulated up to t
    double maxQ = 0;
    double R_measured = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t clamp_count = 0;
};

inline std::string format_csv_row(const DiagnosticsRecord& r) {
    std::ostringstream os;
    os << std::setprecision(17) << r.t << ',' << r.E << ',' << r.E_vol << ',' << r.kinetic << ',' << r.gl_energy
       << ',' << r.diss_parallel << ',' << r.diss_transport << ',' << r.maxQ << ',';
    if (std::isnan(r.R_measured)) os << "nan";
    else os << r.R_measured;
    os << ',' << r.clamp_count;
    return os.str();
}

enum class RunStatus { ok, invariant_violation, solver_nonconvergence, config_error };

inline std::string to_string(RunStatus s) {
    switch (s) {
        case RunStatus::ok: return "ok";
        case RunStatus::invariant_violation: return "invariant_violation";
        case RunStatus::solver_nonconvergence: return "solver_nonconvergence";
        case RunStatus::config_error: return "config_error";
    }
    return "?";
}

inline ExitCode exit_code(RunStatus s) {
    switch (s) {
        case RunStatus::ok: return ExitCode::ok;
        case RunStatus::invariant_violation: return ExitCode::invariant_violation;
        case RunStatus::solver_nonconvergence: return ExitCode::solver_nonconvergence;
        case RunStatus::config_error: return ExitCode::config_error;
    }
    return ExitCode::invariant_violation;
}

/// Everything a run reports besides its time series.
struct RunResult {
    double eps = 0;
    double h = 0;
    double dt = 0;
    long steps_planned = 0;
    long steps_done = 0;
    RunStatus status = RunStatus::ok;
    std::string failure;  ///< "<invariant>: message" when status != ok

    std::vector<DiagnosticsRecord> records;
    double c0 = 0;
    StepStats stats{};
    double sup_kinetic = 0;
    double min_E = INFINITY;
    double min_E_vol = INFINITY;
    double max_lipschitz_excess = -INFINITY;

    // coercivity: per quantity min value and max ratio value / E over snapshots
    double coercivity_min[CoercivityReport::count];
    double coercivity_ratio[CoercivityReport::count];
    bool coercivity_unbounded = false;  ///< a positive value met E <= 0

    double radius_final = std::numeric_limits<double>::quiet_NaN();
    double radius_exact = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::string> warnings;

    RunResult() {
        std::fill(std::begin(coercivity_min), std::end(coercivity_min), INFINITY);
        std::fill(std::begin(coercivity_ratio), std::end(coercivity_ratio), 0.0);
    }

    const DiagnosticsRecord* first() const { return records.empty() ? nullptr : &records.front(); }
    const DiagnosticsRecord* last() const { return records.empty() ? nullptr : &records.back(); }
};

struct RunOptions {
    std::optional<fs::path> out_dir;  ///< nothing is written when empty
    bool quiet = true;
};

namespace detail {

inline std::string eps_tag(double e) {
    std::ostringstream os;
    os << "eps_" << e;
    return os.str();
}

inline void write_json(const fs::path& p, const json& j) {
    std::ofstream os(p);
    if (!os) throw std::runtime_error("cannot write " + p.string());
    os << std::setw(2) << j << '\n';
}

inline json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace detail

inline json run_result_json(const RunResult& r) {
    json j;
    j["eps"] = r.eps;
    j["h"] = r.h;
    j["dt"] = r.dt;
    j["steps_planned"] = r.steps_planned;
    j["steps_done"] = r.steps_done;
    j["status"] = to_string(r.status);
    if (!r.failure.empty()) j["failure"] = r.failure;
    j["c0"] = r.c0;
    j["max_q"] = r.stats.max_q;
    j["max_energy_increase"] = detail::number(r.stats.max_energy_increase);
    j["max_divergence"] = r.stats.max_divergence;
    j["max_q_cg_iterations"] = r.stats.max_q_iterations;
    j["max_viscous_cg_iterations"] = r.stats.max_viscous_iterations;
    j["sup_kinetic"] = r.sup_kinetic;
    j["min_E"] = detail::number(r.min_E);
    j["min_E_vol"] = detail::number(r.min_E_vol);
    j["max_lipschitz_excess"] = detail::number(r.max_lipschitz_excess);
    if (const auto* f = r.first()) {
        j["E0"] = f->E;
        j["E_vol0"] = f->E_vol;
    }
    if (const auto* l = r.last()) {
        j["t_final"] = l->t;
        j["E_T"] = l->E;
        j["E_vol_T"] = l->E_vol;
        j["diss_parallel"] = l->diss_parallel;
        j["diss_transport"] = l->diss_transport;
        j["clamp_count"] = l->clamp_count;
    }
    j["radius_final"] = detail::number(r.radius_final);
    j["radius_exact"] = detail::number(r.radius_exact);
    json coer = json::object();
    for (int k = 0; k < CoercivityReport::count; ++k)
        coer[CoercivityReport::labels[k]] = {{"min", detail::number(r.coercivity_min[k])},
                                             {"max_ratio_to_E", detail::number(r.coercivity_ratio[k])}};
    j["coercivity"] = coer;
    j["coercivity_unbounded"] = r.coercivity_unbounded;
    j["warnings"] = r.warnings;
    return j;
}

/// Steps one epsilon from the well-prepared initial state to t_final, recording
/// diagnostics every `snapshot_every` steps (and at both ends). Hard
/// invariant failures end the run early; the status says which.
inline RunResult run_single(const RunConfig& cfg, double eps, const RunOptions& opt = {}) {
    RunResult res;
    res.eps = eps;
    res.warnings = cfg.warnings;

    std::ofstream csv, coer_csv;
    if (opt.out_dir) {
        fs::create_directories(*opt.out_dir);
        RunConfig one = cfg;
        one.eps = {eps};
        json cj = config_to_json(one);
        detail::write_json(*opt.out_dir / "config.json", cj);
        csv.open(*opt.out_dir / "timeseries.csv");
        csv << kCsvHeader << '\n';
        coer_csv.open(*opt.out_dir / "coercivity.csv");
        coer_csv << "t,E";
        for (const char* l : CoercivityReport::labels) coer_csv << ',' << l;
        coer_csv << '\n';
        coer_csv << std::setprecision(17);
    }

    auto finish = [&](RunStatus st, const std::string& msg) {
        res.status = st;
        res.failure = msg;
        if (csv.is_open() && st != RunStatus::ok) csv << "FAILED," << to_string(st) << ",\"" << msg << "\"\n";
        if (opt.out_dir) detail::write_json(*opt.out_dir / "summary.json", run_result_json(res));
        return res;
    };

    const AnalyticInterface iface0 = cfg.interface();
    Grid2D grid;
    SolverConfig scfg;
    std::optional<Simulation> sim;
    try {
        grid = cfg.grid(eps);
        scfg = cfg.solver(eps);
        res.h = grid.h;
        res.dt = scfg.dt;
        res.steps_planned = cfg.steps(eps);
        sim.emplace(build_initial(iface0, grid, eps, cfg.bulk, constant_director(cfg.director), scfg.dt), scfg);
    } catch (const ConfigError& e) {
        return finish(RunStatus::config_error, e.what());
    }
    res.c0 = sim->c0();

    ClampCounter clamps;
    double diss_par = 0, diss_tr = 0;
    const bool circle = cfg.kind == InterfaceKind::circle;

    auto record = [&](const SimState& s, const AnalyticInterface& iface) {
        DiagnosticsRecord r;
        r.t = s.t;
        r.E = relative_entropy(s, iface, &clamps);
        r.E_vol = bulk_error(s.Q, s.params, iface, &clamps);
        const EnergyParts e = total_energy(s);
        r.kinetic = e.kinetic;
        r.gl_energy = e.ginzburg_landau;
        r.diss_parallel = diss_par;
        r.diss_transport = diss_tr;
        r.maxQ = max_norm(s.Q);
        if (circle) r.R_measured = measured_radius(s.Q, s.params, iface.center).radius;
        r.clamp_count = clamps.value();

        const CoercivityReport rep = coercivity_report(s, iface, &clamps);
        for (int k = 0; k < CoercivityReport::count; ++k) {
            const double v = rep.values[k];
            res.coercivity_min[k] = std::min(res.coercivity_min[k], v);
            if (rep.E > 0) res.coercivity_ratio[k] = std::max(res.coercivity_ratio[k], v / rep.E);
            else if (v > 1e-12) res.coercivity_unbounded = true;
        }
        if (coer_csv.is_open()) {
            coer_csv << s.t << ',' << rep.E;
            for (double v : rep.values) coer_csv << ',' << v;
            coer_csv << '\n';
        }
        res.min_E = std::min(res.min_E, r.E);
        res.min_E_vol = std::min(res.min_E_vol, r.E_vol);
        res.max_lipschitz_excess = std::max(res.max_lipschitz_excess, lipschitz_excess(s.Q, s.params, s.eps));
        res.records.push_back(r);
        if (csv.is_open()) csv << format_csv_row(r) << '\n' << std::flush;

        if (!std::isfinite(r.E) || !std::isfinite(r.E_vol) || !std::isfinite(r.diss_parallel) ||
            !std::isfinite(r.diss_transport))
            throw InvariantViolation("finite", "non-finite diagnostics at t = " + std::to_string(s.t));
        if (r.E < -1e-12) throw InvariantViolation("relative_entropy_sign", "E = " + std::to_string(r.E));
        if (r.E_vol < -1e-12) throw InvariantViolation("bulk_error_sign", "E_vol = " + std::to_string(r.E_vol));
        if (res.max_lipschitz_excess > 1e-10)
            throw InvariantViolation("lipschitz", "|D d^F| exceeds sqrt(2 F_eps) by " +
                                                      std::to_string(res.max_lipschitz_excess));
    };

    auto dump = [&](const SimState& s) {
        if (!opt.out_dir || cfg.field_snapshot_every == 0) return;
        if (s.step % cfg.field_snapshot_every != 0 && s.step != res.steps_planned) return;
        fs::create_directories(*opt.out_dir / "snapshots");
        char name[64];
        std::snprintf(name, sizeof name, "Q_%08ld.qslf", s.step);
        write_snapshot(*opt.out_dir / "snapshots" / name, s.Q);
    };

    try {
        record(sim->state(), iface0);
        dump(sim->state());
        res.sup_kinetic = sim->energy().kinetic;
        for (long n = 0; n < res.steps_planned; ++n) {
            const SimState before = sim->state();
            const AnalyticInterface iface_n = evolve(iface0, before.t);
            sim->step();
            const DissipationIncrement inc = dissipation_terms(before, sim->state().Q, before.dt, iface_n, &clamps);
            diss_par += inc.parallel;
            diss_tr += inc.transport;
            res.steps_done = n + 1;
            res.sup_kinetic = std::max(res.sup_kinetic, sim->energy().kinetic);
            const bool last = n + 1 == res.steps_planned;
            if (last || (n + 1) % cfg.snapshot_every == 0) record(sim->state(), evolve(iface0, sim->state().t));
            dump(sim->state());
            if (!opt.quiet && (n + 1) % 500 == 0)
                std::fprintf(stderr, "[eps=%g] step %ld/%ld\n", eps, n + 1, res.steps_planned);
        }
    } catch (const InvariantViolation& e) {
        res.stats = sim->stats();
        return finish(RunStatus::invariant_violation, e.what());
    } catch (const SolverNonConvergence& e) {
        res.stats = sim->stats();
        return finish(RunStatus::solver_nonconvergence, e.what());
    }
    res.stats = sim->stats();
    if (circle) {
        res.radius_final = res.records.back().R_measured;
        res.radius_exact = iface0.radius(sim->state().t);
    }
    return finish(RunStatus::ok, "");
}

/// Ordinary least squares of log(value) against log(eps).
struct FitResult {
    double slope = NAN;
    double intercept = NAN;
    double r2 = NAN;
    double slope_stderr = NAN;
    double ci95_low = NAN;
    double ci95_high = NAN;
    int used = 0;
    std::vector<std::string> warnings;  ///< excluded points
};

inline FitResult fit_rate(const std::vector<std::pair<double, double>>& pairs) {
    FitResult f;
    std::vector<double> xs, ys;
    for (const auto& [e, v] : pairs) {
        if (!(v > 0) || !(e > 0) || !std::isfinite(v)) {
            std::ostringstream os;
            os << "excluded non-positive point (" << e << ", " << v << ")";
            f.warnings.push_back(os.str());
            continue;
        }
        xs.push_back(std::log(e));
        ys.push_back(std::log(v));
    }
    f.used = static_cast<int>(xs.size());
    if (f.used < 2) throw std::invalid_argument("fit_rate: fewer than 2 positive points");
    const double n = f.used;
    double mx = 0, my = 0;
    for (int i = 0; i < f.used; ++i) mx += xs[i], my += ys[i];
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < f.used; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (!(sxx > 0)) throw std::invalid_argument("fit_rate: eps values are all equal");
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double sse = 0;
    for (int i = 0; i < f.used; ++i) {
        const double r = ys[i] - (f.intercept + f.slope * xs[i]);
        sse += r * r;
    }
    f.r2 = syy > 0 ? 1.0 - sse / syy : 1.0;
    if (f.used > 2) {
        f.slope_stderr = std::sqrt(sse / (n - 2) / sxx);
        const boost::math::students_t dist(n - 2);
        const double tq = boost::math::quantile(boost::math::complement(dist, 0.025));
        f.ci95_low = f.slope - tq * f.slope_stderr;
        f.ci95_high = f.slope + tq * f.slope_stderr;
    }
    return f;
}

inline json fit_json(const FitResult& f) {
    return {{"slope", detail::number(f.slope)},
            {"intercept", detail::number(f.intercept)},
            {"r2", detail::number(f.r2)},
            {"slope_stderr", detail::number(f.slope_stderr)},
            {"ci95", {detail::number(f.ci95_low), detail::number(f.ci95_high)}},
            {"points", f.used},
            {"warnings", f.warnings}};
}

/// Pass/fail of the sweep-level checks.
struct SweepChecks {
    bool max_principle = false;
    bool energy_inequality = false;
    bool well_prepared = false;
    bool convergence = false;
    bool velocity_smallness = false;
    bool interface_tracking = false;
    bool coercivity = false;
    bool nonnegativity = false;
};

struct SweepSummary {
    std::vector<RunResult> runs;  ///< in the order of the eps list
    std::optional<FitResult> fit_total;  ///< E(T) + E_vol(T)
    std::optional<FitResult> fit_parallel;
    std::optional<FitResult> fit_transport;
    std::optional<FitResult> fit_kinetic;  ///< sup_t kinetic energy
    SweepChecks checks{};
    double well_prepared_ratio_E = NAN;
    double well_prepared_ratio_Evol = NAN;
    double velocity_spread = NAN;  ///< max over runs of the distance from the median, as a factor
    bool all_ok = false;
};

/// Worker count: the requested jobs capped by QSL_THREADS when set.
inline int worker_count(int requested) {
    int n = std::max(1, requested);
    if (const char* env = std::getenv("QSL_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) n = std::min<long>(n, cap);
    }
    return n;
}

inline double max_over_min(const std::vector<double>& v) {
    if (v.empty()) return NAN;
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *lo > 0 ? *hi / *lo : INFINITY;
}

inline void evaluate_checks(const RunConfig& cfg, SweepSummary& s) {
    SweepChecks& c = s.checks;
    bool all_ok = !s.runs.empty();
    bool mp = true, en = true, nn = true, co = true, tr = true;
    std::vector<double> e0, v0, kin;
    for (const RunResult& r : s.runs) {
        all_ok = all_ok && r.status == RunStatus::ok;
        const bool mp_fail = r.failure.rfind("max_principle", 0) == 0;
        const bool en_fail = r.failure.rfind("energy", 0) == 0;
        mp = mp && r.status == RunStatus::ok && !mp_fail && r.stats.max_q <= r.c0 * (1 + 1e-12);
        en = en && r.status == RunStatus::ok && !en_fail && r.stats.max_energy_increase <= cfg.energy_slack;
        nn = nn && r.status == RunStatus::ok && r.min_E >= -1e-12 && r.min_E_vol >= -1e-12;
        bool cr = r.status == RunStatus::ok && !r.coercivity_unbounded;
        for (int k = 0; k < CoercivityReport::count; ++k)
            cr = cr && r.coercivity_min[k] >= -1e-12 && std::isfinite(r.coercivity_ratio[k]);
        co = co && cr;
        if (const auto* f = r.first()) {
            e0.push_back(f->E / r.eps);
            v0.push_back(f->E_vol / r.eps);
        }
        kin.push_back(r.sup_kinetic / r.eps);
        if (cfg.kind == InterfaceKind::circle) {
            tr = tr && r.status == RunStatus::ok && std::isfinite(r.radius_final) &&
                 std::abs(r.radius_final - r.radius_exact) <= 5.0 * (r.eps + r.h);
        }
    }
    c.max_principle = mp;
    c.energy_inequality = en;
    c.nonnegativity = nn;
    c.coercivity = co;
    c.interface_tracking = cfg.kind == InterfaceKind::circle && tr;
    s.well_prepared_ratio_E = max_over_min(e0);
    s.well_prepared_ratio_Evol = max_over_min(v0);
    c.well_prepared = e0.size() == s.runs.size() && s.well_prepared_ratio_E < 2.0 && s.well_prepared_ratio_Evol < 2.0;

    if (!kin.empty()) {
        std::vector<double> sorted = kin;
        std::sort(sorted.begin(), sorted.end());
        const std::size_t m = sorted.size();
        const double med = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
        double spread = 1.0;
        for (double k : kin) spread = std::max(spread, med > 0 && k > 0 ? std::max(k / med, med / k) : INFINITY);
        s.velocity_spread = spread;
        c.velocity_smallness = all_ok && spread <= 3.0;
    }

    std::vector<std::pair<double, double>> tot, par, trn, kp;
    for (const RunResult& r : s.runs) {
        if (r.status != RunStatus::ok || !r.last()) continue;
        tot.emplace_back(r.eps, r.last()->E + r.last()->E_vol);
        par.emplace_back(r.eps, r.last()->diss_parallel);
        trn.emplace_back(r.eps, r.last()->diss_transport);
        kp.emplace_back(r.eps, r.sup_kinetic);
    }
    auto try_fit = [](const std::vector<std::pair<double, double>>& p) -> std::optional<FitResult> {
        if (p.size() < 3) return std::nullopt;
        try {
            return fit_rate(p);
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
    };
    s.fit_total = try_fit(tot);
    s.fit_parallel = try_fit(par);
    s.fit_transport = try_fit(trn);
    s.fit_kinetic = try_fit(kp);
    c.convergence = all_ok && s.fit_total && s.fit_parallel && s.fit_transport && s.fit_total->slope >= 0.7 &&
                    s.fit_total->slope <= 1.6 && s.fit_parallel->slope >= 0.7 && s.fit_transport->slope >= 0.7;
    s.all_ok = all_ok;
}

inline json sweep_summary_json(const RunConfig& cfg, const SweepSummary& s) {
    json j;
    j["status"] = s.all_ok ? "ok" : "failed";
    j["dt_rule"] = {{"eps2_factor", cfg.dt_eps2_factor}, {"h2_factor", cfg.dt_h2_factor}, {"fixed", cfg.dt_fixed}};
    j["runs"] = json::array();
    for (const RunResult& r : s.runs) j["runs"].push_back(run_result_json(r));
    json fits = json::object();
    if (s.fit_total) fits["E_plus_E_vol"] = fit_json(*s.fit_total);
    if (s.fit_parallel) fits["diss_parallel"] = fit_json(*s.fit_parallel);
    if (s.fit_transport) fits["diss_transport"] = fit_json(*s.fit_transport);
    if (s.fit_kinetic) fits["sup_kinetic"] = fit_json(*s.fit_kinetic);
    j["fits"] = fits;
    j["well_prepared_ratio"] = {{"E", detail::number(s.well_prepared_ratio_E)},
                                {"E_vol", detail::number(s.well_prepared_ratio_Evol)}};
    j["velocity_spread"] = detail::number(s.velocity_spread);
    j["checks"] = {{"max_principle", s.checks.max_principle},
                   {"energy_inequality", s.checks.energy_inequality},
                   {"well_prepared", s.checks.well_prepared},
                   {"convergence", s.checks.convergence},
                   {"velocity_smallness", s.checks.velocity_smallness},
                   {"interface_tracking", s.checks.interface_tracking},
                   {"coercivity", s.checks.coercivity},
                   {"nonnegativity", s.checks.nonnegativity}};
    return j;
}

/// Runs every eps of the configuration (concurrently up to `jobs` workers),
/// then fits rates and writes config.json, summary.json and combined.csv.
inline SweepSummary sweep(const RunConfig& cfg, const std::optional<fs::path>& out_dir, int jobs,
                          bool quiet = true) {
    if (cfg.eps.size() < 3) throw ConfigError("a sweep needs at least 3 eps values");
    SweepSummary s;
    s.runs.resize(cfg.eps.size());
    if (out_dir) {
        fs::create_directories(*out_dir);
        detail::write_json(*out_dir / "config.json", config_to_json(cfg));
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < cfg.eps.size(); k = next++) {
            RunOptions opt;
            opt.quiet = quiet;
            if (out_dir) opt.out_dir = *out_dir / detail::eps_tag(cfg.eps[k]);
            s.runs[k] = run_single(cfg, cfg.eps[k], opt);
        }
    };
    const int n = std::min<int>(worker_count(jobs), static_cast<int>(cfg.eps.size()));
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    evaluate_checks(cfg, s);
    if (out_dir) {
        detail::write_json(*out_dir / "summary.json", sweep_summary_json(cfg, s));
        std::ofstream os(*out_dir / "combined.csv");
        os << "eps," << kCsvHeader << '\n';
        for (const RunResult& r : s.runs)
            for (const DiagnosticsRecord& rec : r.records) os << std::setprecision(17) << r.eps << ',' << format_csv_row(rec) << '\n';
    }
    return s;
}

/// Tables of the one-dimensional structure functions.
inline void dump_profile(const BulkParams& p, const fs::path& out_dir, int samples = 201) {
    fs::create_directories(out_dir);
    const double sp = p.s_plus();
    {
        std::ofstream os(out_dir / "wave_profile.csv");
        os << "z,S,dS,d2S\n" << std::setprecision(17);
        for (int k = 0; k < samples; ++k) {
            const double z = -10.0 + 20.0 * k / (samples - 1);
            os << z << ',' << wave_profile(z, p) << ',' << wave_profile_d1(z, p) << ',' << wave_profile_d2(z, p)
               << '\n';
        }
    }
    std::ofstream os(out_dir / "uniaxial.csv");
    os << "s,f,g,dg\n" << std::setprecision(17);
    for (int k = 0; k < samples; ++k) {
        const double s = sp * k / (samples - 1);
        os << s << ',' << f_uni(s, p) << ',' << quasi_dist_uni(s, p) << ',' << quasi_dist_uni_d1(s, p) << '\n';
    }
}

}  // namespace qsl
