// Command-line driver: single runs, epsilon sweeps, self-checks and profile tables.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "qsl/config.hpp"
#include "qsl/harness.hpp"
#include "qsl/selfcheck.hpp"

namespace {

int code(qsl::ExitCode c) { return static_cast<int>(c); }

qsl::RunConfig load(const std::string& path) {
    if (path.empty()) {
        qsl::RunConfig c = qsl::config_from_json(nlohmann::json());
        c.validate();
        return c;
    }
    return qsl::load_config(path);
}

void print_warnings(const qsl::RunConfig& c) {
    for (const auto& w : c.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Q-tensor sharp-interface convergence harness"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    double eps = 0;
    int jobs = 0, snapshot_every = 0;
    bool verbose = false;

    auto* run = app.add_subcommand("run", "simulate one eps and write its time series");
    run->add_option("--config", config_path, "JSON configuration (defaults when omitted)");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--eps", eps, "interface width (default: first entry of the eps list)");
    run->add_option("--snapshot-every", snapshot_every, "diagnostics cadence in steps");
    run->add_flag("-v,--verbose", verbose, "progress on stderr");

    auto* sw = app.add_subcommand("sweep", "run every eps of the configuration and fit convergence rates");
    sw->add_option("--config", config_path, "JSON configuration (defaults when omitted)");
    sw->add_option("--out", out_dir, "output directory");
    sw->add_option("--jobs", jobs, "concurrent runs (capped by QSL_THREADS)");
    sw->add_option("--snapshot-every", snapshot_every, "diagnostics cadence in steps");
    sw->add_flag("-v,--verbose", verbose, "progress on stderr");

    auto* check = app.add_subcommand("check", "property checks of the structure functions");

    auto* dump = app.add_subcommand("dump-profile", "write S, f and g tables as CSV");
    dump->add_option("--config", config_path, "JSON configuration (bulk coefficients)");
    dump->add_option("--out", out_dir, "output directory")->default_val("profile");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) {
            bool ok = true;
            for (const auto& line : qsl::run_selfcheck()) {
                std::printf("%-16s %s  %s\n", line.name.c_str(), line.pass ? "PASS" : "FAIL", line.detail.c_str());
                ok = ok && line.pass;
            }
            return ok ? 0 : code(qsl::ExitCode::invariant_violation);
        }

        qsl::RunConfig cfg = load(config_path);
        if (snapshot_every > 0) cfg.snapshot_every = snapshot_every;
        if (!out_dir.empty()) cfg.output = out_dir;

        if (*dump) {
            qsl::dump_profile(cfg.bulk, out_dir.empty() ? "profile" : out_dir);
            return 0;
        }
        if (*run) {
            if (eps > 0) cfg.eps = {eps};
            cfg.validate();
            print_warnings(cfg);
            qsl::RunOptions opt;
            opt.out_dir = std::filesystem::path(cfg.output);
            opt.quiet = !verbose;
            const qsl::RunResult r = qsl::run_single(cfg, cfg.eps.front(), opt);
            if (r.status != qsl::RunStatus::ok) {
                std::fprintf(stderr, "run failed (%s): %s\n", qsl::to_string(r.status).c_str(), r.failure.c_str());
                return code(qsl::exit_code(r.status));
            }
            const auto* last = r.last();
            std::printf("eps=%g steps=%ld E(T)=%.6e E_vol(T)=%.6e R(T)=%.6f\n", r.eps, r.steps_done, last->E,
                        last->E_vol, r.radius_final);
            return 0;
        }
        if (*sw) {
            if (jobs > 0) cfg.jobs = jobs;
            cfg.validate();
            print_warnings(cfg);
            const qsl::SweepSummary s = qsl::sweep(cfg, std::filesystem::path(cfg.output), cfg.jobs, !verbose);
            for (const auto& r : s.runs)
                std::printf("eps=%-6g status=%s E(T)+E_vol(T)=%.6e\n", r.eps, qsl::to_string(r.status).c_str(),
                            r.last() ? r.last()->E + r.last()->E_vol : NAN);
            if (s.fit_total) std::printf("slope(E+E_vol) = %.4f (r2 %.4f)\n", s.fit_total->slope, s.fit_total->r2);
            if (s.all_ok) return 0;
            for (const auto& r : s.runs)
                if (r.status != qsl::RunStatus::ok) return code(qsl::exit_code(r.status));
            return 0;
        }
    } catch (const qsl::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return code(qsl::ExitCode::config_error);
    } catch (const qsl::InvariantViolation& e) {
        std::fprintf(stderr, "invariant violation: %s\n", e.what());
        return code(qsl::ExitCode::invariant_violation);
    } catch (const qsl::SolverNonConvergence& e) {
        std::fprintf(stderr, "solver did not converge: %s\n", e.what());
        return code(qsl::ExitCode::solver_nonconvergence);
    }
    return 0;
}
