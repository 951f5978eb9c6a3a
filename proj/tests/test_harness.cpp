#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "qsl/config.hpp"
#include "qsl/harness.hpp"

using namespace qsl;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("qsl_test_" + name);
    fs::remove_all(p);
    return p;
}

RunConfig small_circle() {
    RunConfig c;
    c.eps = {0.1};
    c.delta = 0.12;
    c.t_final = 0.002;
    c.snapshot_every = 5;
    c.validate();
    return c;
}

std::string first_line(const fs::path& p) {
    std::ifstream is(p);
    std::string s;
    std::getline(is, s);
    return s;
}

}  // namespace

TEST(FitRate, ExactPowerLaws) {
    const FitResult a = fit_rate({{0.1, 0.2}, {0.05, 0.1}, {0.025, 0.05}});
    EXPECT_NEAR(a.slope, 1.0, 1e-12);
    EXPECT_NEAR(a.r2, 1.0, 1e-12);
    EXPECT_NEAR(a.slope_stderr, 0.0, 1e-12);
    const FitResult b = fit_rate({{0.1, 0.01}, {0.05, 0.0025}, {0.02, 0.0004}, {0.01, 0.0001}});
    EXPECT_NEAR(b.slope, 2.0, 1e-12);
    EXPECT_NEAR(std::exp(b.intercept), 1.0, 1e-12);
}

TEST(FitRate, NoisyDataHasConfidenceIntervalCoveringSlope) {
    std::mt19937_64 rng(51);
    std::normal_distribution<double> n(0.0, 0.02);
    std::vector<std::pair<double, double>> pts;
    for (double e = 0.1; e > 0.005; e *= 0.8) pts.emplace_back(e, 3.0 * e * std::exp(n(rng)));
    const FitResult f = fit_rate(pts);
    EXPECT_NEAR(f.slope, 1.0, 0.05);
    EXPECT_LT(f.ci95_low, f.slope);
    EXPECT_GT(f.ci95_high, f.slope);
    EXPECT_GT(f.r2, 0.99);
}

TEST(FitRate, NonpositivePointsAreExcludedWithWarning) {
    const FitResult f = fit_rate({{0.1, 0.1}, {0.05, 0.0}, {0.025, 0.025}, {0.01, -1.0}});
    EXPECT_EQ(f.used, 2);
    EXPECT_EQ(f.warnings.size(), 2u);
    EXPECT_NEAR(f.slope, 1.0, 1e-12);
    EXPECT_TRUE(std::isnan(f.ci95_low));
    EXPECT_THROW(fit_rate({{0.1, 0.1}, {0.05, 0.0}}), std::invalid_argument);
}

TEST(Config, DefaultsAreMaterialized) {
    RunConfig c = config_from_json(nlohmann::json::object());
    c.validate();
    EXPECT_EQ(c.eps.size(), 4u);
    EXPECT_EQ(c.kind, InterfaceKind::circle);
    const nlohmann::json j = materialize_config({{"t_final", 0.05}});
    EXPECT_EQ(j.at("t_final").get<double>(), 0.05);
    EXPECT_TRUE(j.at("bulk").contains("a"));
    const RunConfig back = config_from_json(config_to_json(c));
    EXPECT_EQ(back.eps, c.eps);
    EXPECT_EQ(back.R0, c.R0);
}

TEST(Config, InvalidInputIsRejected) {
    auto bad = [](const nlohmann::json& j) {
        RunConfig c = config_from_json(j);
        c.validate();
    };
    EXPECT_THROW(bad({{"no_such_key", 1}}), ConfigError);
    EXPECT_THROW(bad({{"eps", {0.2}}}), ConfigError);                          // delta not larger than eps
    EXPECT_THROW(bad({{"interface", {{"R0", 0.8}}}}), ConfigError);            // too close to the wall
    EXPECT_THROW(bad({{"t_final", 0.5}}), ConfigError);                        // disc would vanish
    EXPECT_THROW(bad({{"interface", {{"kind", "flat"}}}}), ConfigError);
    EXPECT_THROW(bad({{"domain", {{"boundary", "neumann"}}}}), ConfigError);
    EXPECT_THROW(bad({{"eps", nlohmann::json::array()}}), ConfigError);
    EXPECT_THROW(bad({{"bulk", {{"b", 1.0}}}}), ConfigError);                  // no nematic minimum
    EXPECT_THROW(load_config("/nonexistent/qsl.json"), ConfigError);
}

TEST(Config, NarrowCutoffWarns) {
    RunConfig c = config_from_json({{"eps", {0.06, 0.05, 0.04}}});
    c.validate();
    EXPECT_FALSE(c.warnings.empty());
}

TEST(WorkerCount, CappedByEnvironment) {
    ::setenv("QSL_THREADS", "2", 1);
    EXPECT_EQ(worker_count(8), 2);
    EXPECT_EQ(worker_count(1), 1);
    ::setenv("QSL_THREADS", "junk", 1);
    EXPECT_EQ(worker_count(8), 8);
    ::unsetenv("QSL_THREADS");
    EXPECT_EQ(worker_count(3), 3);
    EXPECT_EQ(worker_count(0), 1);
}

TEST(RunSingle, WritesTimeSeries) {
    const fs::path dir = scratch("run");
    RunOptions opt;
    opt.out_dir = dir;
    const RunConfig c = small_circle();
    const RunResult r = run_single(c, 0.1, opt);
    ASSERT_EQ(r.status, RunStatus::ok) << r.failure;
    EXPECT_EQ(first_line(dir / "timeseries.csv"), std::string(kCsvHeader));
    EXPECT_TRUE(fs::exists(dir / "summary.json"));
    EXPECT_TRUE(fs::exists(dir / "config.json"));
    EXPECT_TRUE(fs::exists(dir / "coercivity.csv"));
    EXPECT_EQ(r.steps_done, r.steps_planned);
    EXPECT_NEAR(r.last()->t, c.t_final, 1e-14);
    EXPECT_EQ(r.records.size(), static_cast<std::size_t>((r.steps_planned + 4) / 5 + 1));
    // left-point dissipation accumulates monotonically
    for (std::size_t k = 1; k < r.records.size(); ++k)
        EXPECT_GE(r.records[k].diss_parallel, r.records[k - 1].diss_parallel);
    fs::remove_all(dir);
}

TEST(RunSingle, FailureRowNamesTheInvariant) {
    const fs::path dir = scratch("fail");
    RunConfig c = small_circle();
    c.cg_max_iter = 1;
    RunOptions opt;
    opt.out_dir = dir;
    const RunResult r = run_single(c, 0.1, opt);
    EXPECT_EQ(r.status, RunStatus::solver_nonconvergence);
    EXPECT_EQ(exit_code(r.status), ExitCode::solver_nonconvergence);
    std::ifstream is(dir / "timeseries.csv");
    std::string line, last;
    while (std::getline(is, line)) last = line;
    EXPECT_EQ(last.rfind("FAILED,solver_nonconvergence,", 0), 0u) << last;
    fs::remove_all(dir);
}

TEST(RunSingle, Deterministic) {
    const RunConfig c = small_circle();
    const RunResult a = run_single(c, 0.1), b = run_single(c, 0.1);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t k = 0; k < a.records.size(); ++k) {
        EXPECT_EQ(a.records[k].E, b.records[k].E);
        EXPECT_EQ(a.records[k].E_vol, b.records[k].E_vol);
        EXPECT_EQ(a.records[k].diss_parallel, b.records[k].diss_parallel);
    }
}

TEST(RunSingle, PeriodicSlabStaysNearItsInitialEntropy) {
    RunConfig c = config_from_json({{"domain", {{"boundary", "periodic"}, {"half_width", 0.25}, {"half_height", 1.0}}},
                                    {"interface", {{"kind", "slab"}, {"half_width", 0.5}, {"delta", 0.15}}},
                                    {"eps", {0.1}},
                                    {"t_final", 0.01},
                                    {"solver", {{"freeze_velocity", true}}}});
    c.validate();
    const RunResult r = run_single(c, 0.1);
    ASSERT_EQ(r.status, RunStatus::ok) << r.failure;
    for (const auto& rec : r.records) EXPECT_LE(rec.E, 2 * r.first()->E);
    EXPECT_TRUE(std::isnan(r.radius_final));
}

TEST(Csv, RowHasOneFieldPerColumn) {
    DiagnosticsRecord r;
    r.R_measured = NAN;
    const std::string row = format_csv_row(r);
    const std::string head = kCsvHeader;
    EXPECT_EQ(std::count(row.begin(), row.end(), ','), std::count(head.begin(), head.end(), ','));
}

TEST(Profile, DumpWritesTables) {
    const fs::path dir = scratch("profile");
    dump_profile(BulkParams{}, dir, 11);
    EXPECT_TRUE(fs::exists(dir / "wave_profile.csv"));
    EXPECT_TRUE(fs::exists(dir / "uniaxial.csv"));
    fs::remove_all(dir);
}
