#pragma once

// Run configuration: a single JSON document merged over the defaults below,
// validated before any stepping.

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qsl/errors.hpp"
#include "qsl/geometry.hpp"
#include "qsl/grid.hpp"
#include "qsl/qspace.hpp"
#include "qsl/solver.hpp"

namespace qsl {

using json = nlohmann::json;

struct RunConfig {
    double half_width = 1.0;   ///< domain [-L, L] in x
    double half_height = 1.0;  ///< and [-Ly, Ly] in y
    Boundary boundary = Boundary::dirichlet_zero;

    InterfaceKind kind = InterfaceKind::circle;
    Vec2 center{};
    double R0 = 0.6;
    double y0 = 0.0;
    double slab_half_width = 0.5;
    double delta = 0.1;

    std::vector<double> eps{0.08, 0.06, 0.04, 0.03};
    double grid_ratio = 4.0;  ///< h = eps / grid_ratio
    double dt_eps2_factor = 1.0 / 20.0;
    double dt_h2_factor = 0.25;
    double dt_fixed = 0.0;  ///< overrides the rule when > 0
    double t_final = 0.1;

    BulkParams bulk{};
    Vec3 director{0, 0, 1};

    int snapshot_every = 20;        ///< diagnostics record cadence in steps
    int field_snapshot_every = 0;   ///< binary Q dumps, 0 disables
    std::string output = "qsl_out";
    int jobs = 1;

    bool freeze_velocity = false;
    double energy_slack = 1e-8;
    double cg_rtol = 1e-10;
    int cg_max_iter = 2000;

    std::vector<std::string> warnings;  ///< filled by validate()

    AnalyticInterface interface() const {
        switch (kind) {
            case InterfaceKind::circle: return AnalyticInterface::circle(center, R0, delta);
            case InterfaceKind::flat: return AnalyticInterface::flat(y0, delta);
            case InterfaceKind::slab: return AnalyticInterface::slab(y0, slab_half_width, delta);
        }
        return {};
    }

    Grid2D grid(double e) const {
        const double h_target = e / grid_ratio;
        const int nx = std::max(2, static_cast<int>(std::lround(2.0 * half_width / h_target)));
        const double h = 2.0 * half_width / nx;
        const int ny = std::max(2, static_cast<int>(std::lround(2.0 * half_height / h)));
        if (std::abs(ny * h - 2.0 * half_height) > 1e-9 * half_height)
            throw ConfigError("domain height is not a whole number of cells at eps = " + std::to_string(e));
        return Grid2D::centered(nx, ny, h, boundary);
    }

    /// Uniform step: the rule value shrunk so that t_final is hit exactly.
    double dt(double e) const {
        const double h = grid(e).h;
        const double rule = dt_fixed > 0 ? dt_fixed : std::min(dt_eps2_factor * e * e, dt_h2_factor * h * h);
        const double n = std::ceil(t_final / rule - 1e-9);
        return t_final / std::max(1.0, n);
    }
    long steps(double e) const { return std::lround(t_final / dt(e)); }

    SolverConfig solver(double e) const {
        SolverConfig s;
        s.eps = e;
        s.params = bulk;
        s.dt = dt(e);
        s.cg_rtol = cg_rtol;
        s.cg_max_iter = cg_max_iter;
        s.freeze_velocity = freeze_velocity;
        s.energy_slack = energy_slack;
        return s;
    }

    void validate();
};

inline json default_config_json() {
    RunConfig d;
    return json{
        {"domain", {{"half_width", d.half_width}, {"half_height", d.half_height}, {"boundary", "dirichlet_zero"}}},
        {"interface",
         {{"kind", "circle"},
          {"center", {0.0, 0.0}},
          {"R0", d.R0},
          {"y0", d.y0},
          {"half_width", d.slab_half_width},
          {"delta", d.delta}}},
        {"eps", d.eps},
        {"grid_ratio", d.grid_ratio},
        {"dt", {{"eps2_factor", d.dt_eps2_factor}, {"h2_factor", d.dt_h2_factor}, {"fixed", d.dt_fixed}}},
        {"t_final", d.t_final},
        {"bulk", {{"a", d.bulk.a}, {"b", d.bulk.b}, {"c", d.bulk.c}}},
        {"director", {0.0, 0.0, 1.0}},
        {"snapshot_every", d.snapshot_every},
        {"field_snapshot_every", d.field_snapshot_every},
        {"output", d.output},
        {"jobs", d.jobs},
        {"solver",
         {{"freeze_velocity", d.freeze_velocity},
          {"energy_slack", d.energy_slack},
          {"cg_rtol", d.cg_rtol},
          {"cg_max_iter", d.cg_max_iter}}},
    };
}

namespace detail {

// Rejects keys that the defaults do not know, so typos fail loudly.
inline void check_keys(const json& user, const json& defaults, const std::string& path) {
    if (!user.is_object()) return;
    for (auto it = user.begin(); it != user.end(); ++it) {
        if (!defaults.contains(it.key())) throw ConfigError("unknown config key: " + path + it.key());
        if (defaults[it.key()].is_object()) {
            if (!it.value().is_object()) throw ConfigError("config key must be an object: " + path + it.key());
            check_keys(it.value(), defaults[it.key()], path + it.key() + ".");
        }
    }
}

}  // namespace detail

/// The defaults with `user` merged over them.
inline json materialize_config(const json& user) {
    json merged = default_config_json();
    if (user.is_null()) return merged;
    if (!user.is_object()) throw ConfigError("config root must be a JSON object");
    detail::check_keys(user, merged, "");
    merged.merge_patch(user);
    return merged;
}

inline RunConfig config_from_json(const json& user) {
    const json j = materialize_config(user);
    RunConfig c;
    try {
        const json& dom = j.at("domain");
        c.half_width = dom.at("half_width").get<double>();
        c.half_height = dom.at("half_height").get<double>();
        const std::string bc = dom.at("boundary").get<std::string>();
        if (bc == "dirichlet_zero") c.boundary = Boundary::dirichlet_zero;
        else if (bc == "periodic") c.boundary = Boundary::periodic;
        else throw ConfigError("domain.boundary must be dirichlet_zero or periodic");

        const json& itf = j.at("interface");
        const std::string kind = itf.at("kind").get<std::string>();
        if (kind == "circle") c.kind = InterfaceKind::circle;
        else if (kind == "flat") c.kind = InterfaceKind::flat;
        else if (kind == "slab") c.kind = InterfaceKind::slab;
        else throw ConfigError("interface.kind must be circle, flat or slab");
        const auto ctr = itf.at("center").get<std::vector<double>>();
        if (ctr.size() != 2) throw ConfigError("interface.center needs two coordinates");
        c.center = {ctr[0], ctr[1]};
        c.R0 = itf.at("R0").get<double>();
        c.y0 = itf.at("y0").get<double>();
        c.slab_half_width = itf.at("half_width").get<double>();
        c.delta = itf.at("delta").get<double>();

        c.eps = j.at("eps").get<std::vector<double>>();
        c.grid_ratio = j.at("grid_ratio").get<double>();
        c.dt_eps2_factor = j.at("dt").at("eps2_factor").get<double>();
        c.dt_h2_factor = j.at("dt").at("h2_factor").get<double>();
        c.dt_fixed = j.at("dt").at("fixed").get<double>();
        c.t_final = j.at("t_final").get<double>();
        c.bulk = {j.at("bulk").at("a").get<double>(), j.at("bulk").at("b").get<double>(),
                  j.at("bulk").at("c").get<double>()};
        const auto u = j.at("director").get<std::vector<double>>();
        if (u.size() != 3) throw ConfigError("director needs three components");
        c.director = {u[0], u[1], u[2]};
        c.snapshot_every = j.at("snapshot_every").get<int>();
        c.field_snapshot_every = j.at("field_snapshot_every").get<int>();
        c.output = j.at("output").get<std::string>();
        c.jobs = j.at("jobs").get<int>();
        const json& sol = j.at("solver");
        c.freeze_velocity = sol.at("freeze_velocity").get<bool>();
        c.energy_slack = sol.at("energy_slack").get<double>();
        c.cg_rtol = sol.at("cg_rtol").get<double>();
        c.cg_max_iter = sol.at("cg_max_iter").get<int>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return c;
}

inline json config_to_json(const RunConfig& c) {
    json j = default_config_json();
    j["domain"] = {{"half_width", c.half_width}, {"half_height", c.half_height}, {"boundary", to_string(c.boundary)}};
    j["interface"] = {{"kind", to_string(c.kind)},
                      {"center", {c.center.x, c.center.y}},
                      {"R0", c.R0},
                      {"y0", c.y0},
                      {"half_width", c.slab_half_width},
                      {"delta", c.delta}};
    j["eps"] = c.eps;
    j["grid_ratio"] = c.grid_ratio;
    j["dt"] = {{"eps2_factor", c.dt_eps2_factor}, {"h2_factor", c.dt_h2_factor}, {"fixed", c.dt_fixed}};
    j["t_final"] = c.t_final;
    j["bulk"] = {{"a", c.bulk.a}, {"b", c.bulk.b}, {"c", c.bulk.c}};
    j["director"] = {c.director[0], c.director[1], c.director[2]};
    j["snapshot_every"] = c.snapshot_every;
    j["field_snapshot_every"] = c.field_snapshot_every;
    j["output"] = c.output;
    j["jobs"] = c.jobs;
    j["solver"] = {{"freeze_velocity", c.freeze_velocity},
                   {"energy_slack", c.energy_slack},
                   {"cg_rtol", c.cg_rtol},
                   {"cg_max_iter", c.cg_max_iter}};
    return j;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config: " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    RunConfig c = config_from_json(j);
    c.validate();
    return c;
}

inline void RunConfig::validate() {
    warnings.clear();
    auto fail = [](const std::string& m) { throw ConfigError(m); };
    if (!(half_width > 0) || !(half_height > 0)) fail("domain half-widths must be positive");
    if (eps.empty()) fail("eps list is empty");
    for (double e : eps)
        if (!(e > 0)) fail("eps values must be positive");
    if (!(grid_ratio > 0)) fail("grid_ratio must be positive");
    if (!(t_final > 0)) fail("t_final must be positive");
    if (!(dt_eps2_factor > 0) || !(dt_h2_factor > 0) || dt_fixed < 0) fail("dt rule factors must be positive");
    if (snapshot_every < 1) fail("snapshot_every must be at least 1");
    if (field_snapshot_every < 0) fail("field_snapshot_every must be non-negative");
    if (jobs < 1) fail("jobs must be at least 1");
    if (!(delta > 0)) fail("interface.delta must be positive");
    if (!(energy_slack >= 0)) fail("solver.energy_slack must be non-negative");
    if (!(cg_rtol > 0) || cg_max_iter < 1) fail("invalid linear solver tolerance");
    try {
        bulk.validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    if (!bulk.bistable(1e-10)) fail("bulk coefficients must satisfy b^2 = 27ac");
    if (std::abs(norm(director) - 1.0) > 1e-12) fail("director must be a unit vector");

    for (double e : eps) {
        if (!(delta > e))
            fail("delta = " + std::to_string(delta) + " must exceed eps = " + std::to_string(e));
        if (delta <= 2.0 * e)
            warnings.push_back("delta <= 2 eps at eps = " + std::to_string(e) +
                               ": the transition layer is wider than the flat part of the cutoff");
        const Grid2D g = grid(e);
        if (g.nx < 8 || g.ny < 8) fail("grid too coarse at eps = " + std::to_string(e));
    }

    switch (kind) {
        case InterfaceKind::circle: {
            const double tmax = 0.5 * (R0 * R0 - 9.0 * delta * delta);
            if (!(R0 > 3.0 * delta)) fail("circle radius must exceed 3 delta");
            if (!(t_final < tmax))
                fail("t_final = " + std::to_string(t_final) + " reaches the extinction margin (t < " +
                     std::to_string(tmax) + ")");
            if (boundary == Boundary::dirichlet_zero) {
                // the disc only shrinks, so the initial clearance is the smallest
                const double clear = std::min({half_width - (center.x + R0), center.x - R0 + half_width,
                                               half_height - (center.y + R0), center.y - R0 + half_height});
                if (clear < 3.0 * delta)
                    fail("interface within 3 delta of the boundary (clearance " + std::to_string(clear) + ")");
            }
            break;
        }
        case InterfaceKind::flat:
            fail("a single flat front is not compatible with the supported boundaries; use a slab");
            break;
        case InterfaceKind::slab: {
            if (boundary != Boundary::periodic) fail("slab interfaces need a periodic domain");
            const double outer = half_height - slab_half_width;
            if (std::abs(y0) > 1e-12) fail("slab must be centred (y0 = 0)");
            if (slab_half_width < 3.0 * delta || outer < 3.0 * delta)
                fail("slab fronts closer than 3 delta to each other");
            break;
        }
    }
}

}  // namespace qsl
