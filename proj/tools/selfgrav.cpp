// Copyright 2026 The selfgrav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "selfgrav/coupling.hpp"
#include "selfgrav/gravsolver.hpp"
#include "selfgrav/harness/config.hpp"
#include "selfgrav/harness/pipeline.hpp"
#include "selfgrav/harness/verify.hpp"
#include "selfgrav/scales.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace selfgrav;
using namespace selfgrav::harness;

namespace {

enum Exit { ok = 0, verify_failed = 1, config_error = 2, regime_warning = 3 };

struct Common {
    std::string config;
    std::string out;
    int grid_n = 0;
};

ScenarioConfig load(const Common& c) {
    ScenarioConfig cfg = c.config.empty() ? ScenarioConfig{} : load_config(c.config);
    if (!c.out.empty()) cfg.out_dir = c.out;
    if (c.grid_n != 0) cfg.grid_n = c.grid_n;
    validate_config(cfg);
    return cfg;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json scales_json(const PhysicalScales& s) {
    return {{"mass_kg", s.mass_kg},       {"size_m", s.size_m},           {"separation_m", s.separation_m},
            {"xi", s.xi},                 {"compton_m", s.compton_m},     {"tau_g_s", s.tau_g_s},
            {"tau_g_no_factor2_s", s.tau_g_no_factor2_s()}, {"tau_qm_s", s.tau_qm_s}, {"tau_light_s", s.tau_light_s},
            {"e_grav_J", s.e_grav_J},     {"energy_scale_J", s.energy_scale_J}};
}

json regime_json(const RegimeReport& r) {
    return {{"t_s", r.t_s},
            {"xi_ok", r.xi_ok},
            {"static_ok", r.static_ok},
            {"time_ok", r.time_ok},
            {"t_over_tau_g", r.t_over_tau_g},
            {"t_over_tau_qm", r.t_over_tau_qm},
            {"thresholds", {{"eps_xi", r.thresholds.eps_xi}, {"eps_static", r.thresholds.eps_static},
                            {"eps_time", r.thresholds.eps_time}}},
            {"messages", r.messages}};
}

void ensure_dir(const std::string& d) { fs::create_directories(d); }

int cmd_scales(const Common& c) {
    const ScenarioConfig cfg = load(c);
    const PhysicalScales s = compute_scales(cfg.mass_kg, cfg.size_m, cfg.separation_l0 * cfg.size_m);
    const RegimeReport r = check_regime(s, cfg.t_end_s, cfg.thresholds);
    std::cout << json{{"scales", scales_json(s)}, {"regime", regime_json(r)}}.dump(2) << "\n";
    return r.ok() ? ok : regime_warning;
}

int cmd_metric(const Common& c, double kernel_scale) {
    const ScenarioConfig cfg = load(c);
    const WavePacket p = cfg.packet_for(cfg.separation_l0);
    const GridSpec g = cfg.grid_for(p.L_abs());
    PoissonOptions opt;
    opt.kernel_scale = kernel_scale;
    const ScalarGridField src = stress_energy_source(p, cfg.alpha, cfg.beta, g);
    const ScalarGridField h00 = solve_h00(src, opt);
    const MetricPerturbation m = assemble_metric(h00, SourceTag::of(p, cfg.alpha, cfg.beta));
    ensure_dir(cfg.out_dir);
    const std::string base = (fs::path(cfg.out_dir) / "").string();
    write_field_dump(src, base + "source");
    write_field_dump(m.h00, base + "h00");
    write_field_dump(m.h_spatial_trace, base + "h_spatial_trace");
    write_field_dump(m.trace_h, base + "trace_h");
    json j{{"grid", {{"n", g.n}, {"box_l0", g.box_l0}, {"dx_l0", g.dx()}}},
           {"gauge", "newtonian_isotropic"},
           {"source_integral", src.integral().real()},
           {"residual", poisson_residual(h00, src)},
           {"constraint_residual", constraint_residual(m)},
           {"h00_min", [&] {
                double v = 0.0;
                for (const auto& x : h00.values) v = std::min(v, x.real());
                return v;
            }()},
           {"files", {"source", "h00", "h_spatial_trace", "trace_h"}}};
    write_text(base + "metric.json", j.dump(2) + "\n");
    std::cout << j.dump(2) << "\n";
    return ok;
}

int cmd_coupling(const Common& c, const std::string& level) {
    const ScenarioConfig cfg = load(c);
    const PhysicalScales s = compute_scales(cfg.mass_kg, cfg.size_m, cfg.separation_l0 * cfg.size_m);
    const WavePacket p = cfg.packet_for(cfg.separation_l0);
    const GridSpec g = cfg.grid_for(p.L_abs());
    const MetricPerturbation m = solve_metric(p, cfg.alpha, cfg.beta, g);
    const CouplingSet cs = compute_coupling_set(p, m, s.mass_natural());
    const double t = s.to_natural_time(cfg.t_end_s);
    const CouplingValues v = cs.at(t);
    json j{{"family", cfg.family},
           {"chirp", cfg.chirp},
           {"L_l0", p.L_abs()},
           {"alpha", cfg.alpha},
           {"beta", cfg.beta},
           {"grid", {{"n", g.n}, {"box_l0", g.box_l0}}},
           {"omega", cs.omega},
           {"kA_plus_per_mt", cplx_json(cs.kA_plus)},
           {"kA_plus_per_mt_momentum_route", cplx_json(compute_kA_plus_momentum(p, m, 1.0))},
           {"kA_minus_per_mt", cs.kA_minus},
           {"kA_minus_imag_per_mt", cs.kA_minus_imag},
           {"kappa_ab", cs.kappa_ab},
           {"kB_same_side_amplitude", cplx_json(cs.kB_plus_p.amplitude)},
           {"kB_cross_amplitude", cplx_json(cs.kB_minus.amplitude)},
           {"t_s", cfg.t_end_s},
           {"at_t", {{"kA_plus", cplx_json(v.kA_plus)}, {"kA_minus", v.kA_minus},
                     {"kB_plus_p", cplx_json(v.kB_plus_p)}, {"kB_plus_m", cplx_json(v.kB_plus_m)},
                     {"kB_minus", cplx_json(v.kB_minus)}, {"phase_unreliable", cs.phase_unreliable(t)}}},
           {"lr_overlap", cplx_json(lr_overlap(p).lr_overlap)}};
    if (level == "full") {
        const ConvergenceReport r = converge_kA_plus(p, cfg.alpha, cfg.beta, g);
        j["convergence"] = {{"n", r.grid.n}, {"relative_change", r.relative_change}, {"converged", r.converged},
                            {"kA_plus_per_mt", cplx_json(r.kA_plus)}};
    }
    std::cout << j.dump(2) << "\n";
    return ok;
}

int cmd_rows(const Common& c, bool sweep) {
    const ScenarioConfig cfg = load(c);
    const SweepResult r = sweep ? run_sweep(cfg) : run_evolve(cfg);
    ensure_dir(cfg.out_dir);
    const std::string name = sweep ? "sweep" : "evolve";
    const std::string csv = (fs::path(cfg.out_dir) / (name + ".csv")).string();
    write_text(csv, format_csv(r));
    json j{{"csv", csv},
           {"rows", r.rows.size()},
           {"axes", {{"alpha", r.n_alpha}, {"beta", r.n_beta}, {"separation", r.n_separation}, {"time", r.n_time}}},
           {"max_poisson_residual", r.max_residual},
           {"regime_ok", r.regime_ok()},
           {"config", emit_config(cfg)}};
    write_text((fs::path(cfg.out_dir) / (name + ".json")).string(), j.dump(2) + "\n");
    std::cout << j.dump(2) << "\n";
    if (!r.regime_ok()) {
        std::cerr << "warning: some rows fall outside the regime thresholds\n";
        return regime_warning;
    }
    return ok;
}

int cmd_verify(const Common& c, const std::string& level, double kernel_scale) {
    if (level != "quick" && level != "full") throw ConfigError("--level must be quick or full");
    VerifyOptions opt;
    opt.level = level == "full" ? VerifyLevel::full : VerifyLevel::quick;
    opt.poisson.kernel_scale = kernel_scale;
    const auto results = run_verify(opt);
    json checks = json::array();
    bool all = true;
    for (const auto& r : results) {
        all &= r.pass;
        checks.push_back({{"id", r.id}, {"pass", r.pass}, {"value", r.value}, {"threshold", r.threshold},
                          {"seconds", r.seconds}, {"detail", r.detail}});
    }
    json j{{"level", level}, {"pass", all}, {"checks", checks}};
    if (!c.out.empty()) {
        ensure_dir(c.out);
        write_text((fs::path(c.out) / "verify.json").string(), j.dump(2) + "\n");
    }
    std::cout << j.dump(2) << "\n";
    for (const auto& r : results)
        if (!r.pass) std::cerr << "FAILED " << r.id << "\n";
    return all ? ok : verify_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"selfgrav: semiclassical self-gravity of a delocalized scalar particle"};
    app.require_subcommand(1);
    Common common;
    std::string level = "quick";
    double kernel_scale = 1.0;

    auto add_common = [&](CLI::App* s) {
        s->add_option("--config", common.config, "scenario file (key = value)");
        s->add_option("--out", common.out, "output directory");
        s->add_option("--grid-n", common.grid_n, "points per axis");
    };
    auto* scales = app.add_subcommand("scales", "physical scales and regime report");
    auto* metric = app.add_subcommand("metric", "solve and dump the metric perturbation");
    auto* coupling = app.add_subcommand("coupling", "coupling integrals for the configured state");
    auto* evolve = app.add_subcommand("evolve", "single scenario over the time grid");
    auto* sweep = app.add_subcommand("sweep", "product sweep over alpha, beta, separation and time");
    auto* verify = app.add_subcommand("verify", "run the built-in checks");
    for (auto* s : {scales, metric, coupling, evolve, sweep, verify}) add_common(s);
    coupling->add_option("--level", level, "quick or full (full adds grid refinement)");
    verify->add_option("--level", level, "quick or full");
    for (auto* s : {metric, verify})
        s->add_option("--kernel-scale", kernel_scale, "scale the Green's kernel (fault injection)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : config_error;
    }

    try {
        if (*scales) return cmd_scales(common);
        if (*metric) return cmd_metric(common, kernel_scale);
        if (*coupling) return cmd_coupling(common, level);
        if (*evolve) return cmd_rows(common, false);
        if (*sweep) return cmd_rows(common, true);
        if (*verify) return cmd_verify(common, level, kernel_scale);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return config_error;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return verify_failed;
    }
    return ok;
}
