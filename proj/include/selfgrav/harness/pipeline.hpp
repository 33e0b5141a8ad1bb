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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "selfgrav/coupling.hpp"
#include "selfgrav/dynamics.hpp"
#include "selfgrav/gravsolver.hpp"
#include "selfgrav/harness/config.hpp"
#include "selfgrav/scales.hpp"

namespace selfgrav::harness {

// Worker count: hardware concurrency capped by SELFGRAV_THREADS.
inline unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SELFGRAV_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
}

// Runs fn(i) for i in [0, count) on up to `workers` threads; rethrows the first failure.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, unsigned workers = worker_count()) {
    workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(1, count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!err) err = std::current_exception();
                    next = count;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

// The metric is linear in the source, and every K is linear in the metric, so one solve for
// each of |psi_R|^2, |psi_L|^2 and 2 Re(psi_R* psi_L) covers every (alpha, beta).
struct CouplingBasis {
    WavePacket packet;
    GridSpec grid;
    CouplingSet right, left, interference;
    double residual = 0.0;

    CouplingSet combine(double alpha, double beta) const {
        validate_state(alpha, beta);
        auto mix = [&](auto field) {
            return alpha * (right.*field) + (1.0 - alpha) * (left.*field) + beta * (interference.*field);
        };
        CouplingSet c = right;
        c.kA_plus = mix(&CouplingSet::kA_plus);
        c.kA_minus = mix(&CouplingSet::kA_minus);
        c.kA_minus_imag = mix(&CouplingSet::kA_minus_imag);
        c.kB_plus_p.amplitude = alpha * right.kB_plus_p.amplitude + (1.0 - alpha) * left.kB_plus_p.amplitude +
                                beta * interference.kB_plus_p.amplitude;
        c.kB_plus_m.amplitude = alpha * right.kB_plus_m.amplitude + (1.0 - alpha) * left.kB_plus_m.amplitude +
                                beta * interference.kB_plus_m.amplitude;
        c.kB_minus.amplitude = alpha * right.kB_minus.amplitude + (1.0 - alpha) * left.kB_minus.amplitude +
                               beta * interference.kB_minus.amplitude;
        c.kappa_ab = c.kA_plus.imag();
        c.alpha = alpha;
        c.beta = beta;
        return c;
    }
};

inline CouplingBasis coupling_basis(const WavePacket& p, const GridSpec& g, double omega,
                                    const PoissonOptions& opt = {}) {
    CouplingBasis b;
    b.packet = p;
    b.grid = g;
    const PacketFields f = packet_fields(p, g, true);
    ScalarGridField sr(g, "m l0^-3"), sl(g, "m l0^-3"), si(g, "m l0^-3");
    for (std::size_t q = 0; q < g.size(); ++q) {
        const cplx r = f.psi_R.values[q], l = f.psi_L.values[q];
        sr.values[q] = std::norm(r);
        sl.values[q] = std::norm(l);
        si.values[q] = 2.0 * (std::conj(r) * l).real();
    }
    const ScalarGridField hr = solve_h00(sr, opt), hl = solve_h00(sl, opt), hi = solve_h00(si, opt);
    b.residual = std::max({poisson_residual(hr, sr), poisson_residual(hl, sl), poisson_residual(hi, si)});
    b.right = compute_coupling_set(f, assemble_metric(hr), omega);
    b.left = compute_coupling_set(f, assemble_metric(hl), omega);
    b.interference = compute_coupling_set(f, assemble_metric(hi), omega);
    return b;
}

struct SweepRow {
    double alpha = 0.0, beta = 0.0, L_l0 = 0.0, t_s = 0.0;
    double xi = 0.0, kappa = 0.0;
    double p_L = 0.0, p_R = 0.0;
    double gamma_L = 0.0, gamma_R = 0.0;
    double dS_L = 0.0, dS_R = 0.0;
    bool xi_ok = true, static_ok = true, time_ok = true;

    bool regime_ok() const { return xi_ok && static_ok && time_ok; }
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::size_t n_alpha = 0, n_beta = 0, n_separation = 0, n_time = 0;
    double max_residual = 0.0;

    bool regime_ok() const {
        return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.regime_ok(); });
    }
};

inline SweepRow evaluate_row(const PhysicalScales& sc, const CouplingSet& coup, double alpha, double beta,
                             double L_l0, double t_s, const RegimeThresholds& th) {
    SweepRow r;
    r.alpha = alpha;
    r.beta = beta;
    r.L_l0 = L_l0;
    r.t_s = t_s;
    r.xi = sc.xi;
    r.kappa = coup.kappa_ab;
    const double t = sc.to_natural_time(t_s);
    const TwoModeState s = evolve_main(TwoModeState::initial(alpha, beta, sc.xi), coup, t);
    const Probabilities p = probabilities(s);
    r.p_L = p.p_L;
    r.p_R = p.p_R;
    const double mtxk = sc.xi * coup.at(t).kA_plus.imag();
    const PurityEntropy eL = purity_entropy(reduce(s, Side::L), alpha, beta, mtxk);
    const PurityEntropy eR = purity_entropy(reduce(s, Side::R), alpha, beta, mtxk);
    r.gamma_L = eL.gamma;
    r.gamma_R = eR.gamma;
    r.dS_L = eL.delta_S;
    r.dS_R = eR.delta_S;
    const RegimeReport rep = check_regime(sc, t_s, th);
    r.xi_ok = rep.xi_ok;
    r.static_ok = rep.static_ok;
    r.time_ok = rep.time_ok;
    return r;
}

// Rows ordered alpha, beta, separation, time (last fastest) whatever the completion order.
inline SweepResult run_sweep(const ScenarioConfig& cfg, const PoissonOptions& opt = {}) {
    validate_config(cfg);
    const auto A = cfg.alphas(), B = cfg.betas(), S = cfg.separations(), T = cfg.times();
    std::vector<CouplingBasis> bases(S.size());
    std::vector<PhysicalScales> scales(S.size());
    for (std::size_t k = 0; k < S.size(); ++k) scales[k] = compute_scales(cfg.mass_kg, cfg.size_m, S[k] * cfg.size_m);
    parallel_for(S.size(), [&](std::size_t k) {
        const WavePacket p = cfg.packet_for(S[k]);
        bases[k] = coupling_basis(p, cfg.grid_for(p.L_abs()), scales[k].mass_natural(), opt);
    });

    SweepResult res;
    res.n_alpha = A.size();
    res.n_beta = B.size();
    res.n_separation = S.size();
    res.n_time = T.size();
    for (const auto& b : bases) res.max_residual = std::max(res.max_residual, b.residual);
    res.rows.resize(A.size() * B.size() * S.size() * T.size());
    parallel_for(res.rows.size(), [&](std::size_t idx) {
        std::size_t q = idx;
        const std::size_t it = q % T.size();
        q /= T.size();
        const std::size_t is = q % S.size();
        q /= S.size();
        const std::size_t ib = q % B.size();
        const std::size_t ia = q / B.size();
        const CouplingSet c = bases[is].combine(A[ia], B[ib]);
        res.rows[idx] = evaluate_row(scales[is], c, A[ia], B[ib], 0.5 * S[is], T[it], cfg.thresholds);
    });
    return res;
}

// Single scenario: the scalar alpha, beta and separation over the time grid.
inline SweepResult run_evolve(ScenarioConfig cfg, const PoissonOptions& opt = {}) {
    cfg.sweep_alpha.clear();
    cfg.sweep_beta.clear();
    cfg.sweep_separation_l0.clear();
    return run_sweep(cfg, opt);
}

inline constexpr const char* csv_version_line = "# selfgrav results v1";
inline constexpr const char* csv_header =
    "alpha,beta,L_l0,t_s,xi,kappa,p_L,p_R,gamma_L,gamma_R,dS_L,dS_R,xi_ok,static_ok,time_ok";

inline std::string format_csv(const SweepResult& r) {
    std::string out = std::string(csv_version_line) + "\n" + csv_header + "\n";
    char buf[64];
    auto put = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.16e,", x);
        out += buf;
    };
    for (const auto& row : r.rows) {
        for (double x : {row.alpha, row.beta, row.L_l0, row.t_s, row.xi, row.kappa, row.p_L, row.p_R, row.gamma_L,
                         row.gamma_R, row.dS_L, row.dS_R})
            put(x);
        out += std::to_string(int(row.xi_ok)) + "," + std::to_string(int(row.static_ok)) + "," +
               std::to_string(int(row.time_ok)) + "\n";
    }
    return out;
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

}  // namespace selfgrav::harness
