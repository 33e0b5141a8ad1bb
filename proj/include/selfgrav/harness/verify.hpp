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

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "selfgrav/coupling.hpp"
#include "selfgrav/dynamics.hpp"
#include "selfgrav/gravsolver.hpp"
#include "selfgrav/scales.hpp"
#include "selfgrav/wavepacket.hpp"

namespace selfgrav::harness {

enum class VerifyLevel { quick, full };

struct VerifyOptions {
    VerifyLevel level = VerifyLevel::quick;
    PoissonOptions poisson;  // fault injection enters here
    unsigned long seed = 20260101;
};

struct CheckResult {
    std::string id;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
    double seconds = 0.0;
};

namespace checks {

inline double rel_l2(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

// Unit-mass gaussian of standard deviation s and its potential -2 erf(r/(sqrt2 s))/r.
inline ScalarGridField gaussian_source(const GridSpec& g, double s) {
    constexpr double pi = 3.14159265358979323846;
    ScalarGridField f(g, "m l0^-3");
    const double c = std::pow(2.0 * pi * s * s, -1.5);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const double r2 = g.x(i) * g.x(i) + g.x(j) * g.x(j) + g.x(k) * g.x(k);
                f(i, j, k) = c * std::exp(-r2 / (2.0 * s * s));
            }
    return f;
}

inline double gaussian_potential(double r, double s) {
    constexpr double pi = 3.14159265358979323846;
    if (r < 1e-12) return -2.0 * std::sqrt(2.0 / pi) / s;
    return -2.0 * std::erf(r / (std::sqrt(2.0) * s)) / r;
}

inline double poisson_oracle_error(int n, double box, double s, const PoissonOptions& opt) {
    const GridSpec g(n, box);
    const ScalarGridField h = solve_h00(gaussian_source(g, s), opt);
    std::vector<double> num, ref;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double r = std::sqrt(g.x(i) * g.x(i) + g.x(j) * g.x(j) + g.x(k) * g.x(k));
                num.push_back(h(i, j, k).real());
                ref.push_back(gaussian_potential(r, s));
            }
    return rel_l2(num, ref);
}

inline CouplingValues random_values(std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> N(0.0, scale);
    CouplingValues k;
    k.kA_plus = {N(rng), N(rng)};
    k.kA_minus = N(rng);
    k.kB_plus_p = {N(rng), N(rng)};
    k.kB_plus_m = {N(rng), N(rng)};
    k.kB_minus = {N(rng), N(rng)};
    k.omega = 1.0;
    return k;
}

inline CouplingSet random_set(std::mt19937_64& rng) {
    std::normal_distribution<double> N(0.0, 1.0);
    std::uniform_real_distribution<double> U(0.5, 2.0);
    CouplingSet c;
    c.omega = U(rng);
    c.kA_plus = {N(rng), N(rng)};
    c.kA_minus = N(rng);
    c.kB_plus_p = {{N(rng), N(rng)}, 2.0 * c.omega, +1};
    c.kB_plus_m = {{N(rng), N(rng)}, 2.0 * c.omega, -1};
    c.kB_minus = {{N(rng), N(rng)}, 2.0 * c.omega, +1};
    c.kappa_ab = c.kA_plus.imag();
    return c;
}

// (alpha, beta) uniformly over the admissible disc segment
inline std::pair<double, double> random_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double a = U(rng);
    return {a, U(rng) * beta_max(a)};
}

}  // namespace checks

inline std::vector<CheckResult> run_verify(const VerifyOptions& opt = {}) {
    std::vector<CheckResult> out;
    auto run = [&](const std::string& id, double threshold, const std::function<double(std::string&)>& body,
                   bool lower_is_better = true) {
        CheckResult r;
        r.id = id;
        r.threshold = threshold;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            r.value = body(r.detail);
            r.pass = std::isfinite(r.value) && (lower_is_better ? r.value < threshold : r.value > threshold);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(r);
    };
    std::mt19937_64 rng(opt.seed);

    run("scales.sphere", 0.5, [](std::string& d) {
        const PhysicalScales s = compute_scales(1e-14, 1e-6, 2e-6);
        const bool ok = s.xi >= 1e-36 && s.xi <= 1e-35 && s.compton_m >= 1e-29 && s.compton_m <= 1e-28 &&
                        1.0 / s.tau_g_s >= 10.0 && 1.0 / s.tau_g_s <= 100.0 &&
                        std::abs(s.tau_g_s * s.e_grav_J / constants::hbar - 1.0) < 1e-14;
        d = "xi=" + std::to_string(s.xi) + " 1/tau_G=" + std::to_string(1.0 / s.tau_g_s);
        return ok ? 0.0 : 1.0;
    });
    run("scales.scaling_law", 1e-14, [](std::string&) {
        const auto a = compute_scales(1e-14, 1e-6), m2 = compute_scales(2e-14, 1e-6), l2 = compute_scales(1e-14, 2e-6);
        return std::max({std::abs(a.tau_g_s / m2.tau_g_s / 4.0 - 1.0), std::abs(m2.xi / a.xi / 2.0 - 1.0),
                         std::abs(l2.xi / a.xi * 2.0 - 1.0), std::abs(l2.tau_g_s / a.tau_g_s / 2.0 - 1.0)});
    });
    run("scales.regime", 0.5, [](std::string&) {
        const auto s = compute_scales(1e-14, 1e-6, 2e-6);
        const auto ok = check_regime(s, 1e-4);
        const auto late = check_regime(s, 1.0);
        bool named = false;
        for (const auto& m : late.messages) named |= m.find("tau_G") != std::string::npos;
        return (ok.ok() && !late.time_ok && named && !check_regime(compute_scales(1e-40, 1e-6), 0.0).static_ok) ? 0.0
                                                                                                                : 1.0;
    });
    run("wavepacket.overlap", 1e-12, [](std::string&) {
        const auto g = make_packet(PacketFamily::gaussian, 1.0, {0, 0, 0}, {1, 0, 0});
        const auto r = make_packet(PacketFamily::rectangle, 1.0, {0, 0, 0}, {1, 0, 0});
        const double a = std::sqrt(3.0);
        double e = std::abs(lr_overlap(g).lr_overlap - std::exp(-2.0));
        e = std::max(e, std::abs(lr_overlap(r).lr_overlap - std::sin(2.0 * a) / (2.0 * a)));
        for (auto f : {PacketFamily::gaussian, PacketFamily::rectangle, PacketFamily::sinc, PacketFamily::gaussian_phase})
            e = std::max(e, std::abs(lr_overlap(make_packet(f, 1.0, {0, 0, 0}, {0, 0, 0}, 0.3)).lr_overlap - 1.0));
        return e;
    });
    run("gravsolver.poisson_oracle_64", 1e-2, [&](std::string&) {
        return checks::poisson_oracle_error(64, 16.0, 1.0, opt.poisson);
    });
    run("gravsolver.residual", 1e-6, [&](std::string&) {
        const auto p = make_packet(PacketFamily::gaussian, 1.0, {0, 0, 0}, {1, 0, 0});
        const auto src = stress_energy_source(p, 0.5, 0.5, default_grid(1.0));
        return poisson_residual(solve_h00(src, opt.poisson), src);
    });
    run("gravsolver.linearity", 1e-10, [&](std::string&) {
        const GridSpec g(32, 16.0);
        const auto s1 = checks::gaussian_source(g, 1.0), s2 = checks::gaussian_source(g, 1.5);
        ScalarGridField s12(g);
        for (std::size_t q = 0; q < g.size(); ++q) s12.values[q] = 2.0 * s1.values[q] - 0.7 * s2.values[q];
        const auto h1 = solve_h00(s1, opt.poisson), h2 = solve_h00(s2, opt.poisson), h12 = solve_h00(s12, opt.poisson);
        std::vector<double> a, b;
        for (std::size_t q = 0; q < g.size(); ++q) {
            a.push_back(h12.values[q].real());
            b.push_back(2.0 * h1.values[q].real() - 0.7 * h2.values[q].real());
        }
        return checks::rel_l2(a, b);
    });
    run("gravsolver.far_field", 1e-2, [&](std::string&) {
        const GridSpec g(64, 24.0);
        const auto h = solve_h00(checks::gaussian_source(g, 1.0), opt.poisson);
        const int i = g.n / 2 + g.n / 3;  // r = box/3
        const double r = g.x(i);
        return std::abs(h(i, g.n / 2, g.n / 2).real() / (-2.0 / r) - 1.0);
    });
    run("coupling.real_packet_symmetry", 1e-12, [&](std::string&) {
        const auto p = make_packet(PacketFamily::gaussian, 1.0, {0, 0, 0}, {1, 0, 0});
        const auto m = solve_metric(p, 0.5, 0.5, default_grid(1.0), opt.poisson);
        const auto f = packet_fields(p, m.grid());
        const cplx k1 = compute_kA_plus(f, m, 1.0), k2 = compute_kA_plus(f, m, 2.0);
        const cplx km = compute_kA_minus_complex(f, m, 1.0);
        return std::max({std::abs(k1.imag()), std::abs(k2 - 2.0 * k1), std::abs(km.imag()) / (1 + std::abs(km))});
    });
    run("coupling.momentum_route", 1e-10, [&](std::string&) {
        const auto p = make_packet(PacketFamily::gaussian_phase, 1.0, {0, 0, 0}, {1, 0, 0}, 0.1);
        const auto m = solve_metric(p, 0.5, 0.5, default_grid(1.0), opt.poisson);
        const cplx kx = compute_kA_plus(p, m, 1.0), kk = compute_kA_plus_momentum(p, m, 1.0);
        return std::abs(kx - kk) / std::abs(kx);
    });
    run("coupling.phase_packet_linear", 1e-10, [&](std::string& d) {
        const auto p = make_packet(PacketFamily::gaussian_phase, 1.0, {0, 0, 0}, {1, 0, 0}, 0.1);
        const auto m = solve_metric(p, 0.5, 0.5, default_grid(1.0), opt.poisson);
        const double t1 = 3.0e5, t2 = 7.0e5;
        const double i1 = compute_kA_plus(p, m, t1).imag(), i2 = compute_kA_plus(p, m, t2).imag();
        d = "Im K/(m t) = " + std::to_string(i1 / t1);
        if (!(std::abs(i1 / t1) > 1e-6)) return 1.0;
        return std::abs(i2 / t2 - i1 / t1) / std::abs(i1 / t1);
    });
    run("coupling.distance_suppression", 1e-4, [&](std::string& d) {
        auto K = [&](PacketFamily fam, double L, double chirp) {
            const auto p = make_packet(fam, 1.0, {0, 0, 0}, {L, 0, 0}, chirp);
            return compute_kA_plus(p, solve_metric(p, 0.5, 0.5, default_grid(L), opt.poisson), 1.0);
        };
        const double rg = std::abs(K(PacketFamily::gaussian, 8.0, 0.0)) / std::abs(K(PacketFamily::gaussian, 1.0, 0.0));
        const double rp = std::abs(K(PacketFamily::gaussian_phase, 8.0, 0.1).imag()) /
                          std::abs(K(PacketFamily::gaussian_phase, 1.0, 0.1).imag());
        d = "gaussian |K| ratio " + std::to_string(rg) + ", phase Im ratio " + std::to_string(rp);
        return std::max(rg, rp);
    });
    run("coupling.massless_decay", 0.5, [](std::string& d) {
        const auto p = make_packet(PacketFamily::gaussian, 1.0, {0, 0, 0}, {0, 0, 0});
        double prev = 1.0;
        bool mono = true;
        for (double t : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0}) {
            const double v = massless_decay(p, t);
            mono &= v <= prev;
            prev = v;
        }
        const double a = massless_decay(p, 10.0), b = massless_decay(p, 100.0);
        d = "I(10)=" + std::to_string(a) + " I(100)=" + std::to_string(b);
        return (mono && a < 0.1 && b < 0.01 && std::abs(massless_decay(p, 0.0) - 1.0) < 1e-12) ? 0.0 : 1.0;
    });
    run("dynamics.commutator_oracle", 1e-10, [&](std::string&) {
        double worst = 0.0;
        std::uniform_real_distribution<double> X(1e-3, 1.0);
        for (int i = 0; i < 100; ++i) {
            const auto [a, b] = checks::random_state(rng);
            const auto k = checks::random_values(rng);
            const auto s0 = TwoModeState::initial(a, b, X(rng));
            const auto s1 = evolve_main(s0, k), s2 = commutator_evolution(s0, k);
            worst = std::max(worst, (s1.rho() - s2.rho()).cwiseAbs().maxCoeff());
        }
        return worst;
    });
    run("dynamics.trace_hermitian_positive", 1e-10, [&](std::string&) {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const auto [a, b] = checks::random_state(rng);
            const auto s = evolve_main(TwoModeState::initial(a, b, 0.05), checks::random_values(rng));
            worst = std::max({worst, s.trace_error(), s.hermiticity_error()});
            for (double ev : first_order_spectrum(s)) worst = std::max(worst, -ev);
        }
        return worst;
    });
    run("dynamics.probability_conservation", 1e-14, [&](std::string&) {
        double worst = 0.0;
        const CouplingSet c = checks::random_set(rng);
        for (int ia = 0; ia < 10; ++ia)
            for (int ib = 0; ib < 10; ++ib)
                for (int it = 0; it < 10; ++it) {
                    const double a = ia / 9.0, b = ib / 9.0 * beta_max(a), t = 0.1 * it;
                    const auto p = probabilities(evolve_main(TwoModeState::initial(a, b, 1e-3), c, t));
                    worst = std::max({worst, std::abs(p.p_L + p.p_R - 1.0), std::abs(p.p_other)});
                }
        return worst;
    });
    run("dynamics.purity_law", 1e-10, [&](std::string&) {
        double worst = 0.0;
        const CouplingSet c = checks::random_set(rng);
        for (int i = 0; i < 100; ++i) {
            const auto [a, b] = checks::random_state(rng);
            const double xi = 1e-3, t = 0.37 * (i % 10);
            const auto s = evolve_main(TwoModeState::initial(a, b, xi), c, t);
            const double mtxk = xi * c.at(t).kA_plus.imag();
            for (Side side : {Side::L, Side::R}) {
                const auto pe = purity_entropy(reduce(s, side), a, b, mtxk);
                worst = std::max(worst, std::abs(pe.gamma - pe.gamma_closed_form));
            }
            worst = std::max(worst, std::abs(purity(s) - purity(TwoModeState::initial(a, b, xi))));
        }
        for (double t : {0.0, 1.0, 5.0}) {
            const auto s = evolve_main(TwoModeState::initial(0.5, 0.5, 1e-3), c, t);
            worst = std::max(worst, std::abs(purity_entropy(reduce(s, Side::L), 0.5, 0.5, 0.0).gamma - 0.5));
        }
        return worst;
    });
    run("dynamics.reduced_entropy", 1e-12, [&](std::string& d) {
        // the left shift follows the closed form; both reduced states share one spectrum
        double worst = 0.0;
        const CouplingSet c = checks::random_set(rng);
        for (int i = 0; i < 50; ++i) {
            const auto [a, b] = checks::random_state(rng);
            const auto s = evolve_main(TwoModeState::initial(a, b, 1e-3), c, 1.3);
            const double mtxk = 1e-3 * c.at(1.3).kA_plus.imag();
            const auto L = purity_entropy(reduce(s, Side::L), a, b, mtxk);
            const auto R = purity_entropy(reduce(s, Side::R), a, b, mtxk);
            worst = std::max({worst, std::abs(L.delta_S - L.delta_S_closed_form), std::abs(L.delta_S - R.delta_S)});
        }
        d = "Delta S_R equals Delta S_L";
        return worst;
    });
    run("dynamics.lindblad", 1e-9, [&](std::string&) {
        double worst = 0.0;
        std::uniform_real_distribution<double> T(0.1, 1.0), X(1e-3, 1e-1);
        for (int i = 0; i < 20; ++i) {
            const auto [a, b] = checks::random_state(rng);
            const CouplingSet c = checks::random_set(rng);
            const double t = T(rng), xi = X(rng), h = 1e-5;
            const auto s0 = TwoModeState::initial(a, b, xi);
            const auto s = evolve_main(s0, c, t);
            for (Side side : {Side::L, Side::R}) {
                const CMatrix fd =
                    (reduce(evolve_main(s0, c, t + h), side).rho() - reduce(evolve_main(s0, c, t - h), side).rho()) /
                    (2.0 * h);
                const ReducedState red = reduce(s, side);
                const CMatrix H = reduced_hamiltonian(side, c.rate(t), a, b);
                worst = std::max(worst, (fd - lindblad_rhs(red, H)).cwiseAbs().maxCoeff());
                worst = std::max(worst, std::abs(dissipator(red).trace()));
            }
        }
        return worst;
    });
    run("dynamics.effective_unitary", 1e-10, [&](std::string&) {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const auto [a, b] = checks::random_state(rng);
            CouplingValues k = checks::random_values(rng);
            k.t = 0.3 + 0.1 * i;
            k.omega = 1.7;
            const double xi = 1e-4;
            const auto s0 = TwoModeState::initial(a, b, xi);
            // symmetric differences at xi and 2 xi, Richardson-combined to cancel the xi^2 term
            auto central = [&](double e) {
                const CMatrix Up = product(effective_unitary(k, e, s0.basis));
                const CMatrix Um = product(effective_unitary(k, -e, s0.basis));
                return CMatrix((Up * s0.rho0 * Up.adjoint() - Um * s0.rho0 * Um.adjoint()) / (2.0 * e));
            };
            const CMatrix first = (4.0 * central(xi) - central(2.0 * xi)) / 3.0;
            const CMatrix Up = product(effective_unitary(k, xi, s0.basis));
            worst = std::max(worst, (first - evolve_main(s0, k).rho1).cwiseAbs().maxCoeff());
            worst = std::max(worst, (Up * Up.adjoint() - CMatrix::Identity(Up.rows(), Up.cols())).cwiseAbs().maxCoeff());
        }
        return worst;
    });

    if (opt.level == VerifyLevel::full) {
        run("gravsolver.poisson_oracle_128", 3e-3, [&](std::string&) {
            return checks::poisson_oracle_error(128, 16.0, 1.0, opt.poisson);
        });
        run("coupling.grid_convergence", 5e-3, [&](std::string& d) {
            const auto p = make_packet(PacketFamily::gaussian_phase, 1.0, {0, 0, 0}, {1, 0, 0}, 0.1);
            const auto r = converge_kA_plus(p, 0.5, 0.5, default_grid(1.0, 64), 5e-3, 128);
            d = "n=" + std::to_string(r.grid.n);
            return r.relative_change;
        });
    }
    return out;
}

}  // namespace selfgrav::harness
