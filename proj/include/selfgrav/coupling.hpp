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

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <tuple>

#include "selfgrav/fft.hpp"
#include "selfgrav/gravsolver.hpp"
#include "selfgrav/grid.hpp"
#include "selfgrav/quadrature.hpp"
#include "selfgrav/wavepacket.hpp"

namespace selfgrav {

// Position-space amplitudes of both localized modes on one grid.
// R is centred at +L, Lf at -L.
struct PacketFields {
    GridSpec spec;
    ScalarGridField psi_R, psi_L;
    bool has_derivatives = false;
    std::array<ScalarGridField, 3> grad_R, grad_L;
    ScalarGridField lap_R, lap_L;
};

inline PacketFields packet_fields(const WavePacket& p, const GridSpec& g, bool derivatives = false) {
    PacketFields f;
    f.spec = g;
    f.psi_R = position_profile(p, +1, g);
    f.psi_L = position_profile(p, -1, g);
    if (derivatives) {
        for (int c = 0; c < 3; ++c) {
            f.grad_R[c] = position_derivative(p, +1, g, c);
            f.grad_L[c] = position_derivative(p, -1, g, c);
        }
        f.lap_R = position_derivative(p, +1, g, 3);
        f.lap_L = position_derivative(p, -1, g, 3);
        f.has_derivatives = true;
    }
    return f;
}

// K^(A,+) = 2 m t int psi*(x-L) psi(x+L) h(x) d^3x, h the trace of the perturbation.
inline cplx compute_kA_plus(const PacketFields& f, const MetricPerturbation& metric, double m_t) {
    if (!(f.spec == metric.grid())) throw std::domain_error("compute_kA_plus: grid mismatch between packet and metric");
    return 2.0 * m_t * inner(f.psi_R, [&] {
               ScalarGridField w(f.spec);
               for (std::size_t q = 0; q < w.values.size(); ++q)
                   w.values[q] = f.psi_L.values[q] * metric.trace_h.values[q];
               return w;
           }());
}

inline cplx compute_kA_plus(const WavePacket& p, const MetricPerturbation& metric, double m_t) {
    return compute_kA_plus(packet_fields(p, metric.grid()), metric, m_t);
}

// K^(A,-) = 2 m t int |psi(x+L)|^2 h(x) d^3x. Returned complex so callers can check realness.
inline cplx compute_kA_minus_complex(const PacketFields& f, const MetricPerturbation& metric, double m_t) {
    if (!(f.spec == metric.grid())) throw std::domain_error("compute_kA_minus: grid mismatch between packet and metric");
    cplx s = 0.0;
    for (std::size_t q = 0; q < f.psi_L.values.size(); ++q)
        s += std::conj(f.psi_L.values[q]) * f.psi_L.values[q] * metric.trace_h.values[q];
    const double h = f.spec.dx();
    return 2.0 * m_t * s * (h * h * h);
}

// Same K^(A,+) through momentum space: int conj(F(k) e^{-ik.L}) chi(k) d^3k with
// chi the transform of h psi(x+L). Agrees with the position route by Parseval.
inline cplx compute_kA_plus_momentum(const WavePacket& p, const MetricPerturbation& metric, double m_t) {
    const GridSpec& g = metric.grid();
    const ScalarGridField left = position_profile(p, -1, g);
    std::vector<cplx> chi(g.size());
    for (std::size_t q = 0; q < chi.size(); ++q) chi[q] = left.values[q] * metric.trace_h.values[q];
    fft::to_momentum(chi, g);
    const auto FR = detail::sample_momentum(p, +1, g, [](const Vec3&) { return cplx(1.0); });
    cplx s = 0.0;
    for (std::size_t q = 0; q < chi.size(); ++q) s += std::conj(FR[q]) * chi[q];
    const double dk = g.dk();
    return 2.0 * m_t * s * (dk * dk * dk);
}

// Spatial parts of K^(B). In the massive static limit
//   B_kk' ~ [(3/2)(k^2 + k'^2) + 4 k.k'] / (4m) int d^3x/(2pi)^3 h00 e^{i(k+k').x}
// which in position space becomes (1/2) int h00 [-3/2 (a lap b + b lap a) - 4 grad a . grad b].
// The (L, L) pair feeds K^(B,+)_+-, the (R, L) pair feeds K^(B,-).
struct SqueezeAmplitudes {
    cplx same_side;   // a = b = psi(x+L)
    cplx cross_side;  // a = psi(x-L), b = psi(x+L)
};

inline SqueezeAmplitudes squeeze_amplitudes(const PacketFields& f, const MetricPerturbation& metric) {
    if (!(f.spec == metric.grid())) throw std::domain_error("compute_kB: grid mismatch between packet and metric");
    if (!f.has_derivatives) throw std::domain_error("compute_kB: packet fields lack derivatives");
    cplx same = 0.0, cross = 0.0;
    const std::size_t N = f.spec.size();
    for (std::size_t q = 0; q < N; ++q) {
        const double h00 = metric.h00.values[q].real();
        const cplx a = f.psi_L.values[q], r = f.psi_R.values[q];
        const cplx la = f.lap_L.values[q], lr = f.lap_R.values[q];
        cplx gg_same = 0.0, gg_cross = 0.0;
        for (int c = 0; c < 3; ++c) {
            gg_same += f.grad_L[c].values[q] * f.grad_L[c].values[q];
            gg_cross += f.grad_R[c].values[q] * f.grad_L[c].values[q];
        }
        same += h00 * (-3.0 * a * la - 4.0 * gg_same);
        cross += h00 * (-1.5 * (r * la + a * lr) - 4.0 * gg_cross);
    }
    const double h = f.spec.dx();
    const double w = 0.5 * h * h * h;
    return {same * w, cross * w};
}

// amplitude * int_0^t e^{i sign f (t - t')} dt' = amplitude * (e^{i sign f t} - 1)/(i sign f)
struct OscillatoryTerm {
    cplx amplitude{0.0, 0.0};
    double frequency = 0.0;  // 2 omega
    int sign = +1;

    static double reduced_phase(double phi) { return std::remainder(phi, 2.0 * 3.14159265358979323846); }

    cplx value(double t) const {
        if (t == 0.0 || amplitude == cplx(0.0)) return 0.0;
        const double phi = sign * frequency * t;
        // (e^{i phi} - 1) = 2 i sin(phi/2) e^{i phi/2}, stable for small phi
        const double half = std::abs(phi) > 1e6 ? reduced_phase(phi) / 2.0 : phi / 2.0;
        const cplx num = 2.0 * cplx(0.0, 1.0) * std::sin(half) * std::polar(1.0, half);
        return amplitude * num / cplx(0.0, sign * frequency);
    }
    cplx rate(double t) const {
        const double phi = sign * frequency * t;
        return amplitude * std::polar(1.0, std::abs(phi) > 1e6 ? reduced_phase(phi) : phi);
    }
    bool phase_unreliable(double t) const { return std::abs(0.5 * frequency * t) > 1e6; }
};

// The K functions evaluated at one time (natural units).
struct CouplingValues {
    cplx kA_plus{0.0, 0.0};
    double kA_minus = 0.0;
    cplx kB_plus_p{0.0, 0.0};
    cplx kB_plus_m{0.0, 0.0};
    cplx kB_minus{0.0, 0.0};
    double omega = 0.0;
    double t = 0.0;
};

struct CouplingSet {
    cplx kA_plus{0.0, 0.0};  // K^(A,+) / (m t)
    double kA_minus = 0.0;   // K^(A,-) / (m t)
    double kA_minus_imag = 0.0;
    OscillatoryTerm kB_plus_p{{0.0, 0.0}, 0.0, +1};
    OscillatoryTerm kB_plus_m{{0.0, 0.0}, 0.0, -1};
    OscillatoryTerm kB_minus{{0.0, 0.0}, 0.0, +1};
    double omega = 0.0;  // Compton frequency = m in natural units
    double kappa_ab = 0.0;
    double t_ref = 0.0;
    double alpha = 0.0, beta = 0.0;

    double mass() const { return omega; }

    CouplingValues at(double t) const {
        CouplingValues v;
        v.t = t;
        v.omega = omega;
        v.kA_plus = omega * t * kA_plus;
        v.kA_minus = omega * t * kA_minus;
        v.kB_plus_p = kB_plus_p.value(t);
        v.kB_plus_m = kB_plus_m.value(t);
        v.kB_minus = kB_minus.value(t);
        return v;
    }
    // time derivatives of every K
    CouplingValues rate(double t) const {
        CouplingValues v;
        v.t = t;
        v.omega = omega;
        v.kA_plus = omega * kA_plus;
        v.kA_minus = omega * kA_minus;
        v.kB_plus_p = kB_plus_p.rate(t);
        v.kB_plus_m = kB_plus_m.rate(t);
        v.kB_minus = kB_minus.rate(t);
        return v;
    }
    bool phase_unreliable(double t) const { return kB_plus_p.phase_unreliable(t); }
};

inline std::tuple<cplx, cplx, cplx> compute_kB(const WavePacket& p, const MetricPerturbation& metric, double omega,
                                               double t) {
    if (!(omega > 0.0)) throw std::domain_error("compute_kB: omega must be positive");
    const auto amp = squeeze_amplitudes(packet_fields(p, metric.grid(), true), metric);
    const OscillatoryTerm pp{amp.same_side, 2.0 * omega, +1}, pm{amp.same_side, 2.0 * omega, -1},
        mm{amp.cross_side, 2.0 * omega, +1};
    return {pp.value(t), pm.value(t), mm.value(t)};
}

inline double extract_kappa(const WavePacket& p, const MetricPerturbation& metric, double alpha, double beta) {
    validate_state(alpha, beta);
    if (!metric.source) throw std::domain_error("extract_kappa: metric carries no source tag");
    const SourceTag& s = *metric.source;
    if (s.alpha != alpha || s.beta != beta || !s.matches(p))
        throw std::domain_error("extract_kappa: metric was sourced by a different state");
    return compute_kA_plus(p, metric, 1.0).imag();
}

inline CouplingSet compute_coupling_set(const PacketFields& f, const MetricPerturbation& metric, double omega,
                                        double t_ref = 0.0) {
    if (!(omega > 0.0)) throw std::domain_error("compute_coupling_set: omega must be positive");
    CouplingSet c;
    c.omega = omega;
    c.t_ref = t_ref;
    c.kA_plus = compute_kA_plus(f, metric, 1.0);
    const cplx km = compute_kA_minus_complex(f, metric, 1.0);
    c.kA_minus = km.real();
    c.kA_minus_imag = km.imag();
    c.kappa_ab = c.kA_plus.imag();
    if (metric.source) {
        c.alpha = metric.source->alpha;
        c.beta = metric.source->beta;
    }
    if (f.has_derivatives) {
        const auto amp = squeeze_amplitudes(f, metric);
        c.kB_plus_p = {amp.same_side, 2.0 * omega, +1};
        c.kB_plus_m = {amp.same_side, 2.0 * omega, -1};
        c.kB_minus = {amp.cross_side, 2.0 * omega, +1};
    }
    return c;
}

inline CouplingSet compute_coupling_set(const WavePacket& p, const MetricPerturbation& metric, double omega,
                                        double t_ref = 0.0) {
    return compute_coupling_set(packet_fields(p, metric.grid(), true), metric, omega, t_ref);
}

struct ConvergenceReport {
    GridSpec grid;
    cplx kA_plus{0.0, 0.0};
    double relative_change = 0.0;
    bool converged = false;
    int levels = 0;
};

// Doubles n from `start` until K^(A,+)/(m t) moves by less than `tol` relative, or n exceeds n_max.
inline ConvergenceReport converge_kA_plus(const WavePacket& p, double alpha, double beta, GridSpec start,
                                          double tol = 5e-3, int n_max = 128) {
    ConvergenceReport r;
    cplx prev = compute_kA_plus(p, solve_metric(p, alpha, beta, start), 1.0);
    r.grid = start;
    r.kA_plus = prev;
    r.levels = 1;
    while (start.n * 2 <= n_max) {
        start.n *= 2;
        const cplx cur = compute_kA_plus(p, solve_metric(p, alpha, beta, start), 1.0);
        r.relative_change = std::abs(cur - prev) / std::max(std::abs(cur), 1e-300);
        r.grid = start;
        r.kA_plus = cur;
        ++r.levels;
        if (r.relative_change < tol) {
            r.converged = true;
            break;
        }
        prev = cur;
    }
    return r;
}

// |int |F(k)|^2 e^{i|k|t} d^3k| / int |F|^2 d^3k for a massless excitation, t in units of l0/c.
// Spherical product rule: composite Gauss-Legendre in |k| with panels resolving e^{i|k|t},
// Gauss-Legendre in cos(theta), trapezoid in phi.
inline double massless_decay(const WavePacket& p, double t_over_tau_light) {
    if (!(t_over_tau_light >= 0.0)) throw std::domain_error("massless_decay: t must be non-negative");
    const double t = t_over_tau_light;
    const double s = p.width_inv_l0;
    double kmax = 12.0 * s;
    if (p.family == PacketFamily::rectangle) kmax = 3.0 * s;  // corner of the cube |k_i| <= sqrt(3) sigma
    if (p.family == PacketFamily::sinc) kmax = 200.0 * s;
    const bool isotropic = (p.family == PacketFamily::gaussian || p.family == PacketFamily::gaussian_phase) &&
                           p.k0 == Vec3{0.0, 0.0, 0.0};
    constexpr double pi = 3.14159265358979323846;

    auto shell = [&](double k) -> double {
        if (isotropic) return 4.0 * pi * std::norm(p.amplitude({k, 0.0, 0.0}));
        constexpr int nphi = 64;
        const auto& nodes = boost::math::quadrature::gauss<double, 48>::abscissa();
        const auto& weights = boost::math::quadrature::gauss<double, 48>::weights();
        double acc = 0.0;
        auto ring = [&](double ct, double w) {
            const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            double ring_sum = 0.0;
            for (int q = 0; q < nphi; ++q) {
                const double ph = 2.0 * pi * q / nphi;
                ring_sum += std::norm(p.amplitude({k * st * std::cos(ph), k * st * std::sin(ph), k * ct}));
            }
            acc += w * ring_sum * (2.0 * pi / nphi);
        };
        for (std::size_t q = 0; q < nodes.size(); ++q) {
            if (nodes[q] == 0.0) {
                ring(0.0, weights[q]);
            } else {
                ring(nodes[q], weights[q]);
                ring(-nodes[q], weights[q]);
            }
        }
        return acc;
    };
    double panel = 0.25 * s;
    if (t > 0.0) panel = std::min(panel, pi / (2.0 * t));
    const cplx num = quad::composite_gl([&](double k) { return k * k * shell(k) * std::polar(1.0, k * t); }, 0.0,
                                        kmax, panel);
    const double den = quad::composite_gl([&](double k) { return k * k * shell(k); }, 0.0, kmax, 0.25 * s);
    return std::abs(num) / den;
}

}  // namespace selfgrav
