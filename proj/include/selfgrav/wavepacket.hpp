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

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "selfgrav/fft.hpp"
#include "selfgrav/grid.hpp"

namespace selfgrav {

enum class PacketFamily { gaussian, rectangle, sinc, gaussian_phase };

inline std::string to_string(PacketFamily f) {
    switch (f) {
        case PacketFamily::gaussian: return "gaussian";
        case PacketFamily::rectangle: return "rectangle";
        case PacketFamily::sinc: return "sinc";
        case PacketFamily::gaussian_phase: return "gaussian_phase";
    }
    return "unknown";
}

inline PacketFamily parse_family(const std::string& s) {
    if (s == "gaussian") return PacketFamily::gaussian;
    if (s == "rectangle") return PacketFamily::rectangle;
    if (s == "sinc") return PacketFamily::sinc;
    if (s == "gaussian_phase") return PacketFamily::gaussian_phase;
    throw std::domain_error("unknown packet family '" + s + "'");
}

// Separable momentum-space profile F(k) = f_x(k_x) f_y(k_y) f_z(k_z), each factor
// normalized so that int |f|^2 dk = 1. Natural units: lengths in l0.
//
//   gaussian        |f|^2 is a normal density of standard deviation sigma
//   rectangle       uniform on |k| <= sqrt(3) sigma (same variance)
//   sinc            sin(k/sigma)/(k/sigma); in position space a box of half-width 1/sigma
//   gaussian_phase  gaussian times exp(i chirp (u^2 + u^3 - 3u)), u = k_x/sigma, on the x factor only
//
// The cubic phase of gaussian_phase has zero mean group delay, so the packet stays
// centred on +-L while its position profile becomes complex and asymmetric.
struct WavePacket {
    PacketFamily family = PacketFamily::gaussian;
    double width_inv_l0 = 1.0;  // sigma
    double chirp = 0.0;
    Vec3 k0{0.0, 0.0, 0.0};
    Vec3 L_vec{0.0, 0.0, 0.0};

    double L_abs() const { return norm3(L_vec); }

    bool is_real_symmetric() const {
        return family != PacketFamily::gaussian_phase || chirp == 0.0;
    }

    // 1D factor along `axis` at momentum u (k0 already removed).
    cplx factor(int axis, double u) const {
        constexpr double pi = 3.14159265358979323846;
        const double s = width_inv_l0;
        switch (family) {
            case PacketFamily::gaussian:
            case PacketFamily::gaussian_phase: {
                double g = std::pow(2.0 * pi * s * s, -0.25) * std::exp(-u * u / (4.0 * s * s));
                if (family == PacketFamily::gaussian_phase && axis == 0 && chirp != 0.0) {
                    const double v = u / s;
                    return std::polar(g, chirp * (v * v + v * v * v - 3.0 * v));
                }
                return g;
            }
            case PacketFamily::rectangle: {
                const double a = std::sqrt(3.0) * s;
                return std::abs(u) <= a ? 1.0 / std::sqrt(2.0 * a) : 0.0;
            }
            case PacketFamily::sinc: {
                const double b = 1.0 / s;
                const double z = b * u;
                const double sc = std::abs(z) < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
                return std::sqrt(b / pi) * sc;
            }
        }
        return 0.0;
    }

    // F_{k0}(k)
    cplx amplitude(const Vec3& k) const {
        return factor(0, k[0] - k0[0]) * factor(1, k[1] - k0[1]) * factor(2, k[2] - k0[2]);
    }
    // F(k) e^{-i sign L.k}: sign = +1 gives the packet centred at +L (right).
    cplx shifted_amplitude(const Vec3& k, int sign) const {
        const double ph = -sign * (L_vec[0] * k[0] + L_vec[1] * k[1] + L_vec[2] * k[2]);
        return amplitude(k) * std::polar(1.0, ph);
    }
};

inline WavePacket make_packet(PacketFamily family, double width, const Vec3& k0, const Vec3& L_vec,
                              double chirp = 0.0) {
    if (!(width > 0.0) || !std::isfinite(width))
        throw std::domain_error("make_packet: width must be positive");
    if (static_cast<int>(family) < 0 || static_cast<int>(family) > 3)
        throw std::domain_error("make_packet: unknown family");
    if (!std::isfinite(chirp)) throw std::domain_error("make_packet: chirp must be finite");
    WavePacket p;
    p.family = family;
    p.width_inv_l0 = width;
    p.chirp = family == PacketFamily::gaussian_phase ? chirp : 0.0;
    p.k0 = k0;
    p.L_vec = L_vec;
    return p;
}

inline WavePacket make_packet(const std::string& family, double width, const Vec3& k0, const Vec3& L_vec,
                              double chirp = 0.0) {
    return make_packet(parse_family(family), width, k0, L_vec, chirp);
}

// Margin on either side of the packet centres that a grid must cover.
inline constexpr double packet_margin_l0 = 8.0;

inline void require_coverage(const WavePacket& p, const GridSpec& g, const char* who) {
    const double need = p.L_abs() + packet_margin_l0;
    if (g.half_extent() < need)
        throw std::domain_error(std::string(who) + ": grid half-extent " + std::to_string(g.half_extent()) +
                                " l0 is too small; need at least [-" + std::to_string(need) + ", +" +
                                std::to_string(need) + "] l0 per axis");
}

namespace detail {

// Samples F(k) e^{-i sign L.k} times `weight(k)` on the reciprocal grid, rescaled so the
// sampled |F|^2 integrates to exactly one. The Nyquist plane (index 0) has no mirror partner
// and is left at zero so that even spectra stay even on the grid.
template <class Weight>
std::vector<cplx> sample_momentum(const WavePacket& p, int sign, const GridSpec& g, Weight weight) {
    const int n = g.n;
    std::vector<cplx> v(g.size());
    double norm = 0.0;
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j)
            for (int k = 1; k < n; ++k) {
                const Vec3 kv{g.k(i), g.k(j), g.k(k)};
                const cplx a = p.shifted_amplitude(kv, sign);
                norm += std::norm(a);
                v[g.index(i, j, k)] = a * weight(kv);
            }
    const double dk = g.dk();
    norm *= dk * dk * dk;
    const double s = 1.0 / std::sqrt(norm);
    for (auto& x : v) x *= s;
    return v;
}

}  // namespace detail

// psi(x -+ L) = F~(x -+ L)/(2 pi)^{3/2} on the grid, with sum |psi|^2 dx^3 = 1.
// sign = +1 is the right packet centred at +L.
inline ScalarGridField position_profile(const WavePacket& p, int sign, const GridSpec& g) {
    if (sign != 1 && sign != -1) throw std::domain_error("position_profile: sign must be +1 or -1");
    require_coverage(p, g, "position_profile");
    ScalarGridField f(g, "l0^-3/2");
    f.values = detail::sample_momentum(p, sign, g, [](const Vec3&) { return cplx(1.0); });
    fft::to_position(f.values, g);
    return f;
}

// Spatial derivatives of the profile via spectral multipliers.
// component 0..2 gives d/dx_j, component 3 gives the Laplacian.
inline ScalarGridField position_derivative(const WavePacket& p, int sign, const GridSpec& g, int component) {
    if (component < 0 || component > 3) throw std::domain_error("position_derivative: component 0..3");
    require_coverage(p, g, "position_derivative");
    ScalarGridField f(g, "l0^-5/2");
    f.values = detail::sample_momentum(p, sign, g, [component](const Vec3& k) {
        if (component == 3) return cplx(-(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]), 0.0);
        return cplx(0.0, k[component]);
    });
    fft::to_position(f.values, g);
    return f;
}

struct OverlapReport {
    cplx lr_overlap{0.0, 0.0};
    bool is_orthogonal = false;
    double tolerance = 1e-10;
};

// <1_L|1_R> = int |F(k)|^2 e^{-2 i L.k} d^3k. Separable, so it factorizes into three 1D integrals,
// each done by composite Gauss-Legendre over the support of the factor.
inline OverlapReport lr_overlap(const WavePacket& p, double tolerance = 1e-10);

}  // namespace selfgrav

#include "selfgrav/quadrature.hpp"

namespace selfgrav {

inline OverlapReport lr_overlap(const WavePacket& p, double tolerance) {
    cplx total = 1.0;
    const double s = p.width_inv_l0;
    for (int axis = 0; axis < 3; ++axis) {
        const double Lc = p.L_vec[axis];
        const double c0 = p.k0[axis];
        if (p.family == PacketFamily::sinc) {
            // |f|^2 = (b/pi) sinc^2(b u) has a triangular Fourier transform
            const double b = 1.0 / s;
            total *= std::max(0.0, 1.0 - std::abs(Lc) / b) * std::polar(1.0, -2.0 * Lc * c0);
            continue;
        }
        double lo = -16.0 * s, hi = 16.0 * s;
        if (p.family == PacketFamily::rectangle) {
            lo = -std::sqrt(3.0) * s;
            hi = -lo;
        }
        auto integrand = [&](double u) {
            return std::norm(p.factor(axis, u)) * std::polar(1.0, -2.0 * Lc * (u + c0));
        };
        // panel width resolves both the profile and the e^{-2iLk} oscillation
        const double panel = std::min(0.25 * s, Lc != 0.0 ? 0.5 / std::abs(Lc) : 0.25 * s);
        const cplx num = quad::composite_gl(integrand, lo, hi, panel);
        auto mod = [&](double u) { return std::norm(p.factor(axis, u)); };
        const double den = quad::composite_gl(mod, lo, hi, panel);
        total *= num / den;
    }
    OverlapReport r;
    r.lr_overlap = total;
    r.tolerance = tolerance;
    r.is_orthogonal = std::abs(total) < tolerance;
    return r;
}

}  // namespace selfgrav
