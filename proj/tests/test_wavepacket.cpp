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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles/analytic.hpp"
#include "selfgrav/quadrature.hpp"
#include "selfgrav/wavepacket.hpp"

using namespace selfgrav;

namespace {

constexpr double pi = 3.14159265358979323846;

double norm_1d(const WavePacket& p, int axis, double lo, double hi) {
    return quad::composite_gl([&](double u) { return std::norm(p.factor(axis, u)); }, lo, hi, 0.05);
}

// Reference DFT on one axis by direct summation over the sampled factor.
cplx direct_1d(const WavePacket& p, int axis, int sign, const GridSpec& g, double x) {
    cplx s = 0.0;
    for (int b = 0; b < g.n; ++b) {
        const double k = g.k(b);
        s += p.factor(axis, k) * std::polar(1.0, k * (x - sign * p.L_vec[axis]));
    }
    return s * g.dk() / std::sqrt(2.0 * pi);
}

}  // namespace

TEST(WavePacket, NormalizationPerFamily) {
    for (auto f : {PacketFamily::gaussian, PacketFamily::gaussian_phase}) {
        const auto p = make_packet(f, 1.3, {0, 0, 0}, {0, 0, 0}, 0.4);
        double n = 1.0;
        for (int ax = 0; ax < 3; ++ax) n *= norm_1d(p, ax, -20.0, 20.0);
        EXPECT_NEAR(n, 1.0, 1e-10);
    }
    const auto r = make_packet(PacketFamily::rectangle, 1.0, {0, 0, 0}, {0, 0, 0});
    const double a = std::sqrt(3.0);
    EXPECT_NEAR(std::pow(norm_1d(r, 0, -a, a), 3), 1.0, 1e-12);
    // sinc^2 tail ~ 1/(pi b K) beyond K
    const auto s = make_packet(PacketFamily::sinc, 1.0, {0, 0, 0}, {0, 0, 0});
    EXPECT_NEAR(norm_1d(s, 0, -2000.0, 2000.0), 1.0, 1e-3);
}

TEST(WavePacket, RealFamiliesAreEven) {
    for (auto f : {PacketFamily::gaussian, PacketFamily::rectangle, PacketFamily::sinc}) {
        const auto p = make_packet(f, 1.0, {0, 0, 0}, {1, 2, 3});
        for (Vec3 k : {Vec3{0.3, -0.2, 1.1}, Vec3{1.7, 0.0, -0.4}, Vec3{-1.6, 1.6, 0.9}})
            EXPECT_EQ(p.amplitude(k), p.amplitude({-k[0], -k[1], -k[2]}));
    }
    const auto ph = make_packet(PacketFamily::gaussian_phase, 1.0, {0, 0, 0}, {0, 0, 0}, 0.3);
    EXPECT_NE(ph.amplitude({0.5, 0, 0}), ph.amplitude({-0.5, 0, 0}));
}

TEST(WavePacket, Errors) {
    EXPECT_THROW(parse_family("lorentzian"), std::domain_error);
    EXPECT_THROW(make_packet("lorentzian", 1.0, {0, 0, 0}, {0, 0, 0}), std::domain_error);
    EXPECT_THROW(make_packet(PacketFamily::gaussian, 0.0, {0, 0, 0}, {0, 0, 0}), std::domain_error);
    EXPECT_THROW(make_packet(PacketFamily::gaussian, -1.0, {0, 0, 0}, {0, 0, 0}), std::domain_error);
    const auto p = make_packet(PacketFamily::gaussian, 1.0, {0, 0, 0}, {4, 0, 0});
    try {
        position_profile(p, +1, GridSpec(32, 16.0));
        FAIL() << "expected a domain error";
    } catch (const std::domain_error& e) {
        EXPECT_NE(std::string(e.what()).find("need at least [-12"), std::string::npos) << e.what();
    }
    EXPECT_THROW(position_profile(p, 2, default_grid(4.0)), std::domain_error);
}

TEST(PositionProfile, GaussianMatchesClosedForm) {
    const auto p = make_packet(PacketFamily::gaussian, 1.0, {0, 0, 0}, {0, 0, 0});
    const GridSpec g = default_grid(0.0);
    const auto f = position_profile(p, +1, g);
    double err = 0.0, imag = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const double ref = oracle::gaussian_psi_1d(g.x(i), 1.0) * oracle::gaussian_psi_1d(g.x(j), 1.0) *
                                   oracle::gaussian_psi_1d(g.x(k), 1.0);
                err = std::max(err, std::abs(f(i, j, k).real() - ref));
                imag = std::max(imag, std::abs(f(i, j, k).imag()));
            }
    EXPECT_LT(err, 1e-10);
    EXPECT_LT(imag, 1e-14);
    const int c = g.n / 2;
    // radial symmetry: the three axis neighbours agree
    EXPECT_NEAR(f(c + 3, c, c).real(), f(c, c + 3, c).real(), 1e-14);
    EXPECT_NEAR(f(c + 3, c, c).real(), f(c, c, c - 3).real(), 1e-14);
    EXPECT_EQ(std::abs(f(c, c, c)), f.max_abs());
}

TEST(PositionProfile, ShiftedPeak) {
    const auto p = make_packet(PacketFamily::gaussian, 1.0, {0, 0, 0}, {2, 0, 0});
    const GridSpec g = default_grid(2.0);
    for (int sign : {+1, -1}) {
        const auto f = position_profile(p, sign, g);
        std::size_t best = 0;
        for (std::size_t q = 0; q < f.values.size(); ++q)
            if (std::abs(f.values[q]) > std::abs(f.values[best])) best = q;
        const int i = static_cast<int>(best / (g.n * g.n)), j = static_cast<int>((best / g.n) % g.n),
                  k = static_cast<int>(best % g.n);
        EXPECT_LE(std::abs(g.x(i) - sign * 2.0), g.dx());
        EXPECT_LE(std::abs(g.x(j)), g.dx());
        EXPECT_LE(std::abs(g.x(k)), g.dx());
    }
}

TEST(PositionProfile, RectangleMatchesDirectTransform) {
    const auto p = make_packet(PacketFamily::rectangle, 1.0, {0, 0, 0}, {1, 0, 0});
    const GridSpec g = default_grid(1.0);
    const auto f = position_profile(p, +1, g);
    // the grid rescale is a constant factor; recover it at one point
    const int c = g.n / 2;
    const cplx ref0 = direct_1d(p, 0, +1, g, g.x(c)) * direct_1d(p, 1, +1, g, 0.0) * direct_1d(p, 2, +1, g, 0.0);
    const cplx scale = f(c, c, c) / ref0;
    double err = 0.0;
    for (int i = 0; i < g.n; i += 3)
        for (int j = 0; j < g.n; j += 5) {
            const cplx ref = scale * direct_1d(p, 0, +1, g, g.x(i)) * direct_1d(p, 1, +1, g, g.x(j)) *
                             direct_1d(p, 2, +1, g, 0.0);
            err = std::max(err, std::abs(f(i, j, c) - ref));
        }
    EXPECT_LT(err, 1e-12);
    EXPECT_NEAR(std::abs(scale), 1.0, 0.05);
    // continuum limit: product of sin(a x)/x factors
    const double a = std::sqrt(3.0);
    auto cont = [&](double x) { return x == 0.0 ? a / std::sqrt(pi * a) : std::sin(a * x) / (x * std::sqrt(pi * a)); };
    const double want = cont(g.x(c + 2) - 1.0) * cont(0.0) * cont(0.0);
    EXPECT_NEAR(f(c + 2, c, c).real(), want, 0.05 * std::abs(cont(0.0) * cont(0.0) * cont(0.0)));
}

TEST(PositionProfile, SincFamilyIsABox) {
    const auto p = make_packet(PacketFamily::sinc, 1.0, {0, 0, 0}, {0, 0, 0});
    const GridSpec g(64, 20.0);
    const auto f = position_profile(p, +1, g);
    const int c = g.n / 2;
    // box of half-width b = 1/sigma and height (2 b)^{-3/2}, with Gibbs ringing at the faces
    EXPECT_NEAR(f(c + 1, c, c).real(), std::pow(2.0, -1.5), 0.15 * std::pow(2.0, -1.5));
    EXPECT_LT(std::abs(f(c + 8, c, c)), 0.05 * std::pow(2.0, -1.5));
    double inside = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k)
                if (std::abs(g.x(i)) < 1.0 && std::abs(g.x(j)) < 1.0 && std::abs(g.x(k)) < 1.0)
                    inside += std::norm(f(i, j, k));
    EXPECT_GT(inside * std::pow(g.dx(), 3), 0.85);
}

TEST(PositionProfile, ParsevalAndReflection) {
    for (auto fam : {PacketFamily::gaussian, PacketFamily::rectangle, PacketFamily::sinc, PacketFamily::gaussian_phase}) {
        const auto p = make_packet(fam, 1.0, {0, 0, 0}, {1, 0.5, 0}, 0.2);
        const GridSpec g = default_grid(p.L_abs());
        const auto R = position_profile(p, +1, g), L = position_profile(p, -1, g);
        EXPECT_NEAR(inner(R, R).real(), 1.0, 1e-8) << to_string(fam);
        if (!p.is_real_symmetric()) continue;
        double err = 0.0;
        for (int i = 1; i < g.n; ++i)
            for (int j = 1; j < g.n; ++j)
                for (int k = 1; k < g.n; ++k) err = std::max(err, std::abs(R(i, j, k) - L(g.n - i, g.n - j, g.n - k)));
        EXPECT_LT(err, 1e-11) << to_string(fam);
    }
}

TEST(PositionProfile, PhasePacketIsComplexAndCentred) {
    const auto p = make_packet(PacketFamily::gaussian_phase, 1.0, {0, 0, 0}, {1, 0, 0}, 0.1);
    const GridSpec g = default_grid(1.0);
    const auto f = position_profile(p, +1, g);
    double im = 0.0, mean_x = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                im = std::max(im, std::abs(f(i, j, k).imag()));
                mean_x += g.x(i) * std::norm(f(i, j, k));
            }
    const double h = g.dx();
    mean_x *= h * h * h;
    EXPECT_GT(im, 1e-3);
    EXPECT_NEAR(mean_x, 1.0, 1e-6);
}

TEST(Overlap, ClosedForms) {
    const auto g0 = make_packet(PacketFamily::gaussian, 1.0, {0, 0, 0}, {0, 0, 0});
    EXPECT_NEAR(std::abs(lr_overlap(g0).lr_overlap - 1.0), 0.0, 1e-14);
    const auto g1 = make_packet(PacketFamily::gaussian, 1.0, {0, 0, 0}, {1, 0, 0});
    EXPECT_NEAR(lr_overlap(g1).lr_overlap.real(), std::exp(-2.0), 1e-14);
    EXPECT_NEAR(lr_overlap(g1).lr_overlap.imag(), 0.0, 1e-14);
    const auto gd = make_packet(PacketFamily::gaussian, 0.7, {0, 0, 0}, {0.6, -0.3, 0.9});
    EXPECT_NEAR(lr_overlap(gd).lr_overlap.real(), std::exp(-2.0 * 0.49 * (0.36 + 0.09 + 0.81)), 1e-13);
    const auto g5 = make_packet(PacketFamily::gaussian, 1.0, {0, 0, 0}, {5, 0, 0});
    EXPECT_LT(std::abs(lr_overlap(g5).lr_overlap), 1e-8);
    const auto g10 = make_packet(PacketFamily::gaussian, 1.0, {0, 0, 0}, {10, 0, 0});
    const auto r10 = lr_overlap(g10);
    EXPECT_LT(std::abs(r10.lr_overlap), 1e-12);
    EXPECT_TRUE(r10.is_orthogonal);
    EXPECT_FALSE(lr_overlap(g1).is_orthogonal);

    const double a = std::sqrt(3.0);
    const auto r = make_packet(PacketFamily::rectangle, 1.0, {0, 0, 0}, {0.8, 0, 0});
    EXPECT_NEAR(lr_overlap(r).lr_overlap.real(), std::sin(2 * a * 0.8) / (2 * a * 0.8), 1e-13);
    const auto s = make_packet(PacketFamily::sinc, 1.0, {0, 0, 0}, {0.25, 0, 0});
    EXPECT_NEAR(lr_overlap(s).lr_overlap.real(), 0.75, 1e-15);
}

TEST(Overlap, GaussianMonotoneInSeparation) {
    double prev = 2.0;
    for (double L = 0.0; L <= 4.0; L += 0.25) {
        const double v = std::abs(lr_overlap(make_packet(PacketFamily::gaussian, 1.0, {0, 0, 0}, {L, 0, 0})).lr_overlap);
        EXPECT_LE(v, prev) << L;
        prev = v;
    }
}

TEST(Overlap, MatchesGridQuadrature) {
    // midpoint sum of |F|^2 e^{-2 i L.k} on the reciprocal grid
    const auto p = make_packet(PacketFamily::gaussian_phase, 1.0, {0, 0, 0}, {0.7, 0.2, 0}, 0.3);
    const GridSpec g(64, 20.0);
    cplx s = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const Vec3 kv{g.k(i), g.k(j), g.k(k)};
                s += std::norm(p.amplitude(kv)) * std::polar(1.0, -2.0 * (0.7 * kv[0] + 0.2 * kv[1]));
            }
    s *= std::pow(g.dk(), 3);
    EXPECT_LT(std::abs(s - lr_overlap(p).lr_overlap), 1e-10);
}
