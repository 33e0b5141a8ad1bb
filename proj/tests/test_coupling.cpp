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
#include "oracles/coulomb.hpp"
#include "selfgrav/coupling.hpp"

using namespace selfgrav;

namespace {

constexpr double pi = 3.14159265358979323846;

WavePacket gauss(double L) { return make_packet(PacketFamily::gaussian, 1.0, {0, 0, 0}, {L, 0, 0}); }
WavePacket phase(double L, double chirp = 0.1) {
    return make_packet(PacketFamily::gaussian_phase, 1.0, {0, 0, 0}, {L, 0, 0}, chirp);
}

cplx kA(const WavePacket& p, double alpha, double beta) {
    return compute_kA_plus(p, solve_metric(p, alpha, beta, default_grid(p.L_abs())), 1.0);
}

}  // namespace

TEST(KAPlus, RealPacketHasNoImaginaryPart) {
    for (auto fam : {PacketFamily::gaussian, PacketFamily::rectangle, PacketFamily::sinc}) {
        const auto p = make_packet(fam, 1.0, {0, 0, 0}, {1, 0, 0});
        const auto m = solve_metric(p, 0.7, 0.3, default_grid(1.0));
        const cplx k = compute_kA_plus(p, m, 1.0);
        EXPECT_LT(std::abs(k.imag()), 1e-12) << to_string(fam);
        EXPECT_GT(std::abs(k.real()), 1e-3) << to_string(fam);
    }
}

TEST(KAPlus, LinearInMassTime) {
    const auto p = phase(1.0);
    const auto m = solve_metric(p, 0.5, 0.5, default_grid(1.0));
    const auto f = packet_fields(p, m.grid());
    const cplx k1 = compute_kA_plus(f, m, 0.37), k2 = compute_kA_plus(f, m, 2.9);
    EXPECT_LT(std::abs(k2 / 2.9 - k1 / 0.37) / std::abs(k1 / 0.37), 1e-14);
    EXPECT_GT(std::abs(k1.imag()), 1e-3);
}

TEST(KAPlus, MomentumRouteAgrees) {
    for (const auto& p : {gauss(1.0), phase(1.0), phase(2.0, 0.05)}) {
        const auto m = solve_metric(p, 0.3, 0.4, default_grid(p.L_abs()));
        const cplx a = compute_kA_plus(p, m, 1.0), b = compute_kA_plus_momentum(p, m, 1.0);
        EXPECT_LT(std::abs(a - b) / std::abs(a), 2e-11);
    }
}

TEST(KAPlus, SelfEnergyOfCoincidentPackets) {
    // L = 0: |psi|^2 is a normal density of std 1/2 and K/(m t) = 4 int rho h00 = -16/sqrt(pi)
    const cplx k = kA(gauss(0.0), 1.0, 0.0);
    EXPECT_NEAR(k.real(), -16.0 / std::sqrt(pi), 1e-4 * 16.0 / std::sqrt(pi));
    EXPECT_NEAR(oracle::coulomb_kA_plus(1.0, 0.0, 0.0, 1.0, 0.0).real(), -16.0 / std::sqrt(pi), 1e-8);
}

TEST(KAPlus, MatchesSeparableCoulombOracle) {
    struct Case {
        double chirp, L, alpha, beta;
    };
    for (const Case c : {Case{0.1, 1.0, 0.5, 0.5}, Case{0.1, 1.0, 0.8, 0.2}, Case{0.0, 1.5, 0.3, 0.4}}) {
        const cplx ref = oracle::coulomb_kA_plus(1.0, c.chirp, c.L, c.alpha, c.beta);
        const cplx k = kA(phase(c.L, c.chirp), c.alpha, c.beta);
        EXPECT_LT(std::abs(k.real() - ref.real()) / std::abs(ref.real()), 2e-4) << c.L << " " << c.alpha;
        if (c.chirp != 0.0) EXPECT_LT(std::abs(k.imag() - ref.imag()) / std::abs(ref.imag()), 1e-3);
        else EXPECT_LT(std::abs(ref.imag()), 1e-8);
    }
}

TEST(KAPlus, DistanceSuppression) {
    // n grows with the box so dx stays near 0.3 l0; at n = 64 the L = 8 box truncates the spectrum
    auto at = [](const WavePacket& p) {
        const GridSpec g = default_grid(p.L_abs(), p.L_abs() > 4.0 ? 128 : 64);
        return compute_kA_plus(p, solve_metric(p, 0.5, 0.5, g), 1.0);
    };
    double prev = 1e300;
    double k1 = 0.0, k8 = 0.0;
    for (double L : {1.0, 2.0, 4.0, 8.0}) {
        const double v = std::abs(at(gauss(L)));
        EXPECT_LT(v, prev) << L;
        prev = v;
        if (L == 1.0) k1 = v;
        if (L == 8.0) k8 = v;
    }
    EXPECT_LT(k8 / k1, 1e-4);
    EXPECT_LT(std::abs(kA(gauss(8.0), 0.5, 0.5)) / k1, 1e-4);
    const double i1 = at(phase(1.0)).imag(), i8 = at(phase(8.0)).imag();
    EXPECT_LT(std::abs(i8 / i1), 1e-4);
}

TEST(KAPlus, GridRefinementConverges) {
    const auto r = converge_kA_plus(phase(1.0), 0.5, 0.5, default_grid(1.0));
    EXPECT_TRUE(r.converged);
    EXPECT_LT(r.relative_change, 5e-3);
    EXPECT_EQ(r.grid.n, 128);
}

TEST(KAMinus, RealAndMatchesLeftSelfTerm) {
    const auto p = phase(1.0);
    const auto m = solve_metric(p, 0.6, 0.2, default_grid(1.0));
    const auto f = packet_fields(p, m.grid());
    const cplx km = compute_kA_minus_complex(f, m, 1.0);
    EXPECT_LT(std::abs(km.imag()), 1e-14 * std::abs(km));
    EXPECT_LT(km.real(), 0.0);
    // K^(A,-) in the L = 0 limit equals K^(A,+)
    const auto q = gauss(0.0);
    const auto mq = solve_metric(q, 1.0, 0.0, default_grid(0.0));
    const auto fq = packet_fields(q, mq.grid());
    EXPECT_LT(std::abs(compute_kA_minus_complex(fq, mq, 1.0) - compute_kA_plus(fq, mq, 1.0)), 1e-12);
}

TEST(KAPlus, GridMismatchThrows) {
    const auto p = gauss(1.0);
    const auto m = solve_metric(p, 0.5, 0.5, default_grid(1.0));
    const auto f = packet_fields(p, GridSpec(64, 24.0), true);
    EXPECT_THROW(compute_kA_plus(f, m, 1.0), std::domain_error);
    EXPECT_THROW(compute_kA_minus_complex(f, m, 1.0), std::domain_error);
    EXPECT_THROW(squeeze_amplitudes(f, m), std::domain_error);
    EXPECT_THROW(compute_coupling_set(f, m, 1.0), std::domain_error);
    EXPECT_THROW(squeeze_amplitudes(packet_fields(p, m.grid(), false), m), std::domain_error);
}

TEST(Kappa, ExtractRequiresMatchingSource) {
    const auto p = phase(1.0);
    const auto m = solve_metric(p, 0.5, 0.5, default_grid(1.0));
    EXPECT_EQ(extract_kappa(p, m, 0.5, 0.5), compute_kA_plus(p, m, 1.0).imag());
    EXPECT_THROW(extract_kappa(p, m, 0.6, 0.4), std::domain_error);
    EXPECT_THROW(extract_kappa(phase(1.0, 0.2), m, 0.5, 0.5), std::domain_error);
    EXPECT_THROW(extract_kappa(p, assemble_metric(m.h00), 0.5, 0.5), std::domain_error);
    EXPECT_THROW(extract_kappa(p, m, 0.5, 0.7), std::domain_error);
}

TEST(KB, VanishesAtZeroAndFullPeriod) {
    const auto p = gauss(1.0);
    const auto m = solve_metric(p, 0.5, 0.5, default_grid(1.0));
    const double omega = 3.0;
    const auto [a, b, c] = compute_kB(p, m, omega, 0.0);
    EXPECT_EQ(std::abs(a) + std::abs(b) + std::abs(c), 0.0);
    const auto [d, e, f] = compute_kB(p, m, omega, pi / omega);
    const auto [g, h, i] = compute_kB(p, m, omega, 0.3);
    EXPECT_LT(std::abs(d) + std::abs(e) + std::abs(f), 1e-14 * (std::abs(g) + std::abs(h) + std::abs(i)));
    EXPECT_THROW(compute_kB(p, m, 0.0, 1.0), std::domain_error);
}

TEST(KB, MatchesAnalyticGradientOracle) {
    const auto p = gauss(1.0);
    const GridSpec g = default_grid(1.0);
    const auto m = solve_metric(p, 0.5, 0.5, g);
    // spatial amplitudes from closed-form gaussian derivatives
    cplx same = 0.0, cross = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const double x = g.x(i), y = g.x(j), z = g.x(k);
                auto f = [&](double c, int d) {
                    return d == 0 ? oracle::gaussian_psi_1d(c, 1.0)
                                  : d == 1 ? oracle::gaussian_dpsi_1d(c, 1.0) : oracle::gaussian_d2psi_1d(c, 1.0);
                };
                auto field = [&](double shift, int dx, int dy, int dz) { return f(x - shift, dx) * f(y, dy) * f(z, dz); };
                const double R = field(1.0, 0, 0, 0), Lf = field(-1.0, 0, 0, 0);
                const double lapR = field(1.0, 2, 0, 0) + field(1.0, 0, 2, 0) + field(1.0, 0, 0, 2);
                const double lapL = field(-1.0, 2, 0, 0) + field(-1.0, 0, 2, 0) + field(-1.0, 0, 0, 2);
                const double gLL = std::pow(field(-1.0, 1, 0, 0), 2) + std::pow(field(-1.0, 0, 1, 0), 2) +
                                   std::pow(field(-1.0, 0, 0, 1), 2);
                const double gRL = field(1.0, 1, 0, 0) * field(-1.0, 1, 0, 0) + field(1.0, 0, 1, 0) * field(-1.0, 0, 1, 0) +
                                   field(1.0, 0, 0, 1) * field(-1.0, 0, 0, 1);
                const double h00 = m.h00(i, j, k).real();
                same += 0.5 * h00 * (-1.5 * 2.0 * Lf * lapL - 4.0 * gLL);
                cross += 0.5 * h00 * (-1.5 * (R * lapL + Lf * lapR) - 4.0 * gRL);
            }
    const double dv = std::pow(g.dx(), 3);
    same *= dv;
    cross *= dv;
    const double omega = 2.5;
    for (double t : {0.1, 0.77, 3.0}) {
        auto timed = [&](cplx amp, int sign) {
            return amp * oracle::simpson([&](double tp) { return std::polar(1.0, sign * 2.0 * omega * (t - tp)); }, 0.0,
                                         t, 4000);
        };
        const auto [pp, pm, mm] = compute_kB(p, m, omega, t);
        EXPECT_LT(std::abs(pp - timed(same, +1)), 1e-8 * std::abs(pp)) << t;
        EXPECT_LT(std::abs(pm - timed(same, -1)), 1e-8 * std::abs(pm)) << t;
        EXPECT_LT(std::abs(mm - timed(cross, +1)), 1e-8 * std::abs(mm)) << t;
    }
}

TEST(OscillatoryTerm, RateIsDerivative) {
    const OscillatoryTerm o{{0.3, -1.2}, 5.0, -1};
    for (double t : {0.0, 0.4, 2.0}) {
        const double h = 1e-5;
        const cplx fd = (o.value(t + h) - o.value(std::max(0.0, t - h))) / (t == 0.0 ? h : 2.0 * h);
        EXPECT_LT(std::abs(fd - o.rate(t)), t == 0.0 ? 1e-4 : 1e-8);
    }
    EXPECT_EQ(o.value(0.0), cplx(0.0));
    // small phase limit: value -> amplitude t
    EXPECT_LT(std::abs(o.value(1e-12) - o.amplitude * 1e-12), 1e-10 * std::abs(o.amplitude) * 1e-12);
}

TEST(OscillatoryTerm, LargePhaseStaysBounded) {
    const OscillatoryTerm o{{1.0, 0.0}, 2.0, +1};
    EXPECT_FALSE(o.phase_unreliable(1e5));
    EXPECT_TRUE(o.phase_unreliable(2e6));
    for (double t : {1e7, 3.3e9, 1e15}) {
        const cplx v = o.value(t);
        EXPECT_TRUE(std::isfinite(v.real()) && std::isfinite(v.imag()));
        EXPECT_LE(std::abs(v), 2.0 / o.frequency + 1e-12);
    }
}

TEST(CouplingSet, ScalesWithTime) {
    const auto p = phase(1.0);
    const auto m = solve_metric(p, 0.5, 0.5, default_grid(1.0));
    const double omega = 4.0;
    const auto set = compute_coupling_set(p, m, omega);
    EXPECT_EQ(set.alpha, 0.5);
    EXPECT_EQ(set.kappa_ab, set.kA_plus.imag());
    const double t = 0.6;
    const auto v = set.at(t);
    EXPECT_LT(std::abs(v.kA_plus - compute_kA_plus(p, m, omega * t)), 1e-13);
    const auto [pp, pm, mm] = compute_kB(p, m, omega, t);
    EXPECT_LT(std::abs(v.kB_plus_p - pp) + std::abs(v.kB_plus_m - pm) + std::abs(v.kB_minus - mm), 1e-13);
    EXPECT_EQ(set.rate(t).kA_plus, omega * set.kA_plus);
    EXPECT_THROW(compute_coupling_set(p, m, -1.0), std::domain_error);
}

TEST(MasslessDecay, GaussianMatchesRadialOracle) {
    const auto p = gauss(1.0);
    EXPECT_NEAR(massless_decay(p, 0.0), 1.0, 1e-14);
    for (double t : {1.0, 10.0, 100.0}) {
        const double ref = oracle::massless_decay_radial(t);
        EXPECT_NEAR(massless_decay(p, t), ref, 1e-6 * ref + 1e-12) << t;
    }
    EXPECT_LT(massless_decay(p, 10.0), 0.1);
    EXPECT_LT(massless_decay(p, 100.0), 0.01);
}

TEST(MasslessDecay, AngularPathMatchesCartesianSum) {
    // k0 != 0 forces the angular quadrature; midpoint sum over a dense cube as the oracle
    const auto p = make_packet(PacketFamily::gaussian, 1.0, {0.5, 0, 0}, {1, 0, 0});
    const double t = 4.0, h = 0.04, K = 7.0;
    const int m = static_cast<int>(2 * K / h);
    cplx num = 0.0;
    double den = 0.0;
    for (int i = 0; i < m; ++i) {
        const double kx = -K + (i + 0.5) * h + 0.5;
        const double wx = std::norm(p.factor(0, kx - 0.5));
        for (int j = 0; j < m; ++j) {
            const double ky = -K + (j + 0.5) * h, wy = std::norm(p.factor(1, ky));
            for (int k = 0; k < m; ++k) {
                const double kz = -K + (k + 0.5) * h, w = wx * wy * std::norm(p.factor(2, kz));
                num += w * std::polar(1.0, t * std::sqrt(kx * kx + ky * ky + kz * kz));
                den += w;
            }
        }
    }
    const double ref = std::abs(num) / den;
    EXPECT_NEAR(massless_decay(p, t), ref, 1e-4);
    EXPECT_THROW(massless_decay(p, -1.0), std::domain_error);
}
