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

#include "selfgrav/scales.hpp"

using namespace selfgrav;

namespace {

// independent arithmetic with the same frozen constants
constexpr double hbar = 1.054571817e-34, G = 6.67430e-11, c = 2.99792458e8;

}  // namespace

TEST(Scales, SphereScenario) {
    const PhysicalScales s = compute_scales(1e-14, 1e-6, 2e-6);
    EXPECT_NEAR(s.xi, 7.43e-36, 0.01e-36);
    EXPECT_NEAR(s.compton_m, 3.52e-29, 0.01e-29);
    EXPECT_NEAR(s.tau_g_s, 3.16e-2, 0.01e-2);
    EXPECT_NEAR(1.0 / s.tau_g_s, 31.6, 0.1);
    EXPECT_GE(s.xi, 1e-36);
    EXPECT_LE(s.xi, 1e-35);
    EXPECT_LT(s.compton_m / s.size_m, 1e-22);
    EXPECT_EQ(s.separation_m, 2e-6);
}

TEST(Scales, FormulasMatchIndependentArithmetic) {
    for (double m : {1e-20, 1e-14, 3.7e-9})
        for (double l : {1e-9, 1e-6, 2.5e-3}) {
            const PhysicalScales s = compute_scales(m, l, 0.0);
            const double lc = hbar / (m * c);
            EXPECT_DOUBLE_EQ(s.xi, G * m / (l * c * c));
            EXPECT_DOUBLE_EQ(s.compton_m, lc);
            EXPECT_DOUBLE_EQ(s.tau_g_s, 2.0 * hbar * l / (G * m * m));
            EXPECT_DOUBLE_EQ(s.e_grav_J, G * m * m / (2.0 * l));
            EXPECT_DOUBLE_EQ(s.tau_qm_s, l * l / (lc * c));
            EXPECT_DOUBLE_EQ(s.tau_light_s, l / c);
            EXPECT_DOUBLE_EQ(s.energy_scale_J, m * c * c);
            EXPECT_NEAR(s.tau_g_s * s.e_grav_J / hbar, 1.0, 1e-15);
            EXPECT_NEAR(s.tau_g_no_factor2_s(), 0.5 * s.tau_g_s, 1e-16 * s.tau_g_s);
            EXPECT_NEAR(s.mass_natural(), l / lc, 1e-15 * l / lc);
            for (double v : {s.xi, s.compton_m, s.tau_g_s, s.tau_qm_s, s.tau_light_s, s.e_grav_J}) EXPECT_GT(v, 0.0);
        }
}

TEST(Scales, NaturalTimeProductIsTwoTimesOverTauG) {
    const PhysicalScales s = compute_scales(1e-14, 1e-6);
    const double t = 1e-4;
    EXPECT_NEAR(s.xi * s.m_t(t) / (2.0 * t / s.tau_g_s), 1.0, 1e-14);
    EXPECT_NEAR(s.mass_natural() * s.to_natural_time(t) / s.m_t(t), 1.0, 1e-14);
}

TEST(Scales, ScalingLaws) {
    const PhysicalScales a = compute_scales(1e-14, 1e-6);
    const PhysicalScales m2 = compute_scales(2e-14, 1e-6);
    const PhysicalScales l2 = compute_scales(1e-14, 2e-6);
    EXPECT_NEAR((1.0 / m2.tau_g_s) / (1.0 / a.tau_g_s), 4.0, 1e-14);
    EXPECT_NEAR(m2.xi / a.xi, 2.0, 1e-14);
    EXPECT_NEAR(l2.xi / a.xi, 0.5, 1e-15);
    EXPECT_NEAR(l2.tau_g_s / a.tau_g_s, 2.0, 1e-14);
}

TEST(Scales, RejectsNonPositiveInputs) {
    EXPECT_THROW(compute_scales(0.0, 1e-6), std::domain_error);
    EXPECT_THROW(compute_scales(-1.0, 1e-6), std::domain_error);
    EXPECT_THROW(compute_scales(1e-14, 0.0), std::domain_error);
    EXPECT_THROW(compute_scales(1e-14, 1e-6, -1.0), std::domain_error);
    EXPECT_NO_THROW(compute_scales(1e-14, 1e-6, 0.0));
}

TEST(Regime, SphereFlags) {
    const PhysicalScales s = compute_scales(1e-14, 1e-6, 2e-6);
    const RegimeReport early = check_regime(s, 1e-4);
    EXPECT_TRUE(early.xi_ok && early.static_ok && early.time_ok);
    EXPECT_TRUE(early.messages.empty());
    EXPECT_NEAR(early.t_over_tau_g, 3.16e-3, 0.01e-3);

    // t/tau_G = 0.032 already exceeds the default 1e-2
    EXPECT_FALSE(check_regime(s, 1e-3).time_ok);

    const RegimeReport late = check_regime(s, 1.0);
    EXPECT_FALSE(late.time_ok);
    ASSERT_FALSE(late.messages.empty());
    bool named = false;
    for (const auto& m : late.messages) named |= m.find("tau_G") != std::string::npos;
    EXPECT_TRUE(named);
    EXPECT_NEAR(late.t_over_tau_g, 31.6, 0.1);
    EXPECT_THROW(check_regime(s, -1.0), std::domain_error);
}

TEST(Regime, StaticFlag) {
    // lambda_C = 3.5e-13 m for 1e-30 kg, still far below l0 = 1e-6 m
    EXPECT_TRUE(check_regime(compute_scales(1e-30, 1e-6), 0.0).static_ok);
    const RegimeReport r = check_regime(compute_scales(1e-40, 1e-6), 0.0);
    EXPECT_FALSE(r.static_ok);
    EXPECT_FALSE(r.messages.empty());
}

TEST(Regime, ThresholdsAreConfigurable) {
    const PhysicalScales s = compute_scales(1e-14, 1e-6);
    RegimeThresholds th;
    th.eps_time = 0.1;
    EXPECT_TRUE(check_regime(s, 1e-3, th).time_ok);
    th.eps_xi = 1e-40;
    const RegimeReport r = check_regime(s, 0.0, th);
    EXPECT_FALSE(r.xi_ok);
    EXPECT_EQ(r.messages.size(), 1u);
}
