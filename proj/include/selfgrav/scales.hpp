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
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "selfgrav/constants.hpp"

namespace selfgrav {

// Derived scales of one scenario. Lengths in metres, times in seconds.
struct PhysicalScales {
    double mass_kg = 0.0;
    double size_m = 0.0;        // l0, also the packet width 1/sigma
    double separation_m = 0.0;  // 2|L|

    double xi = 0.0;
    double compton_m = 0.0;
    double tau_g_s = 0.0;
    double tau_qm_s = 0.0;
    double tau_light_s = 0.0;
    double e_grav_J = 0.0;
    double energy_scale_J = 0.0;

    // hbar l0 / (G m^2): the variant with the factor 2 dropped.
    double tau_g_no_factor2_s() const {
        return constants::hbar * size_m / (constants::G * mass_kg * mass_kg);
    }
    // m c^2 / hbar in units of c/l0, i.e. l0/lambda_C. Equals omega.
    double mass_natural() const { return size_m / compton_m; }
    // Seconds to units of l0/c.
    double to_natural_time(double t_s) const { return t_s / tau_light_s; }
    // m t in natural units for a time in seconds.
    double m_t(double t_s) const {
        return mass_kg * constants::c * constants::c * t_s / constants::hbar;
    }
};

inline PhysicalScales compute_scales(double mass_kg, double size_m, double separation_m = 0.0) {
    using namespace constants;
    if (!(mass_kg > 0.0) || !std::isfinite(mass_kg))
        throw std::domain_error("compute_scales: mass_kg must be positive, got " + std::to_string(mass_kg));
    if (!(size_m > 0.0) || !std::isfinite(size_m))
        throw std::domain_error("compute_scales: size_m must be positive, got " + std::to_string(size_m));
    if (!(separation_m >= 0.0))
        throw std::domain_error("compute_scales: separation_m must be non-negative");

    PhysicalScales s;
    s.mass_kg = mass_kg;
    s.size_m = size_m;
    s.separation_m = separation_m;
    s.energy_scale_J = mass_kg * c * c;
    s.xi = G * s.energy_scale_J / (size_m * c * c * c * c);
    s.compton_m = hbar / (mass_kg * c);
    s.e_grav_J = G * mass_kg * mass_kg / (2.0 * size_m);
    s.tau_g_s = 2.0 * hbar * size_m / (G * mass_kg * mass_kg);
    s.tau_qm_s = size_m * size_m / (s.compton_m * c);
    s.tau_light_s = size_m / c;
    return s;
}

struct RegimeThresholds {
    double eps_xi = 1e-2;
    double eps_static = 1e-2;
    double eps_time = 1e-2;
};

struct RegimeReport {
    bool xi_ok = true;
    bool static_ok = true;
    bool time_ok = true;
    double t_s = 0.0;
    double t_over_tau_g = 0.0;
    double t_over_tau_qm = 0.0;
    RegimeThresholds thresholds;
    std::vector<std::string> messages;

    bool ok() const { return xi_ok && static_ok && time_ok; }
};

inline RegimeReport check_regime(const PhysicalScales& s, double t_s, const RegimeThresholds& th = {}) {
    if (!(t_s >= 0.0)) throw std::domain_error("check_regime: t_s must be non-negative");
    RegimeReport r;
    r.t_s = t_s;
    r.thresholds = th;
    r.t_over_tau_g = t_s / s.tau_g_s;
    r.t_over_tau_qm = t_s / s.tau_qm_s;
    auto fmt = [](const char* what, double v, double eps) {
        std::ostringstream os;
        os.precision(3);
        os << what << " = " << v << " is not below " << eps;
        return os.str();
    };
    r.xi_ok = s.xi < th.eps_xi;
    if (!r.xi_ok) r.messages.push_back(fmt("xi", s.xi, th.eps_xi));
    const double ratio = s.compton_m / s.size_m;
    r.static_ok = ratio < th.eps_static;
    if (!r.static_ok) r.messages.push_back(fmt("lambda_C/l0", ratio, th.eps_static));
    const bool g_ok = r.t_over_tau_g < th.eps_time;
    const bool qm_ok = r.t_over_tau_qm < th.eps_time;
    r.time_ok = g_ok && qm_ok;
    if (!g_ok) r.messages.push_back(fmt("t/tau_G", r.t_over_tau_g, th.eps_time));
    if (!qm_ok) r.messages.push_back(fmt("t/tau_qm", r.t_over_tau_qm, th.eps_time));
    return r;
}

}  // namespace selfgrav
