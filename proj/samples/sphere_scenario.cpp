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

// Sphere scenario end to end: scales, metric, coupling, then p_L(t) and the reduced purities.

#include <cstdio>

#include "selfgrav/coupling.hpp"
#include "selfgrav/dynamics.hpp"
#include "selfgrav/gravsolver.hpp"
#include "selfgrav/scales.hpp"
#include "selfgrav/wavepacket.hpp"

int main() {
    using namespace selfgrav;
    const double l0 = 1e-6;
    const PhysicalScales s = compute_scales(1e-14, l0, 2.0 * l0);
    std::printf("xi = %.4e  lambda_C = %.4e m  tau_G = %.4e s\n", s.xi, s.compton_m, s.tau_g_s);

    const WavePacket p = make_packet(PacketFamily::gaussian_phase, 1.0, {0, 0, 0}, {1, 0, 0}, 0.1);
    const double alpha = 0.5, beta = 0.5;
    const MetricPerturbation m = solve_metric(p, alpha, beta, default_grid(p.L_abs()));
    const CouplingSet c = compute_coupling_set(p, m, s.mass_natural());
    std::printf("K^(A,+)/(m t) = %.6f %+.6fi\n", c.kA_plus.real(), c.kA_plus.imag());

    const TwoModeState rho0 = TwoModeState::initial(alpha, beta, s.xi);
    for (double t_s : {0.0, 1e-4, 2e-4, 3e-4}) {
        const TwoModeState rho = evolve_main(rho0, c, s.to_natural_time(t_s));
        const Probabilities pr = probabilities(rho);
        const double mtxk = s.xi * c.at(s.to_natural_time(t_s)).kA_plus.imag();
        const PurityEntropy pe = purity_entropy(reduce(rho, Side::L), alpha, beta, mtxk);
        std::printf("t = %.1e s  p_L = %.12f  p_R = %.12f  gamma_L = %.12f\n", t_s, pr.p_L, pr.p_R, pe.gamma);
    }
    return 0;
}
