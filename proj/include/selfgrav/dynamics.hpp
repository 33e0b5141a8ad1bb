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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "selfgrav/coupling.hpp"
#include "selfgrav/fock.hpp"
#include "selfgrav/gravsolver.hpp"

namespace selfgrav {

// rho = rho0 + xi rho1 over the two-mode basis. rho1 is the first-order correction with
// xi factored out, so xi^2 terms never appear.
struct TwoModeState {
    FockBasis basis{3};
    CMatrix rho0;
    CMatrix rho1;
    double alpha = 0.5;
    double beta = 0.5;
    double xi = 0.0;
    double t = 0.0;
    cplx kA_plus_rate{0.0, 0.0};  // dK^(A,+)/dt of the last evolution, for the Lindblad rates

    CMatrix rho() const { return rho0 + xi * rho1; }
    int dim() const { return basis.dim(); }

    double trace_error() const { return std::abs(rho().trace() - cplx(1.0)); }
    double hermiticity_error() const {
        const CMatrix r = rho();
        return (r - r.adjoint()).cwiseAbs().maxCoeff();
    }

    // rho = alpha |01><01| + (1-alpha) |10><10| + beta (|10><01| + |01><10|)
    static TwoModeState initial(double alpha, double beta, double xi, int n_max = 3) {
        validate_state(alpha, beta);
        if (!std::isfinite(xi) || xi < 0.0) throw std::domain_error("TwoModeState: xi must be finite and >= 0");
        TwoModeState s;
        s.basis = FockBasis(n_max);
        s.alpha = alpha;
        s.beta = beta;
        s.xi = xi;
        const int d = s.basis.dim();
        s.rho0 = CMatrix::Zero(d, d);
        s.rho1 = CMatrix::Zero(d, d);
        if (n_max >= 1) {
            const int r = s.basis.index(0, 1), l = s.basis.index(1, 0);
            s.rho0(r, r) = alpha;
            s.rho0(l, l) = 1.0 - alpha;
            s.rho0(l, r) = beta;
            s.rho0(r, l) = beta;
        }
        return s;
    }
};

namespace detail {

struct Group {
    double lambda;
    Eigen::MatrixXcd vectors;
};

// Eigenvalues of rho0 grouped by degeneracy.
inline std::vector<Group> degenerate_groups(const CMatrix& rho0, double tol = 1e-10) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho0);
    const auto& ev = es.eigenvalues();
    const auto& V = es.eigenvectors();
    std::vector<Group> out;
    int start = 0;
    for (int i = 1; i <= ev.size(); ++i) {
        if (i == ev.size() || std::abs(ev[i] - ev[start]) > tol) {
            Group g;
            g.lambda = ev.segment(start, i - start).mean();
            g.vectors = V.middleCols(start, i - start);
            out.push_back(std::move(g));
            start = i;
        }
    }
    return out;
}

// First-order eigenvalues lambda_i + xi mu_i, mu_i the eigenvalues of rho1 projected on each
// degenerate eigenspace of rho0.
inline std::vector<double> first_order_spectrum(const CMatrix& rho0, const CMatrix& rho1, double xi) {
    std::vector<double> out;
    for (const auto& g : degenerate_groups(rho0)) {
        const CMatrix block = g.vectors.adjoint() * rho1 * g.vectors;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (block + block.adjoint()));
        for (int i = 0; i < es.eigenvalues().size(); ++i) out.push_back(g.lambda + xi * es.eigenvalues()[i]);
    }
    return out;
}

}  // namespace detail

inline std::vector<double> first_order_spectrum(const TwoModeState& s) {
    return detail::first_order_spectrum(s.rho0, s.rho1, s.xi);
}

// rho_S(t) from the first-order closed form.
inline TwoModeState evolve_main(const TwoModeState& state0, const CouplingValues& k) {
    if (state0.basis.n_max() < 3)
        throw std::domain_error("evolve_main: truncation n_max = " + std::to_string(state0.basis.n_max()) +
                                " cannot hold |03>, |30>, |21>, |12>; need n_max >= 3");
    TwoModeState s = state0;
    const double a = s.alpha, b = s.beta;
    const FockBasis& B = s.basis;
    const int i01 = B.index(0, 1), i10 = B.index(1, 0), i21 = B.index(2, 1), i12 = B.index(1, 2),
              i03 = B.index(0, 3), i30 = B.index(3, 0);
    const cplx I(0.0, 1.0);
    const double r2 = std::sqrt(2.0), r6 = std::sqrt(6.0);
    const cplx KA = k.kA_plus, Kpp = k.kB_plus_p, Kpm = std::conj(k.kB_plus_m), Km = k.kB_minus;

    CMatrix& r = s.rho1;
    r.setZero();
    r(i01, i01) += 2.0 * b * KA.imag();
    r(i10, i10) -= 2.0 * b * KA.imag();
    auto block = [&r](int i, int j, cplx c) {
        r(i, j) += c;
        r(j, i) += std::conj(c);
    };
    block(i01, i10, -(1.0 - 2.0 * a) * I * KA);
    block(i01, i21, r2 * I * (a * Kpp + 2.0 * b * Km));
    block(i01, i12, r2 * I * (2.0 * a * Km + b * Kpm));
    block(i10, i21, r2 * I * (2.0 * (1.0 - a) * Km + b * Kpp));
    block(i10, i12, r2 * I * ((1.0 - a) * Kpm + 2.0 * b * Km));
    block(i01, i03, r6 * I * a * Kpm);
    block(i01, i30, r6 * I * b * Kpp);
    block(i10, i03, r6 * I * b * Kpm);
    block(i10, i30, r6 * I * (1.0 - a) * Kpp);
    s.t = k.t;
    return s;
}

inline TwoModeState evolve_main(const TwoModeState& state0, const CouplingSet& coup, double t) {
    TwoModeState s = evolve_main(state0, coup.at(t));
    s.kA_plus_rate = coup.rate(t).kA_plus;
    return s;
}

// Reference construction: rho0 + i xi [rho0, H] with
//   H = K^(A,+) a_R^+ a_L + h.c. + K^(A,-) (n_L + n_R)
//     + [K^(B,+)_+ a_L^2 + 2 K^(B,-) a_L a_R + conj(K^(B,+)_-) a_R^2] + h.c.
// assembled from ladder-operator matrices.
inline CMatrix interaction_hamiltonian(const CouplingValues& k, const FockBasis& basis) {
    const CMatrix aL = basis.annihilator(0), aR = basis.annihilator(1);
    const CMatrix bs = k.kA_plus * aR.adjoint() * aL;
    const CMatrix sq = k.kB_plus_p * aL * aL + 2.0 * k.kB_minus * aL * aR + std::conj(k.kB_plus_m) * aR * aR;
    return bs + bs.adjoint() + k.kA_minus * (basis.number(0) + basis.number(1)) + sq + sq.adjoint();
}

inline TwoModeState commutator_evolution(const TwoModeState& state0, const CouplingValues& k) {
    TwoModeState s = state0;
    const CMatrix H = interaction_hamiltonian(k, s.basis);
    s.rho1 = cplx(0.0, 1.0) * (s.rho0 * H - H * s.rho0);
    s.t = k.t;
    return s;
}

struct EffectiveFactor {
    std::string name;
    CMatrix generator;  // Hermitian; the factor is exp(-i generator)
    CMatrix unitary;
};

namespace detail {

inline CMatrix expm_hermitian(const CMatrix& G) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (G + G.adjoint()));
    const auto& V = es.eigenvectors();
    Eigen::VectorXcd ph(es.eigenvalues().size());
    for (int i = 0; i < ph.size(); ++i) ph[i] = std::polar(1.0, -es.eigenvalues()[i]);
    return V * ph.asDiagonal() * V.adjoint();
}

}  // namespace detail

// U_eff = U0 U_BS U_SMS,L U_SMS,R U_TMS. U0 = exp(-i omega t N) is leftmost, so the squeezing
// coefficients in the remaining factors carry the counter-rotating phase e^{-2 i omega t}.
// Every generator is built from the same K coefficients as evolve_main, so the first-order
// expansion of U_eff rho(0) U_eff^dagger reproduces it. The K^(A,-) number term is omitted:
// it commutes with every state of the single-excitation sector.
inline std::vector<EffectiveFactor> effective_unitary(const CouplingValues& k, double xi, const FockBasis& basis) {
    const CMatrix aL = basis.annihilator(0), aR = basis.annihilator(1);
    const CMatrix N = basis.number(0) + basis.number(1);
    const double theta = OscillatoryTerm::reduced_phase(k.omega * k.t);
    const cplx rot = std::polar(1.0, -2.0 * theta);
    auto herm = [](const CMatrix& X) { return CMatrix(X + X.adjoint()); };

    std::vector<EffectiveFactor> f(5);
    f[0].name = "free";
    f[0].generator = theta * N;
    f[1].name = "beam_splitter";
    f[1].generator = xi * herm(k.kA_plus * aR.adjoint() * aL);
    f[2].name = "single_mode_squeeze_L";
    f[2].generator = xi * herm(k.kB_plus_p * rot * aL * aL);
    f[3].name = "single_mode_squeeze_R";
    f[3].generator = xi * herm(std::conj(k.kB_plus_m) * rot * aR * aR);
    f[4].name = "two_mode_squeeze";
    f[4].generator = xi * herm(2.0 * k.kB_minus * rot * aL * aR);
    for (auto& x : f) x.unitary = detail::expm_hermitian(x.generator);
    return f;
}

inline std::vector<EffectiveFactor> effective_unitary(const CouplingSet& coup, double t, double xi,
                                                      const FockBasis& basis = FockBasis(3)) {
    return effective_unitary(coup.at(t), xi, basis);
}

inline CMatrix product(const std::vector<EffectiveFactor>& factors) {
    CMatrix U = CMatrix::Identity(factors.at(0).unitary.rows(), factors.at(0).unitary.cols());
    for (const auto& f : factors) U = U * f.unitary;
    return U;
}

enum class Side { L, R };

inline std::string to_string(Side s) { return s == Side::L ? "L" : "R"; }

struct ReducedState {
    Side side = Side::L;
    CMatrix rho0;
    CMatrix rho1;
    double xi = 0.0;
    double t = 0.0;
    double alpha = 0.5, beta = 0.5;
    // Lindblad rate multiplying D[a_Q]; signed (negative for R when Im K^(A,+) grows).
    double kappa = 0.0;
    // kappa t, the integrated weight
    double kappa_integrated = 0.0;
    bool kappa_defined = true;

    CMatrix rho() const { return rho0 + xi * rho1; }
    double trace_error() const { return std::abs(rho().trace() - cplx(1.0)); }
};

inline ReducedState reduce(const TwoModeState& s, Side side) {
    const int n = s.basis.n_max();
    ReducedState r;
    r.side = side;
    r.xi = s.xi;
    r.t = s.t;
    r.alpha = s.alpha;
    r.beta = s.beta;
    r.rho0 = CMatrix::Zero(n + 1, n + 1);
    r.rho1 = CMatrix::Zero(n + 1, n + 1);
    for (int i = 0; i < s.dim(); ++i)
        for (int j = 0; j < s.dim(); ++j) {
            auto [li, ri] = s.basis.state(i);
            auto [lj, rj] = s.basis.state(j);
            if (side == Side::L && ri == rj) {
                r.rho0(li, lj) += s.rho0(i, j);
                r.rho1(li, lj) += s.rho1(i, j);
            } else if (side == Side::R && li == lj) {
                r.rho0(ri, rj) += s.rho0(i, j);
                r.rho1(ri, rj) += s.rho1(i, j);
            }
        }
    // d p_1/dt = -kappa p_1 must reproduce -+2 xi beta Im dK^(A,+)/dt
    const double drive = 2.0 * s.xi * s.beta * s.kA_plus_rate.imag();
    const double p1 = side == Side::L ? 1.0 - s.alpha : s.alpha;
    if (p1 == 0.0) {
        r.kappa = 0.0;
        r.kappa_defined = false;
    } else {
        r.kappa = side == Side::L ? drive / p1 : -drive / p1;
    }
    r.kappa_integrated = r.kappa * s.t;
    return r;
}

// Single-mode Hamiltonian H_Q generating the coherent part of the reduced dynamics:
//   H_L = dK^(B,+)_+/dt a^2 + (2 beta/alpha) dK^(B,-)/dt (1 - n) a^2 + h.c.
//   H_R = conj(dK^(B,+)_-/dt) a^2 + (2 beta/(1-alpha)) dK^(B,-)/dt (1 - n) a^2 + h.c.
// Free rotation omega n is left out; it commutes with the diagonal rho_Q(0).
inline CMatrix reduced_hamiltonian(Side side, const CouplingValues& rate, double alpha, double beta, int n_max = 3) {
    const CMatrix a = single_mode_annihilator(n_max);
    const CMatrix one = CMatrix::Identity(n_max + 1, n_max + 1);
    CMatrix n = a.adjoint() * a;
    const double p0 = side == Side::L ? alpha : 1.0 - alpha;
    const cplx g = side == Side::L ? rate.kB_plus_p : std::conj(rate.kB_plus_m);
    const cplx c = p0 == 0.0 ? cplx(0.0) : 2.0 * beta / p0 * rate.kB_minus;
    const CMatrix X = g * a * a + c * (one - n) * a * a;
    return X + X.adjoint();
}

// d rho_Q/dt = -i xi [H_Q, rho_Q] + kappa (a rho a^dagger - {a^dagger a, rho}/2), evaluated on rho_Q(0)
// as is consistent at first order.
inline CMatrix lindblad_rhs(const ReducedState& red, const CMatrix& H) {
    const int d = static_cast<int>(red.rho0.rows());
    const CMatrix a = single_mode_annihilator(d - 1);
    const CMatrix& r = red.rho0;
    const cplx I(0.0, 1.0);
    const CMatrix ad = a.adjoint();
    const CMatrix coherent = -I * red.xi * (H * r - r * H);
    const CMatrix dissipator = a * r * ad - 0.5 * (ad * a * r + r * ad * a);
    return coherent + red.kappa * dissipator;
}

inline CMatrix dissipator(const ReducedState& red) {
    const int d = static_cast<int>(red.rho0.rows());
    const CMatrix a = single_mode_annihilator(d - 1);
    const CMatrix ad = a.adjoint();
    return red.kappa * (a * red.rho0 * ad - 0.5 * (ad * a * red.rho0 + red.rho0 * ad * a));
}

struct Probabilities {
    double p_L = 0.0;
    double p_R = 0.0;
    double p_other = 0.0;  // population outside |10>, |01>
};

inline Probabilities probabilities(const TwoModeState& s) {
    const CMatrix r = s.rho();
    Probabilities p;
    const int l = s.basis.index(1, 0), rr = s.basis.index(0, 1);
    p.p_L = r(l, l).real();
    p.p_R = r(rr, rr).real();
    for (int i = 0; i < s.dim(); ++i)
        if (i != l && i != rr) p.p_other += r(i, i).real();
    return p;
}

struct PurityEntropy {
    double gamma = 0.0;
    double delta_S = 0.0;
    // closed forms in terms of m t xi K (= xi Im K^(A,+)):
    //   gamma = alpha^2 + (1-alpha)^2 - 4 (1 - 2 alpha) beta m t xi K
    //   Delta S_L = 2 beta m t xi K ln((1-alpha)/alpha), Delta S_R = -Delta S_L
    double gamma_closed_form = 0.0;
    double delta_S_closed_form = 0.0;
    bool entropy_singular = false;
};

// Tr(rho^2) and S(t) - S(0), both to first order in xi.
inline PurityEntropy purity_entropy(const ReducedState& red, double alpha, double beta, double m_t_xi_kappa) {
    PurityEntropy out;
    out.gamma = (red.rho0 * red.rho0).trace().real() + 2.0 * red.xi * (red.rho0 * red.rho1).trace().real();
    double dS = 0.0;
    for (const auto& g : detail::degenerate_groups(red.rho0)) {
        const double shift = (g.vectors.adjoint() * red.rho1 * g.vectors).trace().real();
        if (g.lambda > 1e-14) {
            dS -= red.xi * shift * (std::log(g.lambda) + 1.0);
        } else if (std::abs(shift) > 1e-12 * (1.0 + red.rho1.cwiseAbs().maxCoeff())) {
            out.entropy_singular = true;
        }
    }
    out.delta_S = dS;
    out.gamma_closed_form = alpha * alpha + (1.0 - alpha) * (1.0 - alpha) - 4.0 * (1.0 - 2.0 * alpha) * beta * m_t_xi_kappa;
    const double ln = (alpha > 0.0 && alpha < 1.0) ? std::log((1.0 - alpha) / alpha) : 0.0;
    const double dSL = 2.0 * beta * m_t_xi_kappa * ln;
    out.delta_S_closed_form = red.side == Side::L ? dSL : -dSL;
    return out;
}

// Purity of the full two-mode state to first order.
inline double purity(const TwoModeState& s) {
    return (s.rho0 * s.rho0).trace().real() + 2.0 * s.xi * (s.rho0 * s.rho1).trace().real();
}

}  // namespace selfgrav
