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

// Closed forms and brute-force references used only by the tests.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

// 1D gaussian amplitude in position space for momentum std s: (2 s^2/pi)^{1/4} e^{-s^2 x^2}
inline double gaussian_psi_1d(double x, double s) { return std::pow(2.0 * s * s / pi, 0.25) * std::exp(-s * s * x * x); }
inline double gaussian_dpsi_1d(double x, double s) { return -2.0 * s * s * x * gaussian_psi_1d(x, s); }
inline double gaussian_d2psi_1d(double x, double s) {
    return (4.0 * s * s * s * s * x * x - 2.0 * s * s) * gaussian_psi_1d(x, s);
}

// Simpson rule on [a, b] with an even number of intervals.
template <class F>
auto simpson(F&& f, double a, double b, int intervals) {
    if (intervals % 2) ++intervals;
    const double h = (b - a) / intervals;
    auto sum = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return sum * (h / 3.0);
}

// Massless overlap for an isotropic gaussian |F|^2 = (2 pi s^2)^{-3/2} e^{-k^2/(2 s^2)}:
// |int 4 pi k^2 |F|^2 e^{i k t} dk| by dense Simpson in k.
inline double massless_decay_radial(double t, double s = 1.0) {
    auto w = [&](double k) { return 4.0 * pi * k * k * std::pow(2.0 * pi * s * s, -1.5) * std::exp(-k * k / (2.0 * s * s)); };
    const double kmax = 14.0 * s;
    const int m = 400000;
    const cplx num = simpson([&](double k) { return cplx(w(k)) * std::polar(1.0, k * t); }, 0.0, kmax, m);
    const double den = simpson(w, 0.0, kmax, m);
    return std::abs(num) / den;
}

// Two-mode product space with occupations 0..3 per mode, built from Kronecker products.
struct ProductSpace {
    static constexpr int d = 4;
    Eigen::MatrixXcd a1, aL, aR, id1;

    ProductSpace() {
        a1 = Eigen::MatrixXcd::Zero(d, d);
        for (int n = 1; n < d; ++n) a1(n - 1, n) = std::sqrt(double(n));
        id1 = Eigen::MatrixXcd::Identity(d, d);
        aL = kron(a1, id1);
        aR = kron(id1, a1);
    }
    static Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
        Eigen::MatrixXcd K(A.rows() * B.rows(), A.cols() * B.cols());
        for (int i = 0; i < A.rows(); ++i)
            for (int j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
        return K;
    }
    static int idx(int nL, int nR) { return nL * d + nR; }
};

}  // namespace oracle
