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
#include <string>
#include <vector>

namespace selfgrav {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

// Uniform cubic grid centred on the origin: x_a = (a - n/2) dx, a = 0..n-1.
// The reciprocal grid is k_b = (b - n/2) dk with dk = 2 pi / box.
struct GridSpec {
    int n = 64;
    double box_l0 = 16.0;

    GridSpec() = default;
    GridSpec(int n_, double box_) : n(n_), box_l0(box_) { validate(); }

    void validate() const {
        if (n < 32 || (n & (n - 1)) != 0)
            throw std::domain_error("GridSpec: n must be a power of two >= 32, got " + std::to_string(n));
        if (!(box_l0 > 0.0) || !std::isfinite(box_l0))
            throw std::domain_error("GridSpec: box_l0 must be positive");
    }

    double dx() const { return box_l0 / n; }
    double dk() const { return 2.0 * 3.14159265358979323846 / box_l0; }
    double x(int a) const { return (a - n / 2) * dx(); }
    double k(int b) const { return (b - n / 2) * dk(); }
    // Largest |x| covered symmetrically about the origin.
    double half_extent() const { return 0.5 * box_l0 - dx(); }
    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n + j) * n + k;
    }

    friend bool operator==(const GridSpec& a, const GridSpec& b) {
        return a.n == b.n && a.box_l0 == b.box_l0;
    }
    friend bool operator<(const GridSpec& a, const GridSpec& b) {
        return a.n != b.n ? a.n < b.n : a.box_l0 < b.box_l0;
    }
};

// Smallest grid that holds a packet pair at +-L with an 8 l0 margin.
inline GridSpec default_grid(double L_abs, int n = 64) {
    double box = 2.0 * (std::ceil(L_abs) + 8.0);
    GridSpec g;
    g.n = n;
    g.box_l0 = box;
    // keep the margin after the one-cell asymmetry of an even grid
    while (g.half_extent() < L_abs + 8.0) g.box_l0 += 2.0;
    g.validate();
    return g;
}

struct ScalarGridField {
    GridSpec spec;
    std::vector<cplx> values;
    std::string unit;

    ScalarGridField() = default;
    ScalarGridField(const GridSpec& g, std::string u = "")
        : spec(g), values(g.size(), cplx(0.0, 0.0)), unit(std::move(u)) {}

    cplx& operator()(int i, int j, int k) { return values[spec.index(i, j, k)]; }
    const cplx& operator()(int i, int j, int k) const { return values[spec.index(i, j, k)]; }

    bool finite() const {
        for (const auto& v : values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }
    // Riemann sum of the samples times dx^3.
    cplx integral() const {
        cplx s = 0.0;
        for (const auto& v : values) s += v;
        const double h = spec.dx();
        return s * (h * h * h);
    }
    double max_abs() const {
        double m = 0.0;
        for (const auto& v : values) m = std::max(m, std::abs(v));
        return m;
    }
};

inline void require_same_grid(const ScalarGridField& a, const ScalarGridField& b, const char* who) {
    if (!(a.spec == b.spec)) throw std::domain_error(std::string(who) + ": grid mismatch");
}

// sum conj(a) b dx^3
inline cplx inner(const ScalarGridField& a, const ScalarGridField& b) {
    require_same_grid(a, b, "inner");
    cplx s = 0.0;
    for (std::size_t q = 0; q < a.values.size(); ++q) s += std::conj(a.values[q]) * b.values[q];
    const double h = a.spec.dx();
    return s * (h * h * h);
}

}  // namespace selfgrav
