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

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "selfgrav/grid.hpp"

namespace selfgrav::fft {

// The FFTW planner is not thread-safe; execution on distinct arrays is.
inline std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class Plan {
  public:
    Plan() = default;
    explicit Plan(fftw_plan p) : p_(p) {
        if (!p_) throw std::runtime_error("fftw: plan creation failed");
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    Plan(Plan&& o) noexcept : p_(o.p_) { o.p_ = nullptr; }
    Plan& operator=(Plan&& o) noexcept {
        std::swap(p_, o.p_);
        return *this;
    }
    ~Plan() {
        if (p_) {
            std::lock_guard<std::mutex> lock(planner_mutex());
            fftw_destroy_plan(p_);
        }
    }
    void execute() const { fftw_execute(p_); }

  private:
    fftw_plan p_ = nullptr;
};

inline fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

// In-place 3D complex transform. sign = FFTW_FORWARD (e^{-i}) or FFTW_BACKWARD (e^{+i}), unnormalized.
inline void c2c_3d(std::vector<std::complex<double>>& data, int n, int sign) {
    Plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = Plan(fftw_plan_dft_3d(n, n, n, as_fftw(data.data()), as_fftw(data.data()), sign, FFTW_ESTIMATE));
    }
    plan.execute();
}

// In-place 3D DST-I (RODFT00). Applying it twice multiplies by (2(n+1))^3.
inline void dst1_3d(std::vector<double>& data, int n) {
    Plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = Plan(fftw_plan_r2r_3d(n, n, n, data.data(), data.data(), FFTW_RODFT00, FFTW_RODFT00, FFTW_RODFT00,
                                     FFTW_ESTIMATE));
    }
    plan.execute();
}

inline void r2c_3d(std::vector<double>& in, std::vector<std::complex<double>>& out, int n) {
    Plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = Plan(fftw_plan_dft_r2c_3d(n, n, n, in.data(), as_fftw(out.data()), FFTW_ESTIMATE));
    }
    plan.execute();
}

inline void c2r_3d(std::vector<std::complex<double>>& in, std::vector<double>& out, int n) {
    Plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = Plan(fftw_plan_dft_c2r_3d(n, n, n, as_fftw(in.data()), out.data(), FFTW_ESTIMATE));
    }
    plan.execute();
}

// Centred-grid transforms. With n/2 even, e^{i k_b x_a} = (-1)^{a+b} e^{2 pi i ab/n}.
// to_position: f(x_a) = (2 pi)^{-3/2} sum_b F(k_b) e^{i k_b . x_a} dk^3
// to_momentum: F(k_b) = (2 pi)^{-3/2} sum_a f(x_a) e^{-i k_b . x_a} dx^3
inline void checkerboard(std::vector<std::complex<double>>& v, int n) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if ((i + j + k) & 1) v[(static_cast<std::size_t>(i) * n + j) * n + k] *= -1.0;
}

inline void to_position(std::vector<std::complex<double>>& v, const GridSpec& g) {
    const int n = g.n;
    checkerboard(v, n);
    c2c_3d(v, n, FFTW_BACKWARD);
    checkerboard(v, n);
    const double dk = g.dk();
    const double s = dk * dk * dk / std::pow(2.0 * 3.14159265358979323846, 1.5);
    for (auto& x : v) x *= s;
}

inline void to_momentum(std::vector<std::complex<double>>& v, const GridSpec& g) {
    const int n = g.n;
    checkerboard(v, n);
    c2c_3d(v, n, FFTW_FORWARD);
    checkerboard(v, n);
    const double dx = g.dx();
    const double s = dx * dx * dx / std::pow(2.0 * 3.14159265358979323846, 1.5);
    for (auto& x : v) x *= s;
}

}  // namespace selfgrav::fft
