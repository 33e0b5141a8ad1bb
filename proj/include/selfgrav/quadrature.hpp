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

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

namespace selfgrav::quad {

inline constexpr unsigned gl_points = 20;

// Gauss-Legendre on [a, b] split into panels no wider than `panel`.
template <class F>
auto composite_gl(F&& f, double a, double b, double panel) {
    using R = decltype(f(a));
    R total{};
    if (!(b > a)) return total;
    const int m = std::max(1, static_cast<int>(std::ceil((b - a) / panel)));
    const double w = (b - a) / m;
    for (int i = 0; i < m; ++i) {
        const double lo = a + i * w;
        total += boost::math::quadrature::gauss<double, gl_points>::integrate(f, lo, lo + w);
    }
    return total;
}

}  // namespace selfgrav::quad
