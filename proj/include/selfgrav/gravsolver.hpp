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
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "selfgrav/fft.hpp"
#include "selfgrav/grid.hpp"
#include "selfgrav/wavepacket.hpp"

namespace selfgrav {

inline void validate_state(double alpha, double beta) {
    if (!(alpha >= 0.0 && alpha <= 1.0) || !std::isfinite(alpha))
        throw std::domain_error("state constraint violated: 0 <= alpha <= 1 (alpha = " + std::to_string(alpha) + ")");
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw std::domain_error("state constraint violated: beta >= 0 (beta = " + std::to_string(beta) + ")");
    const double lhs = (alpha - 0.5) * (alpha - 0.5) + beta * beta;
    if (lhs > 0.25 + 1e-12)
        throw std::domain_error("state constraint violated: (alpha - 1/2)^2 + beta^2 <= 1/4 (lhs = " +
                                std::to_string(lhs) + ")");
}

// Largest admissible beta for a given alpha.
inline double beta_max(double alpha) { return std::sqrt(std::max(0.0, alpha * (1.0 - alpha))); }

// alpha |psi(x-L)|^2 + (1-alpha) |psi(x+L)|^2 + 2 beta Re[psi*(x-L) psi(x+L)], per unit mass.
inline ScalarGridField stress_energy_source(const WavePacket& p, double alpha, double beta, const GridSpec& g) {
    validate_state(alpha, beta);
    const ScalarGridField right = position_profile(p, +1, g);
    const ScalarGridField left = position_profile(p, -1, g);
    ScalarGridField s(g, "m l0^-3");
    for (std::size_t q = 0; q < s.values.size(); ++q) {
        const cplx r = right.values[q], l = left.values[q];
        s.values[q] = alpha * std::norm(r) + (1.0 - alpha) * std::norm(l) + 2.0 * beta * (std::conj(r) * l).real();
    }
    return s;
}

struct PoissonOptions {
    // Multiplies the -2/r Green's kernel; anything other than 1 is a deliberate fault.
    double kernel_scale = 1.0;
};

namespace detail {

// Mean of 1/|x| over the unit cube centred on the origin.
inline constexpr double cube_inverse_r_mean = 2.3800773639795535;

struct HockneyKernel {
    GridSpec spec;
    int m = 0;
    std::vector<cplx> transform;  // r2c of the padded kernel
};

inline std::shared_ptr<const HockneyKernel> hockney_kernel(const GridSpec& g, double scale) {
    static std::mutex mu;
    static std::map<std::pair<GridSpec, double>, std::shared_ptr<const HockneyKernel>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({g, scale});
        if (it != cache.end()) return it->second;
    }
    auto kern = std::make_shared<HockneyKernel>();
    const int n = g.n, m = 2 * n;
    const double h = g.dx();
    kern->spec = g;
    kern->m = m;
    std::vector<double> G(static_cast<std::size_t>(m) * m * m);
    for (int i = 0; i < m; ++i) {
        const int di = i <= n ? i : i - m;
        for (int j = 0; j < m; ++j) {
            const int dj = j <= n ? j : j - m;
            for (int k = 0; k < m; ++k) {
                const int dk = k <= n ? k : k - m;
                const double r = std::sqrt(double(di * di + dj * dj + dk * dk));
                const double inv = r == 0.0 ? cube_inverse_r_mean / h : 1.0 / (r * h);
                G[(static_cast<std::size_t>(i) * m + j) * m + k] = -2.0 * scale * inv;
            }
        }
    }
    kern->transform.assign(static_cast<std::size_t>(m) * m * (m / 2 + 1), cplx(0.0));
    fft::r2c_3d(G, kern->transform, m);
    std::shared_ptr<const HockneyKernel> out = kern;
    std::lock_guard<std::mutex> lock(mu);
    // keep the cache small: large padded kernels are hundreds of MB
    if (cache.size() >= 4) cache.clear();
    cache.emplace(std::make_pair(g, scale), out);
    return out;
}

// Free-space convolution h = -2 int rho(x')/|x - x'| d^3x' by zero padding.
inline std::vector<double> hockney_solve(const std::vector<double>& rho, const GridSpec& g, double scale) {
    auto kern = hockney_kernel(g, scale);
    const int n = g.n, m = kern->m;
    std::vector<double> pad(static_cast<std::size_t>(m) * m * m, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                pad[(static_cast<std::size_t>(i) * m + j) * m + k] = rho[g.index(i, j, k)];
    std::vector<cplx> spec(kern->transform.size());
    fft::r2c_3d(pad, spec, m);
    for (std::size_t q = 0; q < spec.size(); ++q) spec[q] *= kern->transform[q];
    fft::c2r_3d(spec, pad, m);
    const double h = g.dx();
    const double s = h * h * h / (double(m) * m * m);
    std::vector<double> out(g.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) out[g.index(i, j, k)] = pad[(static_cast<std::size_t>(i) * m + j) * m + k] * s;
    return out;
}

// 19-point compact Laplacian, (1/6h^2)(-24 u + 2 sum_faces + sum_edges), at an interior point.
inline double lap19(const std::vector<double>& u, const GridSpec& g, int i, int j, int k) {
    auto at = [&](int a, int b, int c) { return u[g.index(a, b, c)]; };
    const double faces = at(i - 1, j, k) + at(i + 1, j, k) + at(i, j - 1, k) + at(i, j + 1, k) + at(i, j, k - 1) +
                         at(i, j, k + 1);
    double edges = 0.0;
    for (int s1 = -1; s1 <= 1; s1 += 2)
        for (int s2 = -1; s2 <= 1; s2 += 2)
            edges += at(i + s1, j + s2, k) + at(i + s1, j, k + s2) + at(i, j + s1, k + s2);
    const double h = g.dx();
    return (-24.0 * at(i, j, k) + 2.0 * faces + edges) / (6.0 * h * h);
}

inline double lap7(const std::vector<double>& u, const GridSpec& g, int i, int j, int k) {
    auto at = [&](int a, int b, int c) { return u[g.index(a, b, c)]; };
    const double h = g.dx();
    return (at(i - 1, j, k) + at(i + 1, j, k) + at(i, j - 1, k) + at(i, j + 1, k) + at(i, j, k - 1) +
            at(i, j, k + 1) - 6.0 * at(i, j, k)) /
           (h * h);
}

// Right-hand side of the compact scheme: 8 pi (rho + h^2/12 lap7 rho).
inline double mehrstellen_rhs(const std::vector<double>& rho, const GridSpec& g, int i, int j, int k) {
    constexpr double pi = 3.14159265358979323846;
    const double h = g.dx();
    return 8.0 * pi * (rho[g.index(i, j, k)] + h * h / 12.0 * lap7(rho, g, i, j, k));
}

inline std::vector<double> real_part(const ScalarGridField& f) {
    std::vector<double> r(f.values.size());
    for (std::size_t q = 0; q < r.size(); ++q) r[q] = f.values[q].real();
    return r;
}

}  // namespace detail

// Solves lap h00 = 8 pi rho with h00 -> 0 at infinity. The free-space convolution supplies
// Dirichlet data on the outer faces; the interior is then solved with the fourth-order
// compact (19-point) scheme by a sine transform.
inline ScalarGridField solve_h00(const ScalarGridField& source, const PoissonOptions& opt = {}) {
    const GridSpec& g = source.spec;
    g.validate();
    if (!source.finite()) throw std::domain_error("solve_h00: source contains non-finite values");
    const int n = g.n, N = n - 2;
    const std::vector<double> rho = detail::real_part(source);
    const std::vector<double> free_space = detail::hockney_solve(rho, g, opt.kernel_scale);

    std::vector<double> w(g.size(), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (i == 0 || j == 0 || k == 0 || i == n - 1 || j == n - 1 || k == n - 1)
                    w[g.index(i, j, k)] = free_space[g.index(i, j, k)];

    auto iidx = [N](int i, int j, int k) { return (static_cast<std::size_t>(i) * N + j) * N + k; };
    std::vector<double> f(static_cast<std::size_t>(N) * N * N);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            for (int k = 1; k <= N; ++k)
                f[iidx(i - 1, j - 1, k - 1)] = detail::mehrstellen_rhs(rho, g, i, j, k) - detail::lap19(w, g, i, j, k);

    fft::dst1_3d(f, N);
    const double h = g.dx();
    constexpr double pi = 3.14159265358979323846;
    std::vector<double> lam(N);
    for (int j = 0; j < N; ++j) lam[j] = -(2.0 - 2.0 * std::cos(pi * (j + 1) / (N + 1))) / (h * h);
    const double c6 = h * h / 6.0;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < N; ++c) {
                const double la = lam[a], lb = lam[b], lc = lam[c];
                const double e = la + lb + lc + c6 * (la * lb + lb * lc + la * lc);
                f[iidx(a, b, c)] /= e;
            }
    fft::dst1_3d(f, N);
    const double norm = 1.0 / std::pow(2.0 * (N + 1), 3);

    ScalarGridField out(g, "1");
    for (std::size_t q = 0; q < w.size(); ++q) out.values[q] = w[q];
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            for (int k = 1; k <= N; ++k) out(i, j, k) = f[iidx(i - 1, j - 1, k - 1)] * norm;
    if (!out.finite()) throw std::runtime_error("solve_h00: solver produced non-finite values");
    return out;
}

// ||L19 h - 8 pi (rho + h^2/12 lap rho)|| / ||8 pi (rho + ...)|| over interior points: the
// discrete equation the solver satisfies.
inline double poisson_residual(const ScalarGridField& h00, const ScalarGridField& source) {
    require_same_grid(h00, source, "poisson_residual");
    const GridSpec& g = h00.spec;
    const auto h = detail::real_part(h00), rho = detail::real_part(source);
    double num = 0.0, den = 0.0;
    for (int i = 1; i < g.n - 1; ++i)
        for (int j = 1; j < g.n - 1; ++j)
            for (int k = 1; k < g.n - 1; ++k) {
                const double r = detail::mehrstellen_rhs(rho, g, i, j, k);
                const double d = detail::lap19(h, g, i, j, k) - r;
                num += d * d;
                den += r * r;
            }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

// Same with the plain 7-point Laplacian and unfiltered source; O(h^2) truncation, informational.
inline double poisson_residual_7pt(const ScalarGridField& h00, const ScalarGridField& source) {
    require_same_grid(h00, source, "poisson_residual_7pt");
    constexpr double pi = 3.14159265358979323846;
    const GridSpec& g = h00.spec;
    const auto h = detail::real_part(h00), rho = detail::real_part(source);
    double num = 0.0, den = 0.0;
    for (int i = 1; i < g.n - 1; ++i)
        for (int j = 1; j < g.n - 1; ++j)
            for (int k = 1; k < g.n - 1; ++k) {
                const double r = 8.0 * pi * rho[g.index(i, j, k)];
                const double d = detail::lap7(h, g, i, j, k) - r;
                num += d * d;
                den += r * r;
            }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

enum class Gauge { newtonian_isotropic };

// Identifies the state that sourced a metric.
struct SourceTag {
    double alpha = 0.0;
    double beta = 0.0;
    PacketFamily family = PacketFamily::gaussian;
    double width_inv_l0 = 1.0;
    double chirp = 0.0;
    Vec3 L_vec{0.0, 0.0, 0.0};

    static SourceTag of(const WavePacket& p, double alpha, double beta) {
        return SourceTag{alpha, beta, p.family, p.width_inv_l0, p.chirp, p.L_vec};
    }
    bool matches(const WavePacket& p) const {
        return family == p.family && width_inv_l0 == p.width_inv_l0 && chirp == p.chirp && L_vec == p.L_vec;
    }
};

// h_{0d} = 0 is implied and never stored.
struct MetricPerturbation {
    ScalarGridField h00;
    ScalarGridField h_spatial_trace;
    ScalarGridField trace_h;
    Gauge gauge = Gauge::newtonian_isotropic;
    std::optional<SourceTag> source;

    const GridSpec& grid() const { return h00.spec; }
};

// Isotropic ansatz h_bc = h00 delta_bc: h_j^j = 3 h00, h = -h00 + h_j^j = 2 h00.
inline MetricPerturbation assemble_metric(const ScalarGridField& h00, std::optional<SourceTag> tag = std::nullopt) {
    if (!h00.finite()) throw std::domain_error("assemble_metric: h00 contains non-finite values");
    MetricPerturbation m;
    m.h00 = h00;
    m.h_spatial_trace = ScalarGridField(h00.spec, h00.unit);
    m.trace_h = ScalarGridField(h00.spec, h00.unit);
    for (std::size_t q = 0; q < h00.values.size(); ++q) {
        m.h_spatial_trace.values[q] = 3.0 * h00.values[q];
        m.trace_h.values[q] = 2.0 * h00.values[q];
    }
    m.source = tag;
    return m;
}

inline MetricPerturbation solve_metric(const WavePacket& p, double alpha, double beta, const GridSpec& g,
                                       const PoissonOptions& opt = {}) {
    return assemble_metric(solve_h00(stress_energy_source(p, alpha, beta, g), opt), SourceTag::of(p, alpha, beta));
}

// max over interior points of |lap h_j^j - d_b d_c h_bc - 2 lap h00| / max |2 lap h00|,
// with every operator built from second differences of the stored fields.
inline double constraint_residual(const MetricPerturbation& m) {
    const GridSpec& g = m.grid();
    const auto hs = detail::real_part(m.h_spatial_trace), h0 = detail::real_part(m.h00);
    double worst = 0.0, scale = 0.0;
    for (int i = 1; i < g.n - 1; ++i)
        for (int j = 1; j < g.n - 1; ++j)
            for (int k = 1; k < g.n - 1; ++k) {
                const double lap_trace = detail::lap7(hs, g, i, j, k);
                // h_bc = h00 delta_bc, so d_b d_c h_bc reduces to the diagonal second differences of h00
                const double ddh = detail::lap7(h0, g, i, j, k);
                const double rhs = 2.0 * detail::lap7(h0, g, i, j, k);
                worst = std::max(worst, std::abs(lap_trace - ddh - rhs));
                scale = std::max(scale, std::abs(rhs));
            }
    return scale > 0.0 ? worst / scale : worst;
}

// Flat little-endian float64 dump in (i,j,k) row-major order plus a JSON sidecar.
inline void write_field_dump(const ScalarGridField& f, const std::string& stem) {
    {
        std::ofstream bin(stem + ".bin", std::ios::binary);
        if (!bin) throw std::runtime_error("cannot write " + stem + ".bin");
        for (const auto& v : f.values) {
            double x = v.real();
            unsigned char b[8];
            std::uint64_t u;
            static_assert(sizeof(u) == sizeof(x));
            std::memcpy(&u, &x, 8);
            for (int q = 0; q < 8; ++q) b[q] = static_cast<unsigned char>(u >> (8 * q));
            bin.write(reinterpret_cast<const char*>(b), 8);
        }
    }
    std::ofstream js(stem + ".json");
    if (!js) throw std::runtime_error("cannot write " + stem + ".json");
    std::ostringstream box;
    box.precision(17);
    box << f.spec.box_l0;
    js << "{\"n\": " << f.spec.n << ", \"box_l0\": " << box.str() << ", \"unit\": \"" << f.unit << "\"}\n";
}

inline ScalarGridField read_field_dump(const std::string& stem, const GridSpec& g) {
    std::ifstream bin(stem + ".bin", std::ios::binary);
    if (!bin) throw std::runtime_error("cannot read " + stem + ".bin");
    ScalarGridField f(g);
    for (auto& v : f.values) {
        unsigned char b[8];
        if (!bin.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("short field dump " + stem);
        std::uint64_t u = 0;
        for (int q = 0; q < 8; ++q) u |= std::uint64_t(b[q]) << (8 * q);
        double x;
        std::memcpy(&x, &u, 8);
        v = x;
    }
    return f;
}

}  // namespace selfgrav
