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
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "selfgrav/gravsolver.hpp"
#include "selfgrav/scales.hpp"
#include "selfgrav/wavepacket.hpp"

namespace selfgrav::harness {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key = value scenario description. Units are part of the key names.
struct ScenarioConfig {
    double mass_kg = 1e-14;
    double size_m = 1e-6;
    double separation_l0 = 2.0;  // distance between the two packet centres, 2|L|/l0
    double alpha = 0.5;
    double beta = 0.5;
    std::string family = "gaussian_phase";
    double chirp = 0.1;
    double width_inv_l0 = 1.0;
    int grid_n = 64;
    double box_l0 = 0.0;  // 0 selects the default box for each separation
    double t_start_s = 0.0;
    double t_end_s = 1e-4;
    int t_steps = 11;
    std::string out_dir = "out";
    RegimeThresholds thresholds;
    std::vector<double> sweep_alpha;
    std::vector<double> sweep_beta;
    std::vector<double> sweep_separation_l0;

    std::vector<double> times() const {
        std::vector<double> t(t_steps);
        for (int i = 0; i < t_steps; ++i)
            t[i] = t_steps == 1 ? t_start_s : t_start_s + (t_end_s - t_start_s) * i / (t_steps - 1);
        return t;
    }
    std::vector<double> alphas() const { return sweep_alpha.empty() ? std::vector<double>{alpha} : sweep_alpha; }
    std::vector<double> betas() const { return sweep_beta.empty() ? std::vector<double>{beta} : sweep_beta; }
    std::vector<double> separations() const {
        return sweep_separation_l0.empty() ? std::vector<double>{separation_l0} : sweep_separation_l0;
    }

    GridSpec grid_for(double L_abs) const {
        if (box_l0 > 0.0) return GridSpec(grid_n, box_l0);
        return default_grid(L_abs, grid_n);
    }
    WavePacket packet_for(double separation) const {
        return make_packet(parse_family(family), width_inv_l0, {0.0, 0.0, 0.0}, {0.5 * separation, 0.0, 0.0}, chirp);
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double to_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
    }
    if (used != v.size() || !std::isfinite(x))
        throw ConfigError("config: '" + key + "' expects a finite number, got '" + v + "'");
    return x;
}

inline int to_int(const std::string& key, const std::string& v) {
    const double x = to_double(key, v);
    if (x != std::floor(x) || std::abs(x) > 1e9) throw ConfigError("config: '" + key + "' expects an integer");
    return static_cast<int>(x);
}

inline std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    if (trim(v).empty()) return out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
    return out;
}

inline std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
    return s;
}

}  // namespace detail

inline ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig c;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        std::string val = detail::trim(line.substr(eq + 1));
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"') val = val.substr(1, val.size() - 2);
        if (!seen.insert(key).second) throw ConfigError("config: duplicate key '" + key + "'");
        using namespace detail;
        if (key == "mass_kg") c.mass_kg = to_double(key, val);
        else if (key == "size_m") c.size_m = to_double(key, val);
        else if (key == "separation_l0") c.separation_l0 = to_double(key, val);
        else if (key == "alpha") c.alpha = to_double(key, val);
        else if (key == "beta") c.beta = to_double(key, val);
        else if (key == "family") c.family = val;
        else if (key == "chirp") c.chirp = to_double(key, val);
        else if (key == "width_inv_l0") c.width_inv_l0 = to_double(key, val);
        else if (key == "grid_n") c.grid_n = to_int(key, val);
        else if (key == "box_l0") c.box_l0 = to_double(key, val);
        else if (key == "t_start_s") c.t_start_s = to_double(key, val);
        else if (key == "t_end_s") c.t_end_s = to_double(key, val);
        else if (key == "t_steps") c.t_steps = to_int(key, val);
        else if (key == "out_dir") c.out_dir = val;
        else if (key == "eps_xi") c.thresholds.eps_xi = to_double(key, val);
        else if (key == "eps_static") c.thresholds.eps_static = to_double(key, val);
        else if (key == "eps_time") c.thresholds.eps_time = to_double(key, val);
        else if (key == "sweep_alpha") c.sweep_alpha = to_list(key, val);
        else if (key == "sweep_beta") c.sweep_beta = to_list(key, val);
        else if (key == "sweep_separation_l0") c.sweep_separation_l0 = to_list(key, val);
        else throw ConfigError("config: unknown key '" + key + "'");
    }
    return c;
}

inline ScenarioConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

// Canonical form: every key, fixed order, full precision.
inline std::string emit_config(const ScenarioConfig& c) {
    using detail::num;
    std::ostringstream o;
    o << "mass_kg = " << num(c.mass_kg) << "\n"
      << "size_m = " << num(c.size_m) << "\n"
      << "separation_l0 = " << num(c.separation_l0) << "\n"
      << "alpha = " << num(c.alpha) << "\n"
      << "beta = " << num(c.beta) << "\n"
      << "family = " << c.family << "\n"
      << "chirp = " << num(c.chirp) << "\n"
      << "width_inv_l0 = " << num(c.width_inv_l0) << "\n"
      << "grid_n = " << c.grid_n << "\n"
      << "box_l0 = " << num(c.box_l0) << "\n"
      << "t_start_s = " << num(c.t_start_s) << "\n"
      << "t_end_s = " << num(c.t_end_s) << "\n"
      << "t_steps = " << c.t_steps << "\n"
      << "out_dir = " << c.out_dir << "\n"
      << "eps_xi = " << num(c.thresholds.eps_xi) << "\n"
      << "eps_static = " << num(c.thresholds.eps_static) << "\n"
      << "eps_time = " << num(c.thresholds.eps_time) << "\n"
      << "sweep_alpha = " << detail::list(c.sweep_alpha) << "\n"
      << "sweep_beta = " << detail::list(c.sweep_beta) << "\n"
      << "sweep_separation_l0 = " << detail::list(c.sweep_separation_l0) << "\n";
    return o.str();
}

// Throws ConfigError on the first violated constraint; nothing is computed before this passes.
inline void validate_config(const ScenarioConfig& c) {
    auto fail = [](const std::string& m) { throw ConfigError("config: " + m); };
    if (!(c.mass_kg > 0.0)) fail("mass_kg must be positive");
    if (!(c.size_m > 0.0)) fail("size_m must be positive");
    if (!(c.width_inv_l0 > 0.0)) fail("width_inv_l0 must be positive");
    try {
        parse_family(c.family);
    } catch (const std::domain_error& e) {
        fail(e.what());
    }
    if (c.grid_n < 32 || (c.grid_n & (c.grid_n - 1)) != 0) fail("grid_n must be a power of two >= 32");
    if (c.box_l0 < 0.0) fail("box_l0 must be >= 0 (0 selects the default)");
    if (!(c.t_start_s >= 0.0)) fail("t_start_s must be >= 0");
    if (!(c.t_end_s >= c.t_start_s)) fail("t_end_s must be >= t_start_s");
    if (c.t_steps < 1) fail("t_steps must be >= 1");
    if (!(c.thresholds.eps_xi > 0.0 && c.thresholds.eps_static > 0.0 && c.thresholds.eps_time > 0.0))
        fail("thresholds must be positive");
    for (double s : c.separations()) {
        if (!(s >= 0.0)) fail("separation_l0 must be >= 0");
        if (c.box_l0 > 0.0) {
            try {
                require_coverage(c.packet_for(s), c.grid_for(0.5 * s), "grid");
            } catch (const std::domain_error& e) {
                fail(e.what());
            }
        }
    }
    for (double a : c.alphas())
        for (double b : c.betas()) {
            try {
                validate_state(a, b);
            } catch (const std::domain_error& e) {
                fail(e.what());
            }
        }
}

}  // namespace selfgrav::harness
