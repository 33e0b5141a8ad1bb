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
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace selfgrav {

using CMatrix = Eigen::MatrixXcd;

// Occupation pairs (n_L, n_R) with n_L + n_R <= n_max, ordered by total number, then n_L.
class FockBasis {
  public:
    explicit FockBasis(int n_max = 3) : n_max_(n_max) {
        if (n_max < 0) throw std::domain_error("FockBasis: n_max must be non-negative");
        for (int N = 0; N <= n_max; ++N)
            for (int l = 0; l <= N; ++l) {
                index_[{l, N - l}] = static_cast<int>(states_.size());
                states_.push_back({l, N - l});
            }
    }

    int n_max() const { return n_max_; }
    int dim() const { return static_cast<int>(states_.size()); }
    const std::pair<int, int>& state(int i) const { return states_.at(i); }
    bool contains(int nL, int nR) const { return index_.count({nL, nR}) != 0; }
    int index(int nL, int nR) const {
        auto it = index_.find({nL, nR});
        if (it == index_.end())
            throw std::out_of_range("FockBasis: |" + std::to_string(nL) + std::to_string(nR) + "> not in basis");
        return it->second;
    }
    std::string label(int i) const {
        return "|" + std::to_string(states_[i].first) + std::to_string(states_[i].second) + ">";
    }

    // Annihilator on mode 0 (L) or 1 (R).
    CMatrix annihilator(int mode) const {
        CMatrix a = CMatrix::Zero(dim(), dim());
        for (int i = 0; i < dim(); ++i) {
            auto [l, r] = states_[i];
            const int n = mode == 0 ? l : r;
            if (n == 0) continue;
            const int j = mode == 0 ? index(l - 1, r) : index(l, r - 1);
            a(j, i) = std::sqrt(double(n));
        }
        return a;
    }
    CMatrix number(int mode) const {
        CMatrix n = CMatrix::Zero(dim(), dim());
        for (int i = 0; i < dim(); ++i) n(i, i) = mode == 0 ? states_[i].first : states_[i].second;
        return n;
    }

    friend bool operator==(const FockBasis& a, const FockBasis& b) { return a.n_max_ == b.n_max_; }

  private:
    int n_max_;
    std::vector<std::pair<int, int>> states_;
    std::map<std::pair<int, int>, int> index_;
};

// Single-mode operators on occupations 0..n_max.
inline CMatrix single_mode_annihilator(int n_max) {
    CMatrix a = CMatrix::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

}  // namespace selfgrav
