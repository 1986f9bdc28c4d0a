/*
   Copyright 2026 the drinfeld authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Dense Gaussian elimination over an abstract field object. Matrices here
// are small (F_q coordinates of torsion spaces), row-major
// vector-of-vectors is plenty.

#ifndef DRINFELD_LINALG_HPP
#define DRINFELD_LINALG_HPP

#include <cstddef>
#include <vector>

#include "drinfeld/errors.hpp"

namespace drinfeld {

template <class K>
using Matrix = std::vector<std::vector<typename K::Elem>>;

// Reduced row echelon form in place; returns pivot column indices.
template <class K>
std::vector<std::size_t> rref(const K& k, Matrix<K>& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && k.is_zero(m[sel][c])) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[r]);
        auto inv = k.inv(m[r][c]);
        for (auto& x : m[r]) x = k.mul(x, inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || k.is_zero(m[i][c])) continue;
            auto f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                m[i][j] = k.sub(m[i][j], k.mul(f, m[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class K>
std::size_t matrix_rank(const K& k, Matrix<K> m) {
    return rref(k, m).size();
}

// Kernel basis of the linear map x -> M x (columns index the domain).
template <class K>
std::vector<std::vector<typename K::Elem>> kernel_basis(const K& k, Matrix<K> m) {
    if (m.empty()) return {};
    const std::size_t cols = m[0].size();
    auto pivots = rref(k, m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<typename K::Elem>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<typename K::Elem> v(cols, k.zero());
        v[free] = k.one();
        for (std::size_t pi = 0; pi < pivots.size(); ++pi)
            v[pivots[pi]] = k.neg(m[pi][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace drinfeld

#endif  // DRINFELD_LINALG_HPP
