/*
   Copyright 2026 The kts Authors

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

// Slow reference computations used as test oracles. Nothing here calls the fast paths under test
// beyond element construction and evaluation.

#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "kts/tower.hpp"

namespace kts::oracle {

/// Schoolbook product of residue vectors, then long division by the modulus.
inline std::vector<Residue> naive_mul(const std::vector<Residue>& a, const std::vector<Residue>& b, const std::vector<Residue>& m,
                                      Residue p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
    const std::size_t s = m.size() - 1;
    for (std::size_t i = prod.size(); i-- > s;) {
        const std::uint64_t c = prod[i];
        if (!c) continue;
        for (std::size_t j = 0; j <= s; ++j) prod[i - s + j] = (prod[i - s + j] + (p - c) * m[j]) % p;
    }
    std::vector<Residue> out(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(std::min(prod.size(), s)));
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

inline std::vector<Residue> residues(const FieldElement& a) { return {a.coeffs().begin(), a.coeffs().end()}; }

/// Every element of the field where g vanishes, by evaluation.
inline std::vector<FieldElement> roots_by_evaluation(const Poly& g) {
    std::vector<FieldElement> out;
    for (const auto& x : enumerate_elements(g.field()))
        if (g(x).is_zero()) out.push_back(x);
    return out;
}

/// Multiplicity of x as a root of g, by repeated division.
inline int multiplicity(Poly g, const FieldElement& x) {
    const Poly lin = Poly::variable(g.field()) - Poly::constant(x);
    int k = 0;
    while (g.degree() >= 1 && g(x).is_zero()) {
        g = g / lin;
        ++k;
    }
    return k;
}

/**
 * Smallest subset of `ambient` (given through `map`) containing the zeros of b1, b2 and closed under
 * gamma -> zeros of b2(T) gamma^m - b1(T), found by evaluating at every element. Only meaningful when
 * the true closure lies inside `ambient`.
 */
inline std::vector<FieldElement> closure_by_evaluation(const RecursionSpec& rec, const EmbeddingMap& map) {
    const auto all = enumerate_elements(map.target());
    const Poly b1 = map_poly(rec.b1, map);
    const Poly b2 = map_poly(rec.b2, map);
    std::vector<FieldElement> v1, v2;
    for (const auto& x : all) {
        v1.push_back(b1(x));
        v2.push_back(b2(x));
    }
    std::vector<std::uint64_t> frontier;
    std::set<std::uint64_t> in;
    for (std::uint64_t i = 0; i < all.size(); ++i)
        if (v1[i].is_zero() || v2[i].is_zero()) {
            in.insert(i);
            frontier.push_back(i);
        }
    while (!frontier.empty()) {
        const FieldElement g = pow(all[frontier.back()], rec.m);
        frontier.pop_back();
        for (std::uint64_t i = 0; i < all.size(); ++i) {
            if (in.count(i)) continue;
            if ((v2[i] * g - v1[i]).is_zero()) {
                in.insert(i);
                frontier.push_back(i);
            }
        }
    }
    std::vector<FieldElement> out;
    for (auto i : in) out.push_back(all[i]);
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

inline FieldElement random_element(const Field& f, std::mt19937_64& rng) {
    std::uniform_int_distribution<Residue> digit(0, f->characteristic() - 1);
    std::vector<Residue> c(static_cast<std::size_t>(f->degree()));
    for (auto& x : c) x = digit(rng);
    return FieldElement(f, std::move(c));
}

inline FieldElement random_nonzero(const Field& f, std::mt19937_64& rng) {
    for (;;) {
        FieldElement a = random_element(f, rng);
        if (!a.is_zero()) return a;
    }
}

/// Random polynomial of exact degree `deg`.
inline Poly random_poly(const Field& f, int deg, std::mt19937_64& rng) {
    std::vector<FieldElement> c;
    for (int i = 0; i < deg; ++i) c.push_back(random_element(f, rng));
    c.push_back(random_nonzero(f, rng));
    return Poly(f, std::move(c));
}

}  // namespace kts::oracle
