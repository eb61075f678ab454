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

/**
 * @file extension.hpp
 * @brief On-demand extension fields, embeddings between them, and complete root extraction.
 *
 * Extension fields built here always use the default modulus for their degree, and are shared: asking for
 * GF(p^s) twice returns the same handle. Embeddings are found by locating a root of the source modulus in
 * the target and taking the smallest one in canonical order; any other choice differs by a Frobenius
 * conjugation.
 */

#pragma once

#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace kts {

/// Embedding of `from` into `to` sending the generator to the canonically smallest admissible root.
inline EmbeddingMap find_embedding(const Field& from, const Field& to) {
    if (same_field(from, to)) return EmbeddingMap::identity(to);
    if (from->characteristic() != to->characteristic() || to->degree() % from->degree() != 0)
        throw ContextError("cannot embed " + from->label() + " into " + to->label());
    const auto roots = distinct_roots_in(Poly::from_residues(to, from->modulus()));
    if (roots.empty()) throw ContextError("modulus of " + from->label() + " has no root in " + to->label());
    return EmbeddingMap(from, to, roots.front());
}

/// Shared default extension fields and cached embeddings between registered fields.
class FieldRegistry {
  public:
    static FieldRegistry& instance() {
        static FieldRegistry registry;
        return registry;
    }

    Field extension(Residue p, int s) {
        std::lock_guard lock(mutex_);
        auto it = fields_.find({p, s});
        if (it != fields_.end()) return it->second;
        Field f = make_extension(p, s);
        fields_.emplace(std::pair{p, s}, f);
        return f;
    }

    EmbeddingMap embedding(const Field& from, const Field& to) {
        const std::pair key{from->label(), to->label()};
        {
            std::lock_guard lock(mutex_);
            if (auto it = embeddings_.find(key); it != embeddings_.end()) {
                // stored maps carry their own field handles; rebuild onto the caller's handles
                if (it->second.source() == from && it->second.target() == to) return it->second;
                return EmbeddingMap(from, to, FieldElement(to, {it->second.generator_image().coeffs().begin(),
                                                                it->second.generator_image().coeffs().end()}));
            }
        }
        EmbeddingMap map = find_embedding(from, to);
        std::lock_guard lock(mutex_);
        embeddings_.emplace(key, map);
        return map;
    }

  private:
    std::mutex mutex_;
    std::map<std::pair<Residue, int>, Field> fields_;
    std::map<std::pair<std::string, std::string>, EmbeddingMap> embeddings_;
};

/// Maximum allowed ambient degree over GF(p) for root extraction.
struct DegreeBudget {
    int max_degree = 16;
};

/// Roots with multiplicity, realized in `ambient`; `embedding` carries the coefficient field into it.
struct RootSet {
    std::vector<std::pair<FieldElement, int>> roots;
    Field ambient;
    EmbeddingMap embedding;

    int total_multiplicity() const {
        int n = 0;
        for (const auto& r : roots) n += r.second;
        return n;
    }
};

/**
 * All roots of g in the smallest extension of its coefficient field containing them.
 *
 * The ambient degree over GF(p) is the coefficient field degree times the lcm of the irreducible factor
 * degrees. When that exceeds the budget, BudgetExceeded carries the required degree.
 */
inline RootSet all_roots(const Poly& g, DegreeBudget budget = {}) {
    if (g.degree() < 1) throw DomainError("roots of a constant polynomial");
    const Field& k = g.field();
    const auto parts = squarefree_decomposition(g);
    int l = 1;
    for (const auto& [h, mult] : parts)
        for (const auto& [piece, deg] : distinct_degree_factorization(h)) l = std::lcm(l, deg);
    const int required = k->degree() * l;
    if (required > budget.max_degree) throw BudgetExceeded(required);

    RootSet out;
    if (l == 1) {
        out.ambient = k;
        out.embedding = EmbeddingMap::identity(k);
    } else {
        out.ambient = FieldRegistry::instance().extension(k->characteristic(), required);
        out.embedding = FieldRegistry::instance().embedding(k, out.ambient);
    }
    for (const auto& [h, mult] : parts)
        for (auto& r : split_roots(map_poly(h, out.embedding))) out.roots.emplace_back(std::move(r), mult);
    std::sort(out.roots.begin(), out.roots.end(),
              [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
    return out;
}

}  // namespace kts
