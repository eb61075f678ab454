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
 * @file tower.hpp
 * @brief Kummer type recursive towers y^m = (x^m - alpha f(x) + alpha) / f(x) over GF(q).
 *
 * A tower is certified asymptotically good when
 *   - gcd(m, q) = 1 and q = 1 mod m,
 *   - T^m + alpha splits into m distinct linear factors over GF(q) and shares no root with f,
 *   - f is separable with gcd(m, deg f) = 1 and deg f < m,
 *   - b1 = T^m - alpha f + alpha and b2 = f are coprime,
 *   - the smallest set S0 containing the roots of b1 and b2 and closed under
 *     gamma -> roots of sigma_gamma(T) = b2(T) gamma^m - b1(T) is finite.
 * The limit of such a tower is at least 2m / (|S0| - 1), and at least m rational places of the rational
 * function field split completely.
 *
 * Scaling x -> cx, y -> cy maps (alpha, f) to (c^-m alpha, f(cT)) and defines the same tower; S0 maps to
 * c^-1 S0. canonical_key picks the smallest orbit member so that equations can be deduplicated.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "extension.hpp"
#include "rational.hpp"

namespace kts {

struct KummerSpec {
    Field field;
    int m = 2;
    FieldElement alpha;
    Poly f;

    friend bool operator==(const KummerSpec& a, const KummerSpec& b) {
        return same_field(a.field, b.field) && a.m == b.m && a.alpha == b.alpha && a.f == b.f;
    }
};

/// Builds a spec; alpha must be nonzero. The degree shape of f is diagnosed later, not enforced here.
inline KummerSpec make_kummer_spec(Field field, int m, FieldElement alpha, Poly f) {
    if (m < 2) throw DomainError("m must be at least 2");
    require_same_field(alpha.field(), field);
    if (alpha.is_zero()) throw DomainError("alpha must be nonzero");
    if (!f.is_zero()) require_same_field(f.field(), field);
    if (f.is_zero()) f = Poly(field);
    return KummerSpec{std::move(field), m, std::move(alpha), std::move(f)};
}

/// y^m = b1(x) / b2(x).
struct RecursionSpec {
    Field field;
    int m = 2;
    Poly b1;
    Poly b2;
};

inline Poly kummer_numerator(const KummerSpec& spec) {
    const Poly tm = Poly::monomial(FieldElement::constant(spec.field, 1), static_cast<std::size_t>(spec.m));
    return tm - poly_scale(spec.f, spec.alpha) + Poly::constant(spec.alpha);
}

inline RecursionSpec to_recursion(const KummerSpec& spec) {
    if (spec.f.is_zero() || spec.f.degree() >= spec.m)
        throw ShapeError("f must be nonzero with degree below m = " + std::to_string(spec.m));
    return RecursionSpec{spec.field, spec.m, kummer_numerator(spec), spec.f};
}

struct RecursionDiagnostics {
    bool degree_b1 = false;      // deg b1 = m
    bool degree_b2 = false;      // 1 <= deg b2 < m
    bool gcd_condition = false;  // gcd(m, m - deg b2) = 1
    bool coprime = false;        // gcd(b1, b2) = 1

    bool ok() const { return degree_b1 && degree_b2 && gcd_condition && coprime; }
};

inline RecursionDiagnostics diagnose(const RecursionSpec& rec) {
    RecursionDiagnostics d;
    d.degree_b1 = rec.b1.degree() == rec.m;
    d.degree_b2 = rec.b2.degree() >= 1 && rec.b2.degree() < rec.m;
    d.gcd_condition = d.degree_b2 && std::gcd(rec.m, rec.m - rec.b2.degree()) == 1;
    d.coprime = !(rec.b1.is_zero() && rec.b2.is_zero()) && poly_gcd(rec.b1, rec.b2).degree() == 0;
    return d;
}

/// sigma_gamma(T) = b2(T) gamma^m - b1(T), over the field of gamma; `map` carries the base field there.
inline Poly sigma(const RecursionSpec& rec, const FieldElement& gamma, const EmbeddingMap& map) {
    require_same_field(map.source(), rec.field);
    require_same_field(gamma.field(), map.target());
    return poly_scale(map_poly(rec.b2, map), pow(gamma, rec.m)) - map_poly(rec.b1, map);
}

/// sigma_gamma(T) = f(T)(gamma^m + alpha) - (T^m + alpha).
inline Poly sigma(const KummerSpec& spec, const FieldElement& gamma, const EmbeddingMap& map) {
    require_same_field(map.source(), spec.field);
    require_same_field(gamma.field(), map.target());
    const Field& l = map.target();
    const FieldElement a = map(spec.alpha);
    const Poly tm_plus_a = Poly::monomial(FieldElement::constant(l, 1), static_cast<std::size_t>(spec.m)) + Poly::constant(a);
    return poly_scale(map_poly(spec.f, map), pow(gamma, spec.m) + a) - tm_plus_a;
}

struct ClosureLimits {
    std::size_t max_size = 64;
    int max_ambient_degree = 16;
};

enum class ClosureStatus { Closed, ExceededSize, ExceededDegree };

inline const char* to_string(ClosureStatus s) {
    switch (s) {
        case ClosureStatus::Closed: return "closed";
        case ClosureStatus::ExceededSize: return "exceeded_size";
        case ClosureStatus::ExceededDegree: return "exceeded_degree";
    }
    return "?";
}

struct ClosureResult {
    ClosureStatus status = ClosureStatus::Closed;
    std::vector<FieldElement> elements;  // canonical order, in `ambient`
    Field ambient;
    EmbeddingMap embedding;  // base field -> ambient
    int generations = 0;
    std::size_t seed_size = 0;

    bool closed() const { return status == ClosureStatus::Closed; }
    std::size_t size() const { return elements.size(); }
};

namespace detail {

class ClosureEngine {
  public:
    ClosureEngine(const RecursionSpec& rec, const ClosureLimits& limits)
        : rec_(rec), limits_(limits), ambient_(rec.field), map_(EmbeddingMap::identity(rec.field)),
          b1_(rec.b1), b2_(rec.b2) {}

    ClosureResult run() {
        try {
            for (const Poly* b : {&b1_, &b2_})
                if (b->degree() >= 1) absorb(all_roots(*b, {limits_.max_ambient_degree}), frontier_);
            seed_size_ = elements_.size();
            while (!frontier_.empty()) {
                if (elements_.size() > limits_.max_size) return finish(ClosureStatus::ExceededSize);
                ++generations_;
                std::sort(frontier_.begin(), frontier_.end(), canonical_less);
                std::vector<FieldElement> next;
                next_ = &next;
                for (std::size_t i = 0; i < frontier_.size(); ++i) {
                    const Poly s = poly_scale(b2_, pow(frontier_[i], rec_.m)) - b1_;
                    absorb(all_roots(s, {limits_.max_ambient_degree}), next);
                    if (elements_.size() > limits_.max_size) return finish(ClosureStatus::ExceededSize);
                }
                frontier_ = std::move(next);
                next_ = nullptr;
            }
        } catch (const BudgetExceeded&) {
            return finish(ClosureStatus::ExceededDegree);
        }
        return finish(ClosureStatus::Closed);
    }

  private:
    ClosureResult finish(ClosureStatus status) {
        ClosureResult out;
        out.status = status;
        out.elements = elements_;
        std::sort(out.elements.begin(), out.elements.end(), canonical_less);
        out.ambient = ambient_;
        out.embedding = map_;
        out.generations = generations_;
        out.seed_size = seed_size_ ? seed_size_ : elements_.size();
        return out;
    }

    void grow(const EmbeddingMap& step) {
        auto lift = [&](std::vector<FieldElement>& v) {
            for (auto& x : v) x = step(x);
        };
        lift(elements_);
        lift(frontier_);
        if (next_) lift(*next_);
        members_.clear();
        for (const auto& x : elements_) members_.insert(std::vector<Residue>(x.coeffs().begin(), x.coeffs().end()));
        map_ = compose(map_, step);
        ambient_ = step.target();
        b1_ = map_poly(b1_, step);
        b2_ = map_poly(b2_, step);
    }

    void absorb(const RootSet& rs, std::vector<FieldElement>& sink) {
        if (!same_field(rs.ambient, ambient_)) grow(rs.embedding);
        for (const auto& [r, mult] : rs.roots) {
            if (members_.insert(std::vector<Residue>(r.coeffs().begin(), r.coeffs().end())).second) {
                elements_.push_back(r);
                sink.push_back(r);
            }
        }
    }

    const RecursionSpec& rec_;
    ClosureLimits limits_;
    Field ambient_;
    EmbeddingMap map_;
    Poly b1_;
    Poly b2_;
    std::vector<FieldElement> elements_;
    std::set<std::vector<Residue>> members_;
    std::vector<FieldElement> frontier_;
    std::vector<FieldElement>* next_ = nullptr;
    int generations_ = 0;
    std::size_t seed_size_ = 0;
};

}  // namespace detail

/**
 * Smallest set S0 containing the roots of b1 and b2 and closed under gamma -> roots of sigma_gamma.
 *
 * Starts in the base field and moves to a larger field only when a root escapes; all accumulated
 * elements are then re-embedded. Elements are processed generation by generation in canonical order.
 * Exceeding the size or degree limit is reported in the status, never thrown.
 */
inline ClosureResult compute_closure(const RecursionSpec& rec, const ClosureLimits& limits = {}) {
    if (rec.m < 2 || rec.b1.degree() != rec.m || rec.b2.is_zero() || rec.b2.degree() >= rec.m)
        throw ShapeError("recursion needs deg b1 = m and 0 <= deg b2 < m");
    require_same_field(rec.b1.field(), rec.field);
    require_same_field(rec.b2.field(), rec.field);
    return detail::ClosureEngine(rec, limits).run();
}

/// True iff g factors into linear factors whose roots all lie in `set` (same field as g).
inline bool splits_over(const Poly& g, const std::vector<FieldElement>& set) {
    if (g.degree() < 1) return true;
    Poly rest = g;
    const Poly x = Poly::variable(g.field());
    for (const auto& e : set) {
        while (rest.degree() >= 1 && rest(e).is_zero()) rest = rest / (x - Poly::constant(e));
        if (rest.degree() < 1) return true;
    }
    return rest.degree() < 1;
}

/// Seeds contained and every sigma_gamma root contained, for the candidate set `set` in map.target().
inline bool is_closed_set(const RecursionSpec& rec, const EmbeddingMap& map, const std::vector<FieldElement>& set) {
    if (!splits_over(map_poly(rec.b1, map), set) || !splits_over(map_poly(rec.b2, map), set)) return false;
    return std::all_of(set.begin(), set.end(),
                       [&](const FieldElement& g) { return splits_over(sigma(rec, g, map), set); });
}

/// Independent re-check of a Closed result by evaluation and division only.
inline bool verify_closure(const RecursionSpec& rec, const ClosureResult& result) {
    return result.closed() && is_closed_set(rec, result.embedding, result.elements);
}

/// Removing any non-seed element breaks closure.
inline bool is_minimal_closure(const RecursionSpec& rec, const ClosureResult& result) {
    if (!result.closed()) return false;
    const Poly b1 = map_poly(rec.b1, result.embedding);
    const Poly b2 = map_poly(rec.b2, result.embedding);
    for (std::size_t i = 0; i < result.elements.size(); ++i) {
        const FieldElement& e = result.elements[i];
        if (b1(e).is_zero() || b2(e).is_zero()) continue;
        std::vector<FieldElement> reduced = result.elements;
        reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(i));
        if (is_closed_set(rec, result.embedding, reduced)) return false;
    }
    return true;
}

/// Lower bound 2m / (|S0| - 1) on the limit of the tower.
inline Rational lambda_bound(int m, std::size_t s0_size) {
    if (s0_size <= 1) throw DegenerateBound("lambda bound needs |S0| >= 2, got " + std::to_string(s0_size));
    return Rational(2 * static_cast<std::int64_t>(m), static_cast<std::int64_t>(s0_size) - 1);
}

/// N(F_i) >= [F_i : F_0] |Split| + |Cram|.
inline std::uint64_t places_lower_bound(std::uint64_t split_size, std::uint64_t cram_size, std::uint64_t ext_degree) {
    return ext_degree * split_size + cram_size;
}

struct SplitCheck {
    bool gcd_m_q = false;
    bool gcd_condition = false;
    bool splits = false;
    bool disjoint_zero_sets = false;
    int m = 0;

    bool passed() const { return gcd_m_q && gcd_condition && splits && disjoint_zero_sets; }
    int split_bound() const { return passed() ? m : 0; }

    /// Rational places at level i: m^(i+1) + 1 when the check passed.
    std::uint64_t places_bound(int level) const {
        if (!passed()) return 0;
        std::uint64_t ext = 1;
        for (int i = 0; i < level; ++i) ext *= static_cast<std::uint64_t>(m);
        return places_lower_bound(static_cast<std::uint64_t>(m), 1, ext);
    }
};

inline bool coprime_to_characteristic(int m, const Field& field) { return m % static_cast<int>(field->characteristic()) != 0; }

inline SplitCheck check_splitting(const KummerSpec& spec) {
    SplitCheck c;
    c.m = spec.m;
    c.gcd_m_q = coprime_to_characteristic(spec.m, spec.field);
    c.gcd_condition = spec.f.degree() >= 0 && std::gcd(spec.m, spec.f.degree()) == 1;
    const Poly tm_plus_a =
        Poly::monomial(FieldElement::constant(spec.field, 1), static_cast<std::size_t>(spec.m)) + Poly::constant(spec.alpha);
    c.splits = static_cast<int>(distinct_roots_in(tm_plus_a).size()) == spec.m;
    c.disjoint_zero_sets = !spec.f.is_zero() && poly_gcd(spec.f, tm_plus_a).degree() == 0;
    return c;
}

struct HypothesisChecks {
    bool shape = false;  // f nonzero, deg f < m
    bool gcd_m_q = false;
    bool q_mod_m = false;
    bool gcd_condition = false;
    bool splits = false;
    bool disjoint_zero_sets = false;
    bool separable_f = false;
    bool coprime_b1_b2 = false;

    bool all() const {
        return shape && gcd_m_q && q_mod_m && gcd_condition && splits && disjoint_zero_sets && separable_f && coprime_b1_b2;
    }

    /// Name of the first failing condition in the fixed reporting order.
    std::optional<std::string> first_failure() const {
        const std::pair<const char*, bool> order[] = {
            {"shape", shape},   {"gcd_m_q", gcd_m_q},
            {"q_mod_m", q_mod_m}, {"gcd_condition", gcd_condition},
            {"splits", splits}, {"disjoint_zero_sets", disjoint_zero_sets},
            {"separable_f", separable_f}, {"coprime_b1_b2", coprime_b1_b2}};
        for (const auto& [name, ok] : order)
            if (!ok) return std::string(name);
        return std::nullopt;
    }
};

/// Advisory comparison against A(q) = sqrt(q) - 1 for square q.
struct Optimality {
    Rational ihara_bound;
    bool optimal = false;
};

struct EquivalenceKey {
    std::string text;
    KummerSpec representative;
    std::size_t stabilizer = 1;
    std::size_t orbit_size = 1;

    friend bool operator==(const EquivalenceKey& a, const EquivalenceKey& b) { return a.text == b.text; }
};

struct TowerReport {
    KummerSpec spec;
    HypothesisChecks checks;
    std::optional<ClosureResult> closure;
    int split_bound = 0;
    std::optional<Rational> lambda_bound;
    bool certified = false;
    std::string canonical_key;
    std::optional<Optimality> optimality;
};

/// x -> cx, y -> cy: (alpha, f) -> (c^-m alpha, f(cT)).
inline KummerSpec transform(const KummerSpec& spec, const FieldElement& c) {
    require_same_field(c.field(), spec.field);
    if (c.is_zero()) throw DomainError("scaling by zero");
    return KummerSpec{spec.field, spec.m, pow(c, -static_cast<std::int64_t>(spec.m)) * spec.alpha, compose_linear(spec.f, c)};
}

namespace detail {

inline bool spec_less(const KummerSpec& a, const KummerSpec& b) {
    if (a.alpha != b.alpha) return canonical_less(a.alpha, b.alpha);
    if (a.f.degree() != b.f.degree()) return a.f.degree() < b.f.degree();
    for (std::size_t i = 0; i < a.f.coeffs().size(); ++i)
        if (a.f.coeffs()[i] != b.f.coeffs()[i]) return canonical_less(a.f.coeffs()[i], b.f.coeffs()[i]);
    return false;
}

inline void append_element(std::string& out, const FieldElement& e) {
    out += '[';
    const auto c = e.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + std::to_string(c[i]);
    out += ']';
}

}  // namespace detail

/// Compact stable encoding "m:alpha:f" of a spec, e.g. "2:[1]:[[],[1]]".
inline std::string encode_spec(const KummerSpec& spec) {
    std::string out = std::to_string(spec.m) + ":";
    detail::append_element(out, spec.alpha);
    out += ":[";
    for (std::size_t i = 0; i < spec.f.coeffs().size(); ++i) {
        if (i) out += ',';
        detail::append_element(out, spec.f.coeffs()[i]);
    }
    out += ']';
    return out;
}

/// Smallest member of the scaling orbit over GF(q)^*, with stabilizer and orbit sizes.
inline EquivalenceKey canonical_key(const KummerSpec& spec) {
    const std::uint64_t q = spec.field->size();
    EquivalenceKey key{"", spec, 0, 0};
    bool first = true;
    for (std::uint64_t i = 1; i < q; ++i) {
        const FieldElement c = element_at(spec.field, i);
        KummerSpec t = transform(spec, c);
        if (t == spec) ++key.stabilizer;
        if (first || detail::spec_less(t, key.representative)) {
            key.representative = std::move(t);
            first = false;
        }
    }
    key.orbit_size = static_cast<std::size_t>(q - 1) / key.stabilizer;
    key.text = encode_spec(key.representative);
    return key;
}

/// Some c in GF(q)^* with transform(a, c) = b, smallest in canonical order.
inline std::optional<FieldElement> verify_equivalence(const KummerSpec& a, const KummerSpec& b) {
    if (!same_field(a.field, b.field)) throw ContextError("specs live over different fields");
    if (a.m != b.m) throw ContextError("specs have different exponents m");
    const std::uint64_t q = a.field->size();
    for (std::uint64_t i = 1; i < q; ++i) {
        FieldElement c = element_at(a.field, i);
        if (transform(a, c) == b) return c;
    }
    return std::nullopt;
}

struct CertifyOptions {
    bool closure_on_failed_checks = true;
    bool compute_key = true;
};

inline HypothesisChecks check_hypotheses(const KummerSpec& spec) {
    HypothesisChecks h;
    h.shape = spec.f.degree() >= 1 && spec.f.degree() < spec.m;
    const SplitCheck split = check_splitting(spec);
    h.gcd_m_q = split.gcd_m_q;
    h.q_mod_m = spec.field->order() % static_cast<WideUint>(spec.m) == 1;
    h.gcd_condition = split.gcd_condition;
    h.splits = split.splits;
    h.disjoint_zero_sets = split.disjoint_zero_sets;
    h.separable_f = spec.f.degree() >= 1 && is_separable(spec.f);
    h.coprime_b1_b2 = h.shape && poly_gcd(kummer_numerator(spec), spec.f).degree() == 0;
    return h;
}

inline std::optional<Optimality> optimality_note(const KummerSpec& spec, const Rational& bound) {
    if (spec.field->degree() % 2 != 0) return std::nullopt;
    std::int64_t root = 1;
    for (int i = 0; i < spec.field->degree() / 2; ++i) root *= spec.field->characteristic();
    Optimality o{Rational(root - 1), false};
    o.optimal = bound == o.ihara_bound;
    return o;
}

/// Runs every hypothesis check and the closure; certified iff all checks pass and the closure is finite.
inline TowerReport certify(const KummerSpec& spec, const ClosureLimits& limits = {}, const CertifyOptions& opts = {}) {
    TowerReport r;
    r.spec = spec;
    r.checks = check_hypotheses(spec);
    if (r.checks.shape && (opts.closure_on_failed_checks || r.checks.all()))
        r.closure = compute_closure(to_recursion(spec), limits);
    r.certified = r.checks.all() && r.closure && r.closure->closed();
    if (r.certified) {
        r.split_bound = spec.m;
        r.lambda_bound = lambda_bound(spec.m, r.closure->size());
        r.optimality = optimality_note(spec, *r.lambda_bound);
    }
    if (opts.compute_key) r.canonical_key = canonical_key(spec).text;
    return r;
}

/// Checks S0(transform(spec, c)) = c^-1 S0(spec) inside a common ambient field.
inline bool closure_transform_check(const KummerSpec& spec, const FieldElement& c, const ClosureLimits& limits = {}) {
    const ClosureResult r1 = compute_closure(to_recursion(spec), limits);
    const ClosureResult r2 = compute_closure(to_recursion(transform(spec, c)), limits);
    if (!r1.closed() || !r2.closed()) throw DomainError("closure_transform_check needs two closed results");
    if (r1.size() != r2.size()) return false;

    auto& registry = FieldRegistry::instance();
    const Residue p = spec.field->characteristic();
    const int common = std::lcm(r1.ambient->degree(), r2.ambient->degree());
    const Field target = r1.ambient->degree() == common   ? r1.ambient
                         : r2.ambient->degree() == common ? r2.ambient
                                                          : registry.extension(p, common);
    const EmbeddingMap e1 = registry.embedding(r1.ambient, target);
    // e2 must agree with e1 on the base field
    const FieldElement base_gen = FieldElement::generator(spec.field);
    const FieldElement want = e1(r1.embedding(base_gen));
    std::optional<EmbeddingMap> e2;
    for (const auto& root : distinct_roots_in(Poly::from_residues(target, r2.ambient->modulus()))) {
        EmbeddingMap candidate(r2.ambient, target, root);
        if (candidate(r2.embedding(base_gen)) == want) {
            e2 = candidate;
            break;
        }
    }
    if (!e2) return false;

    const FieldElement c_inv = inv(e1(r1.embedding(c)));
    std::vector<FieldElement> scaled, other;
    for (const auto& l : r1.elements) scaled.push_back(c_inv * e1(l));
    for (const auto& l : r2.elements) other.push_back((*e2)(l));
    std::sort(scaled.begin(), scaled.end(), canonical_less);
    std::sort(other.begin(), other.end(), canonical_less);
    return scaled == other;
}

/// Coefficient-wise image of a spec in a larger field.
inline KummerSpec lift(const KummerSpec& spec, const EmbeddingMap& map) {
    require_same_field(map.source(), spec.field);
    return KummerSpec{map.target(), spec.m, map(spec.alpha), map_poly(spec.f, map)};
}

/**
 * Reads y^m = b1/b2 as a Kummer equation: finds alpha in GF(q)^* with b1/lc(b1) = T^m - alpha f + alpha
 * for f = b2/lc(b1). Returns nothing when no alpha fits.
 */
inline std::optional<KummerSpec> match_kummer(const RecursionSpec& rec) {
    if (rec.b1.degree() != rec.m || rec.b2.is_zero()) return std::nullopt;
    const FieldElement scale = inv(rec.b1.leading());
    const Poly f = poly_scale(rec.b2, scale);
    const Poly target = poly_scale(rec.b1, scale);
    const std::uint64_t q = rec.field->size();
    for (std::uint64_t i = 1; i < q; ++i) {
        KummerSpec k{rec.field, rec.m, element_at(rec.field, i), f};
        if (kummer_numerator(k) == target) return k;
    }
    return std::nullopt;
}

}  // namespace kts
