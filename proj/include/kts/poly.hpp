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

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "gf.hpp"

namespace kts {

/// Dense univariate polynomial in T, ascending coefficients, no trailing zeros.
class Poly {
  public:
    Poly() = default;
    explicit Poly(Field field) : field_(std::move(field)) {}

    Poly(Field field, std::vector<FieldElement> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
        if (!field_) throw ContextError("polynomial without a field");
        for (const auto& c : coeffs_) require_same_field(c.field(), field_);
        normalize();
    }

    static Poly constant(const FieldElement& c) { return Poly(c.field(), {c}); }

    static Poly monomial(const FieldElement& c, std::size_t k) {
        std::vector<FieldElement> v(k + 1, FieldElement(c.field()));
        v[k] = c;
        return Poly(c.field(), std::move(v));
    }

    /// The polynomial T.
    static Poly variable(const Field& field) { return monomial(FieldElement::constant(field, 1), 1); }

    /// Coefficients given as residues of GF(p) in ascending order.
    static Poly from_residues(const Field& field, const std::vector<Residue>& residues) {
        std::vector<FieldElement> v;
        v.reserve(residues.size());
        for (Residue r : residues) v.push_back(FieldElement::constant(field, r));
        return Poly(field, std::move(v));
    }

    const Field& field() const noexcept { return field_; }
    const std::vector<FieldElement>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const FieldElement& leading() const { return coeffs_.back(); }

    FieldElement coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : FieldElement(field_); }

    FieldElement operator()(const FieldElement& x) const {
        require_same_field(x.field(), field_);
        FieldElement acc(field_);
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.coeffs_.size() == b.coeffs_.size() && (a.coeffs_.empty() || same_field(a.field_, b.field_)) &&
               std::equal(a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin());
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        require_same_field(a.field_, b.field_);
        std::vector<FieldElement> v(std::max(a.coeffs_.size(), b.coeffs_.size()), FieldElement(a.field_));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
        return Poly(a.field_, std::move(v));
    }

    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        require_same_field(a.field_, b.field_);
        if (a.is_zero() || b.is_zero()) return Poly(a.field_);
        std::vector<FieldElement> v(a.coeffs_.size() + b.coeffs_.size() - 1, FieldElement(a.field_));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Poly(a.field_, std::move(v));
    }

  private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    Field field_;
    std::vector<FieldElement> coeffs_;
};

inline Poly poly_add(const Poly& a, const Poly& b) { return a + b; }
inline Poly poly_mul(const Poly& a, const Poly& b) { return a * b; }

inline Poly poly_scale(const Poly& g, const FieldElement& c) {
    require_same_field(g.field(), c.field());
    std::vector<FieldElement> v = g.coeffs();
    for (auto& x : v) x *= c;
    return Poly(g.field(), std::move(v));
}

/// T -> g(cT).
inline Poly compose_linear(const Poly& g, const FieldElement& c) {
    require_same_field(g.field(), c.field());
    std::vector<FieldElement> v = g.coeffs();
    FieldElement power = FieldElement::constant(g.field(), 1);
    for (auto& x : v) {
        x *= power;
        power *= c;
    }
    return Poly(g.field(), std::move(v));
}

inline Poly derivative(const Poly& g) {
    if (g.degree() < 1) return Poly(g.field());
    std::vector<FieldElement> v;
    v.reserve(g.coeffs().size() - 1);
    for (std::size_t i = 1; i < g.coeffs().size(); ++i)
        v.push_back(g.coeffs()[i] * FieldElement::constant(g.field(), static_cast<std::int64_t>(i)));
    return Poly(g.field(), std::move(v));
}

inline Poly monic(const Poly& g) {
    if (g.is_zero()) return g;
    return poly_scale(g, inv(g.leading()));
}

inline std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    require_same_field(a.field(), b.field());
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    const Field& field = a.field();
    if (a.degree() < b.degree()) return {Poly(field), a};
    std::vector<FieldElement> rem = a.coeffs();
    std::vector<FieldElement> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1), FieldElement(field));
    const bool is_monic = b.leading().is_one();
    const FieldElement lead_inv = is_monic ? b.leading() : inv(b.leading());
    const auto db = static_cast<std::size_t>(b.degree());
    for (std::size_t i = rem.size(); i-- > db;) {
        if (rem[i].is_zero()) continue;
        const FieldElement c = is_monic ? rem[i] : rem[i] * lead_inv;
        quo[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= c * b.coeffs()[j];
    }
    rem.resize(db);
    return {Poly(field, std::move(quo)), Poly(field, std::move(rem))};
}

inline Poly operator%(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }
inline Poly operator/(const Poly& a, const Poly& b) { return poly_divmod(a, b).first; }

/// Monic gcd; gcd(a, 0) = monic(a).
inline Poly poly_gcd(Poly a, Poly b) {
    if (a.is_zero() && b.is_zero()) throw DomainError("gcd of two zero polynomials");
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

namespace detail {

/**
 * Arithmetic modulo a monic polynomial over GF(p^s) on flat residue arrays: n coefficients of s residues
 * each. Products are accumulated without reduction mod p and reduced once per coefficient, which is valid
 * while the accumulators cannot overflow (see fits()).
 */
class DenseQuotient {
  public:
    explicit DenseQuotient(const Poly& monic_mod)
        : field_(monic_mod.field()),
          p_(field_->characteristic()),
          s_(static_cast<std::size_t>(field_->degree())),
          n_(static_cast<std::size_t>(monic_mod.degree())),
          h_(to_flat(monic_mod, n_)) {}

    /// Each accumulator slot takes at most (2n + 1) s products below 2 p^2.
    static bool fits(const Poly& m) {
        const std::uint64_t p = m.field()->characteristic();
        const std::uint64_t terms = (2 * static_cast<std::uint64_t>(m.degree()) + 1) * m.field()->degree();
        return p < (1u << 20) && terms < (1u << 22);
    }

    std::vector<Residue> to_flat(const Poly& g, std::size_t len) const {
        std::vector<Residue> out(len * s_, 0);
        for (std::size_t i = 0; i < std::min(len, g.coeffs().size()); ++i) {
            const auto c = g.coeffs()[i].coeffs();
            std::copy(c.begin(), c.end(), out.begin() + static_cast<std::ptrdiff_t>(i * s_));
        }
        return out;
    }

    Poly from_flat(const std::vector<Residue>& a) const {
        std::vector<FieldElement> v;
        v.reserve(n_);
        for (std::size_t i = 0; i < n_; ++i)
            v.emplace_back(field_, std::vector<Residue>(a.begin() + static_cast<std::ptrdiff_t>(i * s_),
                                                        a.begin() + static_cast<std::ptrdiff_t>((i + 1) * s_)));
        return Poly(field_, std::move(v));
    }

    /// a * b mod h, both reduced.
    std::vector<Residue> mul(const std::vector<Residue>& a, const std::vector<Residue>& b) {
        const std::size_t w = 2 * s_ - 1;  // width of an unreduced element product
        acc_.assign((2 * n_ - 1) * w, 0);
        for (std::size_t i = 0; i < n_; ++i) {
            const Residue* ai = &a[i * s_];
            for (std::size_t j = 0; j < n_; ++j) add_product(&acc_[(i + j) * w], ai, &b[j * s_]);
        }
        return fold();
    }

    /// a^2 mod h; cross terms are taken once against a doubled copy.
    std::vector<Residue> sqr(const std::vector<Residue>& a) {
        const std::size_t w = 2 * s_ - 1;
        acc_.assign((2 * n_ - 1) * w, 0);
        twice_.resize(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) twice_[i] = static_cast<Residue>(a[i] * 2 % p_);
        for (std::size_t i = 0; i < n_; ++i) {
            add_square(&acc_[2 * i * w], &a[i * s_]);
            for (std::size_t j = i + 1; j < n_; ++j) add_product(&acc_[(i + j) * w], &twice_[i * s_], &a[j * s_]);
        }
        return fold();
    }

  private:
    // reduces the accumulated product modulo h and then coefficient-wise
    std::vector<Residue> fold() {
        const std::size_t w = 2 * s_ - 1;
        std::vector<Residue> c(s_);
        for (std::size_t k = 2 * n_ - 1; k-- > n_;) {
            reduce_element(&acc_[k * w], c.data());
            for (auto& x : c) x = x ? p_ - x : 0;
            for (std::size_t j = 0; j < n_; ++j) add_product(&acc_[(k - n_ + j) * w], c.data(), &h_[j * s_]);
        }
        std::vector<Residue> out(n_ * s_);
        for (std::size_t k = 0; k < n_; ++k) reduce_element(&acc_[k * w], &out[k * s_]);
        return out;
    }

    void add_square(std::uint64_t* acc, const Residue* a) const {
        for (std::size_t i = 0; i < s_; ++i) {
            if (!a[i]) continue;
            const std::uint64_t ai = a[i];
            acc[2 * i] += ai * ai;
            const std::uint64_t di = 2 * ai;
            for (std::size_t j = i + 1; j < s_; ++j) acc[i + j] += di * a[j];
        }
    }

    void add_product(std::uint64_t* acc, const Residue* a, const Residue* b) const {
        for (std::size_t i = 0; i < s_; ++i) {
            if (!a[i]) continue;
            const std::uint64_t ai = a[i];
            for (std::size_t j = 0; j < s_; ++j) acc[i + j] += ai * b[j];
        }
    }

    // folds degrees >= s with the field modulus, then reduces mod p
    void reduce_element(std::uint64_t* acc, Residue* out) const {
        const auto& m = field_->modulus();
        const auto& red = field_->reducer();
        for (std::size_t i = 2 * s_ - 1; i-- > s_;) {
            const std::uint64_t c = red(acc[i]);
            if (!c) continue;
            const std::uint64_t neg = p_ - c;
            for (std::size_t j = 0; j < s_; ++j) acc[i - s_ + j] += neg * m[j];
        }
        for (std::size_t j = 0; j < s_; ++j) out[j] = static_cast<Residue>(red(acc[j]));
    }

    Field field_;
    std::uint64_t p_;
    std::size_t s_, n_;
    std::vector<Residue> h_;
    std::vector<Residue> twice_;
    std::vector<std::uint64_t> acc_;
};

}  // namespace detail

inline Poly powmod(Poly base, WideUint e, const Poly& modulus) {
    // remainders modulo m and modulo monic(m) coincide
    const Poly m = monic(modulus);
    Poly result = Poly::constant(FieldElement::constant(m.field(), 1)) % m;
    base = base % m;
    if (m.degree() >= 1 && detail::DenseQuotient::fits(m)) {
        detail::DenseQuotient ring(m);
        const auto n = static_cast<std::size_t>(m.degree());
        std::vector<Residue> r = ring.to_flat(result, n), b = ring.to_flat(base, n);
        while (e) {
            if (e & 1) r = ring.mul(r, b);
            e >>= 1;
            if (e) b = ring.sqr(b);
        }
        return ring.from_flat(r);
    }
    while (e) {
        if (e & 1) result = mulmod(result, base, m);
        e >>= 1;
        if (e) base = mulmod(base, base, m);
    }
    return result;
}

/// Coefficient-wise image under a field embedding.
inline Poly map_poly(const Poly& g, const EmbeddingMap& map) {
    require_same_field(g.field(), map.source());
    std::vector<FieldElement> v;
    v.reserve(g.coeffs().size());
    for (const auto& c : g.coeffs()) v.push_back(map(c));
    return Poly(map.target(), std::move(v));
}

inline bool is_separable(const Poly& f) {
    if (f.degree() < 1) throw DomainError("separability of a constant polynomial");
    return poly_gcd(f, derivative(f)).degree() == 0;
}

namespace detail {

// Inverse of the absolute Frobenius on K = GF(p^D): a^(p^(D-1)).
inline FieldElement pth_root(const FieldElement& a) {
    const Field& k = a.field();
    return pow(a, checked_power(k->characteristic(), k->degree() - 1));
}

// g(T) = h(T^p); returns h with coefficients replaced by their p-th roots.
inline Poly pth_root(const Poly& g) {
    const auto p = static_cast<std::size_t>(g.field()->characteristic());
    std::vector<FieldElement> v;
    for (std::size_t i = 0; i < g.coeffs().size(); i += p) v.push_back(pth_root(g.coeffs()[i]));
    return Poly(g.field(), std::move(v));
}

}  // namespace detail

/**
 * Squarefree decomposition g = lc * prod h_i^i, each h_i monic squarefree and pairwise coprime.
 * Handles g' = 0 by extracting a p-th root.
 */
inline std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& g) {
    if (g.degree() < 1) return {};
    std::vector<std::pair<Poly, int>> out;
    const int p = static_cast<int>(g.field()->characteristic());
    const Poly f = monic(g);
    const Poly df = derivative(f);
    if (df.is_zero()) {
        for (auto& [h, j] : squarefree_decomposition(detail::pth_root(f))) out.emplace_back(std::move(h), j * p);
        return out;
    }
    Poly c = poly_gcd(f, df);
    Poly w = f / c;
    int i = 1;
    while (w.degree() > 0) {
        Poly y = poly_gcd(w, c);
        Poly z = w / y;
        if (z.degree() > 0) out.emplace_back(monic(z), i);
        ++i;
        w = y;
        c = c / y;
    }
    if (c.degree() > 0)
        for (auto& [h, j] : squarefree_decomposition(detail::pth_root(c))) out.emplace_back(std::move(h), j * p);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    return out;
}

/// For squarefree g: pairs (product of all irreducible factors of degree k, k).
inline std::vector<std::pair<Poly, int>> distinct_degree_factorization(const Poly& g) {
    std::vector<std::pair<Poly, int>> out;
    Poly rest = monic(g);
    const WideUint q = g.field()->order();
    const Poly x = Poly::variable(g.field());
    Poly h = x;
    for (int k = 1; rest.degree() >= 2 * k; ++k) {
        h = powmod(h, q, rest);
        Poly part = poly_gcd(rest, h - x);
        if (part.degree() > 0) {
            out.emplace_back(part, k);
            rest = rest / part;
            h = h % rest;
        }
    }
    if (rest.degree() > 0) out.emplace_back(rest, rest.degree());
    return out;
}

/// Degrees of the irreducible factors of g, repeated by multiplicity, ascending.
inline std::vector<int> factor_degree_profile(const Poly& g) {
    if (g.degree() < 1) throw DomainError("degree profile of a constant polynomial");
    std::vector<int> out;
    for (const auto& [h, mult] : squarefree_decomposition(g))
        for (const auto& [part, k] : distinct_degree_factorization(h))
            for (int n = 0; n < mult * (part.degree() / k); ++n) out.push_back(k);
    std::sort(out.begin(), out.end());
    return out;
}

/// Fields up to this size are scanned exhaustively when extracting roots.
inline constexpr std::uint64_t kExhaustiveRootScanLimit = std::uint64_t{1} << 10;

namespace detail {

inline void split_recursive(const Poly& g, std::vector<FieldElement>& roots) {
    if (g.degree() < 1) return;
    if (g.degree() == 1) {
        roots.push_back(-(g.coeffs()[0] * inv(g.coeffs()[1])));
        return;
    }
    const Field& k = g.field();
    const Residue p = k->characteristic();
    const Poly x = Poly::variable(k);
    // deterministic sweep of shifts u in canonical order
    for (std::uint64_t idx = 0;; ++idx) {
        const FieldElement u = element_at(k, idx);
        Poly w(k);
        if (p == 2) {
            // absolute trace of u*T
            const Poly ut = Poly::monomial(u, 1) % g;
            Poly term = ut;
            w = ut;
            for (int i = 1; i < k->degree(); ++i) {
                term = mulmod(term, term, g);
                w = w + term;
            }
        } else {
            w = powmod(x + Poly::constant(u), (k->order() - 1) / 2, g) - Poly::constant(FieldElement::constant(k, 1));
        }
        if (w.is_zero()) continue;
        Poly h = poly_gcd(g, w);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            split_recursive(h, roots);
            split_recursive(g / h, roots);
            return;
        }
    }
}

/// Every root of g in its field by evaluation at each element; the order found is not canonical.
inline void scan_roots(const Poly& g, std::vector<FieldElement>& roots) {
    const Field& k = g.field();
    const std::uint64_t p = k->characteristic();
    const auto s = static_cast<std::size_t>(k->degree());
    const auto& m = k->modulus();
    const auto& red = k->reducer();
    std::vector<std::vector<Residue>> c;
    for (const auto& e : g.coeffs()) {
        std::vector<Residue> v(s, 0);
        std::copy(e.coeffs().begin(), e.coeffs().end(), v.begin());
        c.push_back(std::move(v));
    }
    std::vector<Residue> x(s, 0), acc(s);
    std::vector<std::uint64_t> wide(2 * s - 1);
    const auto n = static_cast<std::uint64_t>(k->order());
    for (std::uint64_t i = 0; i < n && static_cast<int>(roots.size()) < g.degree(); ++i) {
        // Horner, one reduction per coefficient; fine while p < 2^20 and s < 4096
        acc = c.back();
        for (std::size_t d = c.size() - 1; d-- > 0;) {
            std::fill(wide.begin(), wide.end(), 0);
            for (std::size_t a = 0; a < s; ++a) {
                if (!acc[a]) continue;
                for (std::size_t b = 0; b < s; ++b) wide[a + b] += std::uint64_t{acc[a]} * x[b];
            }
            for (std::size_t t = 2 * s - 1; t-- > s;) {
                const std::uint64_t r = red(wide[t]);
                if (!r) continue;
                for (std::size_t j = 0; j < s; ++j) wide[t - s + j] += (p - r) * m[j];
            }
            for (std::size_t j = 0; j < s; ++j) acc[j] = static_cast<Residue>(red(wide[j] + c[d][j]));
        }
        if (std::all_of(acc.begin(), acc.end(), [](Residue r) { return r == 0; })) roots.emplace_back(k, x);
        for (std::size_t j = 0; j < s && ++x[j] == p; ++j) x[j] = 0;
    }
}

}  // namespace detail

/**
 * Roots of a squarefree polynomial that splits into linear factors over its own field.
 * Small fields are scanned exhaustively, larger ones are split by gcd with (T+u)^((|K|-1)/2) - 1
 * (trace maps in characteristic 2).
 */
inline std::vector<FieldElement> split_roots(const Poly& g) {
    std::vector<FieldElement> roots;
    if (g.degree() < 1) return roots;
    const Field& k = g.field();
    if (k->order() <= kExhaustiveRootScanLimit) {
        detail::scan_roots(g, roots);
    } else {
        detail::split_recursive(monic(g), roots);
    }
    std::sort(roots.begin(), roots.end(), canonical_less);
    return roots;
}

/// Distinct roots of g lying in map.target(), via gcd(g, T^|K| - T).
inline std::vector<FieldElement> distinct_roots_in(const Poly& g, const EmbeddingMap& map) {
    if (g.degree() < 1) return {};
    const Poly h = map_poly(g, map);
    const Field& k = map.target();
    const Poly x = Poly::variable(k);
    const Poly frob = powmod(x, k->order(), h);
    const Poly split = poly_gcd(h, frob - x);
    return split_roots(split);
}

inline std::vector<FieldElement> distinct_roots_in(const Poly& g) {
    return distinct_roots_in(g, EmbeddingMap::identity(g.field()));
}

}  // namespace kts
