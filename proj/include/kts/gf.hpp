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
 * @file gf.hpp
 * @brief Prime and extension field arithmetic over explicit moduli.
 *
 * Every field GF(p^s) is represented directly over GF(p) as GF(p)[d]/(modulus(d)) with a monic irreducible
 * modulus of degree s. A FieldElement is an ascending coefficient vector in d with trailing zeros stripped,
 * so the zero element has no coefficients. Subfields are not separate types: GF(p^e) inside GF(p^s) is the
 * set of elements fixed by a -> a^(p^e), and moving data between two representations goes through an
 * EmbeddingMap.
 *
 * Elements are ordered canonically by coefficient count, then lexicographically with the constant term
 * most significant. Enumeration and default moduli follow that order.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "errors.hpp"

namespace kts {

using Residue = std::uint32_t;
using WideUint = unsigned __int128;

namespace detail {

using ResVec = std::vector<Residue>;

template <class Vec>
void trim(Vec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

inline Residue mul_mod(Residue a, Residue b, Residue p) {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p);
}

inline Residue pow_mod(Residue a, std::uint64_t e, Residue p) {
    std::uint64_t result = 1 % p;
    std::uint64_t base = a % p;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<Residue>(result);
}

inline Residue inv_mod(Residue a, Residue p) {
    if (a % p == 0) throw DomainError("division by zero in GF(" + std::to_string(p) + ")");
    return pow_mod(a, p - 2, p);
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<int> prime_divisors(int n) {
    std::vector<int> out;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Polynomials over GF(p) as residue vectors; used only for modulus validation.

inline ResVec rp_sub(ResVec a, const ResVec& b, Residue p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

inline ResVec rp_mod(ResVec a, const ResVec& m, Residue p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const Residue lead_inv = inv_mod(m.back(), p);
    while (a.size() >= m.size()) {
        const Residue c = mul_mod(a.back(), lead_inv, p);
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t j = 0; j <= dm; ++j) a[shift + j] = (a[shift + j] + p - mul_mod(c, m[j], p)) % p;
        trim(a);
    }
    return a;
}

inline ResVec rp_mulmod(const ResVec& a, const ResVec& b, const ResVec& m, Residue p) {
    if (a.empty() || b.empty()) return {};
    ResVec prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + mul_mod(a[i], b[j], p)) % p;
    return rp_mod(std::move(prod), m, p);
}

inline ResVec rp_powmod(ResVec base, std::uint64_t e, const ResVec& m, Residue p) {
    ResVec result{1};
    result = rp_mod(result, m, p);
    base = rp_mod(std::move(base), m, p);
    while (e) {
        if (e & 1) result = rp_mulmod(result, base, m, p);
        base = rp_mulmod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

inline ResVec rp_gcd(ResVec a, ResVec b, Residue p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        ResVec r = rp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const Residue inv = inv_mod(a.back(), p);
        for (auto& c : a) c = mul_mod(c, inv, p);
    }
    return a;
}

inline ResVec rp_mul(const ResVec& a, const ResVec& b, Residue p) {
    if (a.empty() || b.empty()) return {};
    ResVec prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + mul_mod(a[i], b[j], p)) % p;
    trim(prod);
    return prod;
}

/// Inverse of a modulo an irreducible m by the extended Euclidean algorithm.
inline ResVec rp_inverse(const ResVec& a, const ResVec& m, Residue p) {
    ResVec r0 = m, r1 = rp_mod(a, m, p);
    ResVec t0, t1{1};
    while (r1.size() > 1) {
        const std::size_t d1 = r1.size() - 1;
        const Residue lead_inv = inv_mod(r1.back(), p);
        ResVec q(r0.size() - d1, 0);
        while (r0.size() > d1) {
            const Residue c = mul_mod(r0.back(), lead_inv, p);
            const std::size_t shift = r0.size() - 1 - d1;
            q[shift] = c;
            for (std::size_t j = 0; j <= d1; ++j) r0[shift + j] = (r0[shift + j] + p - mul_mod(c, r1[j], p)) % p;
            trim(r0);
        }
        ResVec t2 = rp_sub(t0, rp_mul(q, t1, p), p);
        std::swap(r0, r1);  // r0 now held the remainder
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r1.empty()) throw DomainError("element is not invertible");
    const Residue c = inv_mod(r1[0], p);
    for (auto& x : t1) x = mul_mod(x, c, p);
    return rp_mod(std::move(t1), m, p);
}

/// x mod p for any 64-bit x via a precomputed reciprocal; the quotient estimate is at most two short.
class Barrett {
  public:
    explicit Barrett(std::uint64_t p) : p_(p), r_(~std::uint64_t{0} / p) {}
    std::uint64_t operator()(std::uint64_t x) const {
        const auto q = static_cast<std::uint64_t>((static_cast<WideUint>(x) * r_) >> 64);
        std::uint64_t t = x - q * p_;
        while (t >= p_) t -= p_;
        return t;
    }

  private:
    std::uint64_t p_, r_;
};

/// x^(p^k) mod m for k = 0..count.
inline std::vector<ResVec> frobenius_orbit_of_x(const ResVec& m, Residue p, int count) {
    std::vector<ResVec> out;
    out.reserve(static_cast<std::size_t>(count) + 1);
    out.push_back(rp_mod(ResVec{0, 1}, m, p));
    for (int k = 1; k <= count; ++k) out.push_back(rp_powmod(out.back(), p, m, p));
    return out;
}

/// Smallest k with gcd(m, x^(p^k) - x) != 1, i.e. the least degree of an irreducible factor.
inline int smallest_factor_degree(const ResVec& m, Residue p) {
    const int s = static_cast<int>(m.size()) - 1;
    const auto orbit = frobenius_orbit_of_x(m, p, s);
    for (int k = 1; k <= s; ++k) {
        const ResVec g = rp_gcd(m, rp_sub(orbit[static_cast<std::size_t>(k)], ResVec{0, 1}, p), p);
        if (g.size() > 1) return k;
    }
    return s;
}

/// Rabin's test: x^(p^s) = x mod m and gcd(m, x^(p^(s/l)) - x) = 1 for every prime l | s.
inline bool is_irreducible(const ResVec& m, Residue p) {
    const int s = static_cast<int>(m.size()) - 1;
    if (s < 1) return false;
    if (s == 1) return true;
    const auto orbit = frobenius_orbit_of_x(m, p, s);
    const ResVec x = rp_mod(ResVec{0, 1}, m, p);
    if (orbit[static_cast<std::size_t>(s)] != x) return false;
    for (int l : prime_divisors(s)) {
        const ResVec g = rp_gcd(m, rp_sub(orbit[static_cast<std::size_t>(s / l)], ResVec{0, 1}, p), p);
        if (g.size() > 1) return false;
    }
    return true;
}

inline WideUint checked_power(Residue p, int s) {
    WideUint q = 1;
    for (int i = 0; i < s; ++i) {
        if (q > (~WideUint{0} >> 1) / p) throw DomainError("field order p^s does not fit in 127 bits");
        q *= p;
    }
    return q;
}

}  // namespace detail

/// GF(p^s) as GF(p)[d]/(modulus). Immutable; shared through Field handles.
class FieldCtx {
  public:
    FieldCtx(Residue p, int s, std::vector<Residue> modulus)
        : p_(p), s_(s), modulus_(std::move(modulus)), order_(detail::checked_power(p, s)), reducer_(p) {
        label_ = "GF(" + std::to_string(p_) + "^" + std::to_string(s_) + ")[";
        for (std::size_t i = 0; i < modulus_.size(); ++i) label_ += (i ? "," : "") + std::to_string(modulus_[i]);
        label_ += "]";
    }

    Residue characteristic() const noexcept { return p_; }
    int degree() const noexcept { return s_; }
    const std::vector<Residue>& modulus() const noexcept { return modulus_; }
    const std::string& label() const noexcept { return label_; }
    WideUint order() const noexcept { return order_; }
    const detail::Barrett& reducer() const noexcept { return reducer_; }

    /// Element count as a 64-bit integer; throws for fields too large to enumerate.
    std::uint64_t size() const {
        if (order_ > WideUint{1} << 62) throw DomainError("field " + label_ + " is too large to enumerate");
        return static_cast<std::uint64_t>(order_);
    }

    friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
        return a.p_ == b.p_ && a.s_ == b.s_ && a.modulus_ == b.modulus_;
    }

  private:
    Residue p_;
    int s_;
    std::vector<Residue> modulus_;
    WideUint order_;
    detail::Barrett reducer_;
    std::string label_;
};

using Field = std::shared_ptr<const FieldCtx>;

inline bool same_field(const Field& a, const Field& b) {
    if (a == b) return true;
    return a && b && *a == *b;
}

inline void require_same_field(const Field& a, const Field& b) {
    if (!same_field(a, b))
        throw ContextError("field mismatch: " + (a ? a->label() : std::string("<none>")) + " vs " +
                           (b ? b->label() : std::string("<none>")));
}

inline Field make_prime_field(std::uint64_t p) {
    if (p > 0xFFFFFFFFull || !detail::is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    return std::make_shared<const FieldCtx>(static_cast<Residue>(p), 1, std::vector<Residue>{0, 1});
}

/// Lexicographically smallest monic irreducible of degree s under the canonical coefficient order.
inline std::vector<Residue> smallest_irreducible(Residue p, int s) {
    if (s == 1) return {0, 1};
    // lower coefficients c0..c_{s-1}, c0 most significant
    // a zero constant term means T divides it, so start at c0 = 1
    std::vector<Residue> m(static_cast<std::size_t>(s) + 1, 0);
    m.front() = 1;
    m.back() = 1;
    for (;;) {
        if (detail::is_irreducible(m, p)) return m;
        int i = s - 1;
        while (i >= 0 && m[static_cast<std::size_t>(i)] == p - 1) m[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) throw DomainError("no irreducible polynomial found");
        ++m[static_cast<std::size_t>(i)];
    }
}

/**
 * Process-wide table of default moduli keyed by (p, s). Entries are computed on first use or seeded
 * from a persisted cache so that default fields stay stable across versions.
 */
class DefaultModuli {
  public:
    static DefaultModuli& instance() {
        static DefaultModuli registry;
        return registry;
    }

    std::vector<Residue> get(Residue p, int s) {
        {
            std::lock_guard lock(mutex_);
            if (auto it = table_.find({p, s}); it != table_.end()) return it->second;
        }
        auto m = smallest_irreducible(p, s);
        std::lock_guard lock(mutex_);
        return table_.emplace(std::pair{p, s}, std::move(m)).first->second;
    }

    /// Installs a modulus for (p, s); it must be monic irreducible of degree s.
    void seed(Residue p, int s, std::vector<Residue> m) {
        detail::trim(m);
        if (static_cast<int>(m.size()) != s + 1 || m.back() != 1 || !detail::is_irreducible(m, p))
            throw DomainError("cached modulus for GF(" + std::to_string(p) + "^" + std::to_string(s) + ") is invalid");
        std::lock_guard lock(mutex_);
        table_[{p, s}] = std::move(m);
    }

    std::map<std::pair<Residue, int>, std::vector<Residue>> snapshot() const {
        std::lock_guard lock(mutex_);
        return table_;
    }

  private:
    mutable std::mutex mutex_;
    std::map<std::pair<Residue, int>, std::vector<Residue>> table_;
};

/**
 * GF(p^s) with the given modulus (ascending coefficients, monic, degree s), or the smallest irreducible
 * when none is given. A reducible modulus is rejected with the degree of one of its irreducible factors.
 */
inline Field make_extension(std::uint64_t p, int s, std::optional<std::vector<Residue>> modulus = std::nullopt) {
    if (p > 0xFFFFFFFFull || !detail::is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    if (s < 1) throw DomainError("extension degree must be at least 1");
    const auto pr = static_cast<Residue>(p);
    std::vector<Residue> m;
    if (modulus) {
        m = *modulus;
        for (auto& c : m) c %= pr;
        detail::trim(m);
        if (static_cast<int>(m.size()) != s + 1 || m.back() != 1)
            throw DomainError("modulus must be monic of degree " + std::to_string(s));
        if (!detail::is_irreducible(m, pr))
            throw DomainError("modulus is reducible: it has an irreducible factor of degree " +
                              std::to_string(detail::smallest_factor_degree(m, pr)));
    } else {
        m = DefaultModuli::instance().get(pr, s);
    }
    return std::make_shared<const FieldCtx>(pr, s, std::move(m));
}

class FieldElement {
  public:
    FieldElement() = default;
    explicit FieldElement(Field field) : field_(std::move(field)) {}

    /// Reduces coefficients mod p and, if there are more than s of them, mod the field modulus.
    FieldElement(Field field, std::vector<Residue> coeffs) : field_(std::move(field)) {
        if (!field_) throw ContextError("element without a field");
        const Residue p = field_->characteristic();
        for (auto& c : coeffs) c %= p;
        if (static_cast<int>(coeffs.size()) > field_->degree()) coeffs = detail::rp_mod(std::move(coeffs), field_->modulus(), p);
        detail::trim(coeffs);
        coeffs_.assign(coeffs.begin(), coeffs.end());
    }

    static FieldElement constant(const Field& field, std::int64_t value) {
        const auto p = static_cast<std::int64_t>(field->characteristic());
        const std::int64_t r = ((value % p) + p) % p;
        return FieldElement(field, {static_cast<Residue>(r)});
    }

    /// The class of d, i.e. a root of the field modulus.
    static FieldElement generator(const Field& field) { return FieldElement(field, {0, 1}); }

    const Field& field() const noexcept { return field_; }
    std::span<const Residue> coeffs() const noexcept { return {coeffs_.data(), coeffs_.size()}; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 1; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.coeffs_ == b.coeffs_ && same_field(a.field_, b.field_);
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        require_same_field(a.field_, b.field_);
        const Residue p = a.field_->characteristic();
        FieldElement r(a.field_);
        r.coeffs_.assign(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
            const Residue x = i < a.coeffs_.size() ? a.coeffs_[i] : 0;
            const Residue y = i < b.coeffs_.size() ? b.coeffs_[i] : 0;
            r.coeffs_[i] = static_cast<Residue>((static_cast<std::uint64_t>(x) + y) % p);
        }
        detail::trim(r.coeffs_);
        return r;
    }

    friend FieldElement operator-(const FieldElement& a) {
        if (!a.field_) throw ContextError("element without a field");
        const Residue p = a.field_->characteristic();
        FieldElement r = a;
        for (auto& c : r.coeffs_) c = c ? p - c : 0;
        return r;
    }

    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        require_same_field(a.field_, b.field_);
        if (a.is_zero() || b.is_zero()) return FieldElement(a.field_);
        const FieldCtx& f = *a.field_;
        const std::uint64_t p = f.characteristic();
        const auto s = static_cast<std::size_t>(f.degree());
        boost::container::small_vector<std::uint64_t, 32> prod(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
        // below 2^20 the unreduced sums stay far from overflow, so reduce once per coefficient
        const bool lazy = p < (1u << 20) && s < 4096;
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (!a.coeffs_[i]) continue;
            const std::uint64_t ai = a.coeffs_[i];
            if (lazy)
                for (std::size_t j = 0; j < b.coeffs_.size(); ++j) prod[i + j] += ai * b.coeffs_[j];
            else
                for (std::size_t j = 0; j < b.coeffs_.size(); ++j) prod[i + j] = (prod[i + j] + ai * b.coeffs_[j]) % p;
        }
        const auto& m = f.modulus();
        const auto& red = f.reducer();
        for (std::size_t i = prod.size(); i-- > s;) {
            const std::uint64_t c = red(prod[i]);
            if (!c) continue;
            const std::uint64_t neg = p - c;
            if (lazy)
                for (std::size_t j = 0; j < s; ++j) prod[i - s + j] += neg * m[j];
            else
                for (std::size_t j = 0; j < s; ++j) prod[i - s + j] = (prod[i - s + j] + neg * m[j]) % p;
            prod[i] = 0;
        }
        for (std::size_t i = 0; i < std::min(prod.size(), s); ++i) prod[i] = red(prod[i]);
        FieldElement r(a.field_);
        r.coeffs_.resize(std::min(prod.size(), s));
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = static_cast<Residue>(prod[i]);
        detail::trim(r.coeffs_);
        return r;
    }

    FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
    FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
    FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

  private:
    Field field_;
    // inline storage covers every degree the default budget allows
    boost::container::small_vector<Residue, 16> coeffs_;
};

inline FieldElement pow(const FieldElement& a, WideUint e) {
    FieldElement result = FieldElement::constant(a.field(), 1);
    FieldElement base = a;
    while (e) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

inline FieldElement inv(const FieldElement& a) {
    if (!a.field()) throw ContextError("element without a field");
    if (a.is_zero()) throw DomainError("division by zero");
    const auto c = a.coeffs();
    return FieldElement(a.field(), detail::rp_inverse({c.begin(), c.end()}, a.field()->modulus(), a.field()->characteristic()));
}

/// a^n for signed n; negative exponents invert first.
inline FieldElement pow(const FieldElement& a, std::int64_t n) {
    if (n >= 0) return pow(a, static_cast<WideUint>(n));
    if (a.is_zero()) throw DomainError("zero raised to a negative power");
    return pow(inv(a), static_cast<WideUint>(-(n + 1)) + 1);
}

inline FieldElement pow(const FieldElement& a, int n) { return pow(a, static_cast<std::int64_t>(n)); }

inline FieldElement frobenius(const FieldElement& a) { return pow(a, static_cast<WideUint>(a.field()->characteristic())); }

/// True iff a lies in the subfield with p^d elements.
inline bool in_subfield(const FieldElement& a, int d) {
    const int s = a.field()->degree();
    if (d < 1 || s % d != 0) throw DomainError("subfield degree " + std::to_string(d) + " does not divide " + std::to_string(s));
    return pow(a, detail::checked_power(a.field()->characteristic(), d)) == a;
}

inline bool canonical_less(const FieldElement& a, const FieldElement& b) {
    const auto x = a.coeffs();
    const auto y = b.coeffs();
    if (x.size() != y.size()) return x.size() < y.size();
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

struct CanonicalLess {
    bool operator()(const FieldElement& a, const FieldElement& b) const { return canonical_less(a, b); }
};

/// Number of elements whose coefficient vector has exactly `length` entries.
inline std::uint64_t elements_of_length(Residue p, int length) {
    if (length == 0) return 1;
    std::uint64_t n = p - 1;
    for (int i = 1; i < length; ++i) n *= p;
    return n;
}

/// The element at position `index` of the canonical order.
inline FieldElement element_at(const Field& field, std::uint64_t index) {
    const Residue p = field->characteristic();
    int length = 0;
    while (index >= elements_of_length(p, length)) {
        index -= elements_of_length(p, length);
        ++length;
        if (length > field->degree()) throw DomainError("element index out of range");
    }
    std::vector<Residue> c(static_cast<std::size_t>(length), 0);
    if (length > 0) {
        // least significant digit is the leading coefficient, base p-1, offset 1
        c.back() = static_cast<Residue>(index % (p - 1)) + 1;
        index /= (p - 1);
        for (int i = length - 2; i >= 0; --i) {
            c[static_cast<std::size_t>(i)] = static_cast<Residue>(index % p);
            index /= p;
        }
    }
    return FieldElement(field, std::move(c));
}

inline std::uint64_t element_index(const FieldElement& a) {
    const Residue p = a.field()->characteristic();
    const auto c = a.coeffs();
    std::uint64_t offset = 0;
    for (int l = 0; l < static_cast<int>(c.size()); ++l) offset += elements_of_length(p, l);
    if (c.empty()) return 0;
    std::uint64_t within = 0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) within = within * p + c[i];
    within = within * (p - 1) + (c.back() - 1);
    return offset + within;
}

/// All p^s elements in canonical order.
inline std::vector<FieldElement> enumerate_elements(const Field& field) {
    const std::uint64_t n = field->size();
    if (n > (std::uint64_t{1} << 26)) throw DomainError("refusing to materialize " + field->label());
    std::vector<FieldElement> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(element_at(field, i));
    return out;
}

/// Ring embedding GF(p^a) -> GF(p^b), a | b, fixed by the image of the source generator.
class EmbeddingMap {
  public:
    EmbeddingMap() = default;

    EmbeddingMap(Field source, Field target, FieldElement generator_image)
        : source_(std::move(source)), target_(std::move(target)), image_(std::move(generator_image)) {
        if (!source_ || !target_) throw ContextError("embedding without fields");
        if (source_->characteristic() != target_->characteristic())
            throw ContextError("embedding between different characteristics");
        if (target_->degree() % source_->degree() != 0)
            throw ContextError("cannot embed " + source_->label() + " into " + target_->label() + ": degree does not divide");
        require_same_field(image_.field(), target_);
        const auto& m = source_->modulus();
        FieldElement acc(target_);
        for (std::size_t i = m.size(); i-- > 0;) acc = acc * image_ + FieldElement::constant(target_, m[i]);
        if (!acc.is_zero()) throw ContextError("generator image is not a root of the source modulus");
        powers_.reserve(static_cast<std::size_t>(source_->degree()));
        FieldElement power = FieldElement::constant(target_, 1);
        for (int i = 0; i < source_->degree(); ++i) {
            powers_.push_back(power);
            power *= image_;
        }
        identity_ = same_field(source_, target_) && image_ == FieldElement::generator(target_);
    }

    static EmbeddingMap identity(const Field& field) { return EmbeddingMap(field, field, FieldElement::generator(field)); }

    const Field& source() const noexcept { return source_; }
    const Field& target() const noexcept { return target_; }
    const FieldElement& generator_image() const noexcept { return image_; }
    bool is_identity() const noexcept { return identity_; }

    FieldElement operator()(const FieldElement& a) const {
        require_same_field(a.field(), source_);
        const auto c = a.coeffs();
        if (identity_) return FieldElement(target_, std::vector<Residue>(c.begin(), c.end()));
        const Residue p = target_->characteristic();
        std::vector<Residue> out(static_cast<std::size_t>(target_->degree()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!c[i]) continue;
            const auto img = powers_[i].coeffs();
            for (std::size_t j = 0; j < img.size(); ++j)
                out[j] = static_cast<Residue>((out[j] + static_cast<std::uint64_t>(c[i]) * img[j]) % p);
        }
        return FieldElement(target_, std::move(out));
    }

  private:
    Field source_;
    Field target_;
    FieldElement image_;
    std::vector<FieldElement> powers_;
    bool identity_ = false;
};

/// second after first.
inline EmbeddingMap compose(const EmbeddingMap& first, const EmbeddingMap& second) {
    require_same_field(first.target(), second.source());
    return EmbeddingMap(first.source(), second.target(), second(first.generator_image()));
}

/// Checked embedding of `a` from `from` into `to` through `map`.
inline FieldElement embed(const FieldElement& a, const Field& from, const Field& to, const EmbeddingMap& map) {
    if (from->characteristic() != to->characteristic() || to->degree() % from->degree() != 0)
        throw ContextError("cannot embed " + from->label() + " into " + to->label());
    if (!same_field(map.source(), from) || !same_field(map.target(), to))
        throw ContextError("embedding map does not match the given fields");
    require_same_field(a.field(), from);
    return map(a);
}

}  // namespace kts
