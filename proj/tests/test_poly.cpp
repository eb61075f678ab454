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

#include <gtest/gtest.h>

#include "kts/extension.hpp"
#include "kts/text.hpp"
#include "oracle.hpp"

namespace kts {
namespace {

Field gf9() { return make_extension(3, 2, std::vector<Residue>{2, 2, 1}); }
Field gf25() { return make_extension(5, 2, std::vector<Residue>{2, 4, 1}); }

TEST(Poly, ComposeLinear) {
    const Field f = gf9();
    const FieldElement d = FieldElement::generator(f);
    const Poly t = Poly::variable(f);
    EXPECT_EQ(compose_linear(t, d), Poly::monomial(d, 1));
    const Poly g = parse_poly(f, "(d+2)*T^2 + T + 1");
    EXPECT_EQ(compose_linear(g, FieldElement::constant(f, 1)), g);
    EXPECT_EQ(compose_linear(parse_poly(f, "T+1"), d), parse_poly(f, "d*T+1"));
}

TEST(Poly, DivmodExamples) {
    const Field f = gf9();
    const auto [q, r] = poly_divmod(parse_poly(f, "T^2+1"), parse_poly(f, "T"));
    EXPECT_EQ(q, parse_poly(f, "T"));
    EXPECT_EQ(r, parse_poly(f, "1"));
    const Poly b = parse_poly(f, "d*T^3 + 2*T + d");
    const auto [q2, r2] = poly_divmod(b, b);
    EXPECT_EQ(q2, parse_poly(f, "1"));
    EXPECT_TRUE(r2.is_zero());
    EXPECT_THROW(poly_divmod(b, Poly(f)), DomainError);
}

TEST(Poly, DivmodRecombines) {
    std::mt19937_64 rng(3);
    for (const Field& f : {gf9(), gf25(), make_extension(7, 3)}) {
        for (int i = 0; i < 300; ++i) {
            const Poly a = oracle::random_poly(f, static_cast<int>(rng() % 8), rng);
            const Poly b = oracle::random_poly(f, static_cast<int>(rng() % 5), rng);
            const auto [q, r] = poly_divmod(a, b);
            ASSERT_EQ(q * b + r, a);
            ASSERT_LT(r.degree(), b.degree() == 0 ? 0 : b.degree());
        }
    }
}

TEST(Poly, Gcd) {
    const Field f = gf25();
    EXPECT_EQ(poly_gcd(parse_poly(f, "T^2-1"), parse_poly(f, "T-1")), parse_poly(f, "T+4"));
    const Poly a = parse_poly(f, "3*T^2 + d*T + 1");
    EXPECT_EQ(poly_gcd(a, Poly(f)), monic(a));
    EXPECT_EQ(poly_gcd(parse_poly(f, "T"), parse_poly(f, "T+1")), parse_poly(f, "1"));

    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const Poly c = oracle::random_poly(f, static_cast<int>(rng() % 3), rng);
        const Poly x = c * oracle::random_poly(f, 1 + static_cast<int>(rng() % 3), rng);
        const Poly y = c * oracle::random_poly(f, 1 + static_cast<int>(rng() % 3), rng);
        const Poly g = poly_gcd(x, y);
        ASSERT_TRUE((x % g).is_zero());
        ASSERT_TRUE((y % g).is_zero());
        ASSERT_TRUE((g % monic(c)).is_zero());
        for (const auto& r : oracle::roots_by_evaluation(x))
            if (y(r).is_zero()) { ASSERT_TRUE(g(r).is_zero()); }
    }
}

TEST(Poly, Separability) {
    const Field f = gf9();
    EXPECT_TRUE(is_separable(parse_poly(f, "T")));
    EXPECT_FALSE(is_separable(parse_poly(f, "T^2-T+1")));  // (T-2)^2 in characteristic 3
    EXPECT_TRUE(is_separable(parse_poly(f, "T*(T-1)")));
}

TEST(Roots, Examples) {
    const Field f9 = gf9();
    const auto r = distinct_roots_in(parse_poly(f9, "T^2+1"));
    ASSERT_EQ(r.size(), 2u);
    for (const auto& x : r) {
        EXPECT_FALSE(pow(x, 2).is_one());
        EXPECT_TRUE(pow(x, 4).is_one());
    }
    EXPECT_TRUE(distinct_roots_in(parse_poly(make_prime_field(3), "T^2+1")).empty());
    EXPECT_EQ(distinct_roots_in(parse_poly(f9, "T^9-T")).size(), 9u);
}

TEST(Roots, DegreeProfile) {
    const Field f3 = make_prime_field(3);
    EXPECT_EQ(factor_degree_profile(parse_poly(f3, "T^2+1")), std::vector<int>{2});
    EXPECT_EQ(factor_degree_profile(parse_poly(f3, "(T-1)^2*(T-2)")), (std::vector<int>{1, 1, 1}));
    const Field f9 = gf9();
    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
        const Poly g = oracle::random_poly(f9, 2, rng);
        int sum = 0;
        for (int k : factor_degree_profile(g)) sum += k;
        EXPECT_EQ(sum, 2);
    }
}

TEST(Roots, AllRootsExamples) {
    const Field f9 = gf9();
    const RootSet a = all_roots(parse_poly(f9, "T^2-T+1"));
    ASSERT_EQ(a.roots.size(), 1u);
    EXPECT_EQ(a.roots[0].first, FieldElement::constant(f9, 2));
    EXPECT_EQ(a.roots[0].second, 2);
    EXPECT_TRUE(same_field(a.ambient, f9));

    const RootSet b = all_roots(parse_poly(make_prime_field(3), "T^2+1"));
    EXPECT_EQ(b.ambient->size(), 9u);
    ASSERT_EQ(b.roots.size(), 2u);
    for (const auto& [x, k] : b.roots) EXPECT_EQ(k, 1);

    EXPECT_THROW(all_roots(parse_poly(f9, "3")), DomainError);
    try {
        all_roots(parse_poly(make_prime_field(3), "T^17 - T - 1"), {16});
        FAIL() << "expected budget error";
    } catch (const BudgetExceeded& e) {
        EXPECT_GT(e.required_degree(), 16);
    }
}

// distinct_roots_in and all_roots against exhaustive evaluation, 500 polynomials of degree <= 4
TEST(Roots, AgreeWithExhaustiveEvaluation) {
    std::mt19937_64 rng(2026);
    const Field fields[] = {gf9(), gf25()};
    for (int i = 0; i < 500; ++i) {
        const Field& f = fields[i % 2];
        const Poly g = oracle::random_poly(f, 1 + static_cast<int>(rng() % 4), rng);
        const auto want = oracle::roots_by_evaluation(g);
        ASSERT_EQ(distinct_roots_in(g), want) << format_poly(g);

        const RootSet rs = all_roots(g);
        int total = 0;
        std::vector<FieldElement> got;
        for (const auto& [x, k] : rs.roots) {
            total += k;
            got.push_back(x);
        }
        ASSERT_EQ(total, g.degree()) << format_poly(g);
        // in the ambient field, evaluation finds exactly these roots with these multiplicities
        const Poly h = map_poly(g, rs.embedding);
        std::sort(got.begin(), got.end(), canonical_less);
        ASSERT_EQ(got, oracle::roots_by_evaluation(h)) << format_poly(g);
        for (const auto& [x, k] : rs.roots) ASSERT_EQ(oracle::multiplicity(h, x), k);
        // closed under the Frobenius of the coefficient field
        for (const auto& [x, k] : rs.roots) {
            const FieldElement y = pow(x, f->order());
            ASSERT_TRUE(std::any_of(rs.roots.begin(), rs.roots.end(), [&](const auto& r) { return r.first == y && r.second == k; }));
        }
        ASSERT_EQ(is_separable(g), std::all_of(rs.roots.begin(), rs.roots.end(), [](const auto& r) { return r.second == 1; }));
    }
}

TEST(Roots, LargeFieldSplittingPath) {
    // above the exhaustive threshold: products of known linear factors
    std::mt19937_64 rng(9);
    for (const Field& f : {make_extension(3, 8), make_extension(5, 6), make_extension(1009, 2)}) {
        for (int i = 0; i < 20; ++i) {
            std::vector<FieldElement> want;
            Poly g = Poly::constant(FieldElement::constant(f, 1));
            for (int k = 0; k < 4; ++k) {
                const FieldElement r = oracle::random_element(f, rng);
                if (std::find(want.begin(), want.end(), r) != want.end()) continue;
                want.push_back(r);
                g = g * (Poly::variable(f) - Poly::constant(r));
            }
            g = g * (Poly::variable(f) - Poly::constant(want.front()));  // a repeated root
            std::sort(want.begin(), want.end(), canonical_less);
            ASSERT_EQ(distinct_roots_in(g), want);
        }
    }
}

TEST(Roots, SquarefreeInseparableInput) {
    // g' = 0: T^3 - d over GF(9) is (T - d^(1/3))^3
    const Field f = gf9();
    const RootSet rs = all_roots(parse_poly(f, "T^3 - d"));
    ASSERT_EQ(rs.roots.size(), 1u);
    EXPECT_EQ(rs.roots[0].second, 3);
    EXPECT_EQ(pow(rs.roots[0].first, 3), FieldElement::generator(f));
}

}  // namespace
}  // namespace kts
