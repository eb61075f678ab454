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

#include "kts/fixtures.hpp"
#include "kts/serialize.hpp"
#include "oracle.hpp"

namespace kts {
namespace {

using reference::gf25;
using reference::gf81;
using reference::gf9;

TEST(Format, Elements) {
    const Field f = gf81();
    EXPECT_EQ(format_element(parse_element(f, "2*d^3 + 2*d^2 + 1")), "2*d^3+2*d^2+1");
    EXPECT_EQ(format_element(FieldElement(f)), "0");
    EXPECT_EQ(format_element(parse_element(f, "d")), "d");
    EXPECT_EQ(format_element(parse_element(f, "-1")), "2");
}

TEST(Format, Polynomials) {
    const Field f = gf9();
    EXPECT_EQ(format_poly(parse_poly(f, "(d+2)*T+1")), "(d+2)*T + 1");
    EXPECT_EQ(format_poly(parse_poly(f, "2*T^2 + d*T")), "2*T^2 + d*T");
    EXPECT_EQ(format_poly(Poly(f)), "0");
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        const Poly g = oracle::random_poly(f, static_cast<int>(rng() % 5), rng);
        ASSERT_EQ(parse_poly(f, format_poly(g)), g);
    }
}

TEST(Parse, Grammar) {
    const Field f = gf9();
    EXPECT_EQ(parse_element(f, " d ^ 2 "), parse_element(f, "d+1"));
    EXPECT_EQ(parse_element(f, "-(d+1)"), parse_element(f, "2*d+2"));
    EXPECT_EQ(parse_element(f, "d^8"), parse_element(f, "1"));
    EXPECT_EQ(parse_element(f, "7"), parse_element(f, "1"));
    EXPECT_EQ(parse_poly(f, "(T+1)^2"), parse_poly(f, "T^2+2*T+1"));
    EXPECT_EQ(parse_residue_list("2, 2,1"), (std::vector<Residue>{2, 2, 1}));
}

TEST(Parse, ErrorsNamePosition) {
    const Field f = gf9();
    auto position = [](auto fn) -> std::size_t {
        try {
            fn();
        } catch (const ParseError& e) {
            return e.position();
        }
        return std::string::npos;
    };
    EXPECT_EQ(position([&] { parse_element(f, "d+x"); }), 2u);
    EXPECT_EQ(position([&] { parse_element(f, "(d+1"); }), 4u);
    EXPECT_EQ(position([&] { parse_element(f, "T"); }), 0u);
    EXPECT_EQ(position([&] { parse_element(f, ""); }), 0u);
    EXPECT_EQ(position([&] { parse_element(make_prime_field(5), "1+d"); }), 2u);
    EXPECT_EQ(position([&] { parse_poly(f, "T^"); }), 2u);
    EXPECT_EQ(position([&] { parse_residue_list("2,,1"); }), 2u);
    try {
        parse_poly(f, "T + $");
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("'$'"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("position 4"), std::string::npos);
    }
}

TEST(Json, FieldAndValues) {
    const Field f = gf81();
    EXPECT_TRUE(same_field(field_from_json(to_json(f)), f));
    for (const auto& a : enumerate_elements(f)) ASSERT_EQ(element_from_json(f, to_json(a)), a);
    const Poly g = parse_poly(f, reference::kTowerI);
    EXPECT_EQ(poly_from_json(f, to_json(g)), g);
    EXPECT_EQ(rational_from_json(to_json(Rational(2, 3))), Rational(2, 3));
    const KummerSpec k = reference::spec(f, reference::kAlpha81, reference::kTowerJ);
    EXPECT_EQ(spec_from_json(to_json(k)), k);
}

void expect_same_report(const TowerReport& a, const TowerReport& b) {
    EXPECT_EQ(a.spec, b.spec);
    EXPECT_EQ(to_json(a.checks), to_json(b.checks));
    ASSERT_EQ(a.closure.has_value(), b.closure.has_value());
    if (a.closure) {
        EXPECT_EQ(a.closure->status, b.closure->status);
        EXPECT_EQ(a.closure->elements, b.closure->elements);
        EXPECT_TRUE(same_field(a.closure->ambient, b.closure->ambient));
        EXPECT_EQ(a.closure->embedding.generator_image(), b.closure->embedding.generator_image());
        EXPECT_EQ(a.closure->generations, b.closure->generations);
        EXPECT_EQ(a.closure->seed_size, b.closure->seed_size);
    }
    EXPECT_EQ(a.split_bound, b.split_bound);
    EXPECT_EQ(a.lambda_bound, b.lambda_bound);
    EXPECT_EQ(a.certified, b.certified);
    EXPECT_EQ(a.canonical_key, b.canonical_key);
    EXPECT_EQ(a.optimality.has_value(), b.optimality.has_value());
}

TEST(Json, ReportRoundTrip) {
    for (const char* poly : {"T", "T+1", "2*T+d"}) {
        const TowerReport r = certify(reference::spec(gf9(), "1", poly));
        const Json j = to_json(r);
        const TowerReport back = report_from_json(Json::parse(j.dump()));
        expect_same_report(r, back);
        EXPECT_EQ(to_json(back), j);
    }
    // closure that leaves the base field
    const TowerReport up = certify(reference::spec(make_prime_field(3), "1", "T+1"));
    ASSERT_TRUE(up.closure.has_value());
    ASSERT_GT(up.closure->ambient->degree(), 1);
    expect_same_report(up, report_from_json(to_json(up)));
}

TEST(Json, ReportSchema) {
    const Json j = to_json(certify(reference::spec(gf9(), "1", "T")));
    EXPECT_EQ(j["closure"]["status"], "closed");
    EXPECT_EQ(j["closure"]["size"], 3);
    EXPECT_EQ(j["closure"]["ambient_degree"], 2);
    EXPECT_EQ(j["split_bound"], 2);
    EXPECT_EQ(j["lambda_bound"], (Json{{"num", 2}, {"den", 1}}));
    EXPECT_EQ(j["certified"], true);
    EXPECT_EQ(j["canonical_key"], "2:[1]:[[],[1]]");
}

TEST(Json, OutcomeRoundTrip) {
    SearchConfig cfg;
    cfg.field = gf9();
    const SearchOutcome out = run_search(cfg);
    const Json j = to_json(out);
    EXPECT_EQ(to_json(outcome_from_json(Json::parse(j.dump()))), j);
    EXPECT_THROW(status_from_string("open"), DomainError);
}

TEST(Csv, OneRowPerClass) {
    SearchConfig cfg;
    cfg.field = gf25();
    cfg.alpha_filter = std::vector<FieldElement>{FieldElement::constant(cfg.field, 4)};
    const SearchOutcome out = run_search(cfg);
    const std::string csv = to_csv(out);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "key,alpha,f,s0_size,lambda_num,lambda_den,orbit_size,equations");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, out.classes.size());
    EXPECT_EQ(detail::csv_quote("a\"b"), "\"a\"\"b\"");
}

}  // namespace
}  // namespace kts
