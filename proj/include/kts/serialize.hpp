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
 * @file serialize.hpp
 * @brief JSON and CSV forms of fields, specs, tower reports and search outcomes.
 *
 * Elements are ascending residue arrays, polynomials are arrays of those. Every JSON value written here
 * is read back by the matching *_from_json function to an equal value.
 */

#pragma once

#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "search.hpp"
#include "text.hpp"

namespace kts {

using Json = nlohmann::ordered_json;

inline Json to_json(const Field& f) { return Json{{"p", f->characteristic()}, {"s", f->degree()}, {"modulus", f->modulus()}}; }

inline Field field_from_json(const Json& j) {
    return make_extension(j.at("p").get<std::uint64_t>(), j.at("s").get<int>(), j.at("modulus").get<std::vector<Residue>>());
}

inline Json to_json(const FieldElement& a) {
    Json arr = Json::array();
    for (Residue r : a.coeffs()) arr.push_back(r);
    return arr;
}

inline FieldElement element_from_json(const Field& f, const Json& j) { return FieldElement(f, j.get<std::vector<Residue>>()); }

inline Json to_json(const Poly& g) {
    Json arr = Json::array();
    for (const auto& c : g.coeffs()) arr.push_back(to_json(c));
    return arr;
}

inline Poly poly_from_json(const Field& f, const Json& j) {
    std::vector<FieldElement> v;
    for (const auto& c : j) v.push_back(element_from_json(f, c));
    return Poly(f, std::move(v));
}

inline Json to_json(const Rational& r) { return Json{{"num", r.num()}, {"den", r.den()}}; }

inline Rational rational_from_json(const Json& j) { return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>()); }

inline Json to_json(const KummerSpec& spec) {
    return Json{{"field", to_json(spec.field)},
                {"m", spec.m},
                {"alpha", to_json(spec.alpha)},
                {"f", to_json(spec.f)},
                {"alpha_text", format_element(spec.alpha)},
                {"f_text", format_poly(spec.f)}};
}

/// Reuses `field` when the descriptor names the same field, so that related values share one handle.
inline KummerSpec spec_from_json(const Json& j, Field field = nullptr) {
    const Field described = field_from_json(j.at("field"));
    if (!field || !same_field(field, described)) field = described;
    return KummerSpec{field, j.at("m").get<int>(), element_from_json(field, j.at("alpha")), poly_from_json(field, j.at("f"))};
}

inline Json to_json(const HypothesisChecks& h) {
    Json j{{"shape", h.shape},
           {"gcd_m_q", h.gcd_m_q},
           {"q_mod_m", h.q_mod_m},
           {"gcd_condition", h.gcd_condition},
           {"splits", h.splits},
           {"disjoint_zero_sets", h.disjoint_zero_sets},
           {"separable_f", h.separable_f},
           {"coprime_b1_b2", h.coprime_b1_b2}};
    return j;
}

inline HypothesisChecks checks_from_json(const Json& j) {
    HypothesisChecks h;
    h.shape = j.at("shape");
    h.gcd_m_q = j.at("gcd_m_q");
    h.q_mod_m = j.at("q_mod_m");
    h.gcd_condition = j.at("gcd_condition");
    h.splits = j.at("splits");
    h.disjoint_zero_sets = j.at("disjoint_zero_sets");
    h.separable_f = j.at("separable_f");
    h.coprime_b1_b2 = j.at("coprime_b1_b2");
    return h;
}

inline ClosureStatus status_from_string(const std::string& s) {
    for (auto st : {ClosureStatus::Closed, ClosureStatus::ExceededSize, ClosureStatus::ExceededDegree})
        if (s == to_string(st)) return st;
    throw DomainError("unknown closure status '" + s + "'");
}

inline Json to_json(const ClosureResult& c) {
    Json elems = Json::array();
    Json texts = Json::array();
    for (const auto& e : c.elements) {
        elems.push_back(to_json(e));
        texts.push_back(format_element(e));
    }
    return Json{{"status", to_string(c.status)},
                {"size", c.size()},
                {"ambient_degree", c.ambient->degree()},
                {"ambient", to_json(c.ambient)},
                {"base_generator_image", to_json(c.embedding.generator_image())},
                {"elements", elems},
                {"elements_text", texts},
                {"generations", c.generations},
                {"seed_size", c.seed_size}};
}

inline ClosureResult closure_from_json(const Json& j, const Field& base) {
    ClosureResult c;
    c.status = status_from_string(j.at("status").get<std::string>());
    c.ambient = field_from_json(j.at("ambient"));
    if (same_field(c.ambient, base)) c.ambient = base;
    c.embedding = EmbeddingMap(base, c.ambient, element_from_json(c.ambient, j.at("base_generator_image")));
    for (const auto& e : j.at("elements")) c.elements.push_back(element_from_json(c.ambient, e));
    c.generations = j.at("generations");
    c.seed_size = j.at("seed_size");
    return c;
}

inline Json to_json(const TowerReport& r) {
    Json j;
    j["spec"] = to_json(r.spec);
    j["checks"] = to_json(r.checks);
    j["closure"] = r.closure ? to_json(*r.closure) : Json(nullptr);
    j["split_bound"] = r.split_bound;
    j["lambda_bound"] = r.lambda_bound ? to_json(*r.lambda_bound) : Json(nullptr);
    j["certified"] = r.certified;
    j["canonical_key"] = r.canonical_key;
    j["optimality"] = r.optimality ? Json{{"ihara_bound", to_json(r.optimality->ihara_bound)}, {"optimal", r.optimality->optimal}}
                                   : Json(nullptr);
    return j;
}

inline TowerReport report_from_json(const Json& j, Field field = nullptr) {
    TowerReport r;
    r.spec = spec_from_json(j.at("spec"), std::move(field));
    r.checks = checks_from_json(j.at("checks"));
    if (!j.at("closure").is_null()) r.closure = closure_from_json(j.at("closure"), r.spec.field);
    r.split_bound = j.at("split_bound");
    if (!j.at("lambda_bound").is_null()) r.lambda_bound = rational_from_json(j.at("lambda_bound"));
    r.certified = j.at("certified");
    r.canonical_key = j.at("canonical_key");
    if (!j.at("optimality").is_null())
        r.optimality = Optimality{rational_from_json(j.at("optimality").at("ihara_bound")), j.at("optimality").at("optimal")};
    return r;
}

inline Json to_json(const SearchOutcome& o) {
    Json classes = Json::array();
    for (const auto& c : o.classes)
        classes.push_back(Json{{"key", c.key},
                               {"representative", to_json(c.representative)},
                               {"equations", c.equations},
                               {"orbit_size", c.orbit_size},
                               {"report", to_json(c.report)}});
    Json rejected = Json::object();
    for (const auto& [k, v] : o.rejected_by) rejected[k] = v;
    return Json{{"total_candidates", o.total_candidates},
                {"passing_equations", o.passing_equations},
                {"exceeded_budget", o.exceeded_budget},
                {"rejected_by", rejected},
                {"classes", classes}};
}

inline SearchOutcome outcome_from_json(const Json& j, Field field = nullptr) {
    SearchOutcome o;
    o.total_candidates = j.at("total_candidates");
    o.passing_equations = j.at("passing_equations");
    o.exceeded_budget = j.at("exceeded_budget");
    for (const auto& [k, v] : j.at("rejected_by").items()) o.rejected_by[k] = v.get<std::uint64_t>();
    for (const auto& c : j.at("classes")) {
        SearchClass sc;
        sc.key = c.at("key");
        sc.representative = spec_from_json(c.at("representative"), field);
        field = sc.representative.field;
        sc.report = report_from_json(c.at("report"), field);
        sc.equations = c.at("equations");
        sc.orbit_size = c.at("orbit_size");
        o.classes.push_back(std::move(sc));
    }
    return o;
}

namespace detail {

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace detail

/// One row per class: key, alpha, f, |S0|, lambda num/den, orbit size, passing equations.
inline std::string to_csv(const SearchOutcome& o) {
    std::ostringstream out;
    out << "key,alpha,f,s0_size,lambda_num,lambda_den,orbit_size,equations\n";
    for (const auto& c : o.classes) {
        const Rational lam = c.report.lambda_bound.value_or(Rational(0));
        out << detail::csv_quote(c.key) << ',' << detail::csv_quote(format_element(c.representative.alpha)) << ','
            << detail::csv_quote(format_poly(c.representative.f)) << ',' << (c.report.closure ? c.report.closure->size() : 0)
            << ',' << lam.num() << ',' << lam.den() << ',' << c.orbit_size << ',' << c.equations << '\n';
    }
    return out.str();
}

}  // namespace kts
