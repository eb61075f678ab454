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
 * @file fixtures.hpp
 * @brief Published examples as golden runs.
 *
 * Each fixture rebuilds a published equation, certifies or searches it, and compares against the
 * published values only: set sizes, limit bounds, class counts and the listed sets. Anything derived
 * (keys, witnesses, orbit sizes) is recomputed on the fly.
 */

#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "search.hpp"
#include "text.hpp"

namespace kts {

struct FixtureCheck {
    std::string what;
    bool ok = false;
    std::string detail;
};

struct FixtureResult {
    std::string name;
    std::vector<FixtureCheck> checks;
    std::vector<std::string> notes;  // informational, never affects the verdict
    double seconds = 0;

    bool passed() const {
        if (checks.empty()) return false;
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

struct FixtureOptions {
    ClosureLimits limits;
    unsigned jobs = 1;
};

namespace reference {

inline Field gf9() { return make_extension(3, 2, std::vector<Residue>{2, 2, 1}); }
inline Field gf25() { return make_extension(5, 2, std::vector<Residue>{2, 4, 1}); }
inline Field gf81() { return make_extension(3, 4, std::vector<Residue>{2, 0, 0, 2, 1}); }

inline KummerSpec spec(const Field& f, const char* alpha, const char* poly) {
    return make_kummer_spec(f, 2, parse_element(f, alpha), parse_poly(f, poly));
}

inline std::vector<FieldElement> elements(const Field& f, const std::vector<const char*>& texts) {
    std::vector<FieldElement> out;
    for (const char* t : texts) out.push_back(parse_element(f, t));
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

struct TableRow {
    const char* alpha;
    const char* f;
    const char* listed_c;  // the printed change of variables X = c x
};

inline const std::vector<TableRow>& table1_rows() {
    static const std::vector<TableRow> rows = {
        {"d+1", "(d+2)*T", "d"}, {"d+1", "(2*d+1)*T", "d^4"}, {"2", "(d+1)*T", "d^3"},
        {"2*d+2", "2*d*T", "2"}, {"1", "2*T", "d^5"},         {"2*d+2", "d*T", "d^2"},
    };
    return rows;
}

inline constexpr const char* kAlpha81 = "2*d^3+2*d^2+1";
inline constexpr const char* kTowerI = "(2*d^3+2*d^2+2)*T + (d^3+d^2+2)";
inline constexpr const char* kTowerJ = "(d^3+d^2)*T + (2*d^3+2*d^2)";

}  // namespace reference

namespace detail {

class FixtureLog {
  public:
    explicit FixtureLog(FixtureResult& r) : r_(r) {}

    bool check(std::string what, bool ok, std::string detail = {}) {
        r_.checks.push_back(FixtureCheck{std::move(what), ok, std::move(detail)});
        return ok;
    }
    void note(std::string text) { r_.notes.push_back(std::move(text)); }

  private:
    FixtureResult& r_;
};

inline std::string join_elements(const std::vector<FieldElement>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_element(v[i]);
    return out + "}";
}

inline void check_report(FixtureLog& log, const TowerReport& r, std::size_t size, const Rational& lambda) {
    log.check("certified", r.certified);
    if (!r.closure) {
        log.check("closure computed", false);
        return;
    }
    log.check("|S0| = " + std::to_string(size), r.closure->size() == size, "got " + std::to_string(r.closure->size()));
    log.check("split bound = 2", r.split_bound == 2, "got " + std::to_string(r.split_bound));
    log.check("lambda bound = " + lambda.to_string(), r.lambda_bound && *r.lambda_bound == lambda,
              r.lambda_bound ? "got " + r.lambda_bound->to_string() : "none");
    const RecursionSpec rec = to_recursion(r.spec);
    log.check("S0 is closed and minimal", verify_closure(rec, *r.closure) && is_minimal_closure(rec, *r.closure));
}

inline void check_set(FixtureLog& log, const ClosureResult& c, const std::vector<FieldElement>& want, const std::string& label) {
    const bool same_ambient = same_field(c.ambient, want.front().field());
    log.check("S0 = " + label, same_ambient && c.elements == want, "got " + join_elements(c.elements));
}

inline void fixture_ex1(FixtureLog& log, const FixtureOptions& opt) {
    const Field f = reference::gf9();
    const TowerReport r = certify(reference::spec(f, "1", "T"), opt.limits);
    check_report(log, r, 3, Rational(2));
    if (r.closure) check_set(log, *r.closure, reference::elements(f, {"0", "1", "2"}), "GF(3)");
    if (r.optimality) log.check("optimal against A(9) = 2", r.optimality->optimal);
}

inline void fixture_ex2(FixtureLog& log, const FixtureOptions& opt) {
    const Field f = reference::gf9();
    const TowerReport r = certify(reference::spec(f, "1", "T+1"), opt.limits);
    check_report(log, r, 7, Rational(2, 3));
    if (r.closure) check_set(log, *r.closure, reference::elements(f, {"0", "1", "2", "d", "d^3", "d^5", "d^7"}), "{0,1,2,d,d^3,d^5,d^7}");
}

inline void fixture_ex25(FixtureLog& log, const FixtureOptions& opt) {
    const Field f = reference::gf25();
    const auto listed = reference::elements(f, {"0", "2*d+4", "4*d+3", "d+2", "3*d+1"});
    // read as y^2 = (x^2 + (d+2)x) / ((d+2)x + 1); the printed minus sign does not reproduce the listed set
    const RecursionSpec rec{f, 2, parse_poly(f, "T^2 + (d+2)*T"), parse_poly(f, "(d+2)*T + 1")};
    const auto kummer = match_kummer(rec);
    if (!log.check("equation is of Kummer form", kummer.has_value())) return;
    log.note("Kummer parameters: alpha = " + format_element(kummer->alpha) + ", f = " + format_poly(kummer->f));
    log.check("alpha = 4, so T^2 + alpha = T^2 + 4", kummer->alpha == FieldElement::constant(f, 4));

    const TowerReport r = certify(*kummer, opt.limits);
    check_report(log, r, 5, Rational(1));
    if (r.closure) check_set(log, *r.closure, listed, "listed set");

    const ClosureResult general = compute_closure(rec, opt.limits);
    log.check("b1/b2 closure agrees", general.closed() && general.elements == listed, "got " + join_elements(general.elements));

    const RecursionSpec literal{f, 2, parse_poly(f, "T^2 - (d+2)*T"), parse_poly(f, "(d+2)*T + 1")};
    const ClosureResult lit = compute_closure(literal, opt.limits);
    log.note(std::string("literal numerator x^2 - (d+2)x: closure ") + to_string(lit.status) + " with " +
             std::to_string(lit.size()) + " elements");
}

inline void fixture_ex81(FixtureLog& log, const FixtureOptions& opt) {
    const Field f = reference::gf81();
    SearchConfig cfg;
    cfg.field = f;
    cfg.alpha_filter = std::vector<FieldElement>{parse_element(f, reference::kAlpha81)};
    cfg.limits = opt.limits;
    cfg.jobs = opt.jobs;
    const SearchOutcome out = run_search(cfg);
    log.check("8 passing equations", out.passing_equations == 8, "got " + std::to_string(out.passing_equations));
    log.check("4 classes", out.classes.size() == 4, "got " + std::to_string(out.classes.size()));

    const Field f9 = reference::gf9();
    const EmbeddingMap e = FieldRegistry::instance().embedding(f9, f);
    const std::vector<std::string> known = {canonical_key(lift(reference::spec(f9, "1", "T"), e)).text,
                                            canonical_key(lift(reference::spec(f9, "1", "T+1"), e)).text};
    const ClassPartition part = classify_new(out, known);
    log.check("2 classes are the GF(9) towers", part.known.size() == 2, "got " + std::to_string(part.known.size()));
    log.check("2 new classes", part.fresh.size() == 2, "got " + std::to_string(part.fresh.size()));

    const KummerSpec tower_i = reference::spec(f, reference::kAlpha81, reference::kTowerI);
    const KummerSpec tower_j = reference::spec(f, reference::kAlpha81, reference::kTowerJ);
    bool matched_i = false, matched_j = false;
    for (const auto& c : part.fresh) {
        const std::size_t size = c.report.closure ? c.report.closure->size() : 0;
        log.check("new class |S0| = 9", size == 9, c.key + " has " + std::to_string(size));
        log.check("new class lambda bound = 1/2", c.report.lambda_bound && *c.report.lambda_bound == Rational(1, 2), c.key);
        matched_i = matched_i || verify_equivalence(c.representative, tower_i).has_value();
        matched_j = matched_j || verify_equivalence(c.representative, tower_j).has_value();
    }
    log.check("one new class contains tower I", matched_i);
    log.check("one new class contains tower J", matched_j);
    bool in_gf9 = true;
    for (const auto* s : {&tower_i, &tower_j})
        for (const auto& c : s->f.coeffs()) in_gf9 = in_gf9 && in_subfield(c, 2);
    log.check("coefficients of f for I and J lie in GF(9)", in_gf9);
}

inline void fixture_table1(FixtureLog& log, const FixtureOptions& opt) {
    const Field f = reference::gf9();
    const KummerSpec base = reference::spec(f, "1", "T");
    std::vector<KummerSpec> targets;
    for (const auto& t : reference::table1_rows()) targets.push_back(reference::spec(f, t.alpha, t.f));
    for (std::size_t row = 0; row < targets.size(); ++row) {
        const auto& t = reference::table1_rows()[row];
        const auto c = verify_equivalence(base, targets[row]);
        const std::string label = "row " + std::to_string(row + 1) + " (alpha = " + t.alpha + ", f = " + t.f + ")";
        if (!log.check(label + " is a rescaling of (1, T)", c.has_value())) continue;
        log.check(label + " closure maps by c^-1", closure_transform_check(base, *c, opt.limits), "c = " + format_element(*c));
        // the printed substitution X = c x acts on (alpha, f) through c^-1
        const KummerSpec printed = transform(base, inv(parse_element(f, t.listed_c)));
        std::string where = "no row";
        for (std::size_t k = 0; k < targets.size(); ++k)
            if (printed == targets[k]) where = "row " + std::to_string(k + 1);
        log.note(label + ": witness c = " + format_element(*c) + "; printed X = " + t.listed_c + " x gives " + where);
    }
}

inline SearchOutcome full_search(const Field& f, const FixtureOptions& opt) {
    SearchConfig cfg;
    cfg.field = f;
    cfg.limits = opt.limits;
    cfg.jobs = opt.jobs;
    return run_search(cfg);
}

inline void fixture_search9(FixtureLog& log, const FixtureOptions& opt) {
    const Field f = reference::gf9();
    const SearchOutcome out = full_search(f, opt);
    log.check("2 classes", out.classes.size() == 2, "got " + std::to_string(out.classes.size()));
    const ClassPartition part =
        classify_new(out, {canonical_key(reference::spec(f, "1", "T")).text, canonical_key(reference::spec(f, "1", "T+1")).text});
    log.check("the classes are the towers with f = T and f = T+1", part.fresh.empty() && part.known.size() == 2);
    log.note(std::to_string(out.passing_equations) + " passing equations out of " + std::to_string(out.total_candidates));
}

inline void fixture_search25(FixtureLog& log, const FixtureOptions& opt) {
    const Field f = reference::gf25();
    const SearchOutcome out = full_search(f, opt);
    log.check("24 passing equations", out.passing_equations == 24, "got " + std::to_string(out.passing_equations));
    log.check("1 class", out.classes.size() == 1, "got " + std::to_string(out.classes.size()));
    const auto k = match_kummer(RecursionSpec{f, 2, parse_poly(f, "T^2 + (d+2)*T"), parse_poly(f, "(d+2)*T + 1")});
    if (k && out.classes.size() == 1)
        log.check("the class is the GF(25) tower", out.classes.front().key == canonical_key(*k).text, out.classes.front().key);
}

using FixtureFn = void (*)(FixtureLog&, const FixtureOptions&);

inline const std::vector<std::pair<std::string, FixtureFn>>& fixture_table() {
    static const std::vector<std::pair<std::string, FixtureFn>> table = {
        {"ex1", fixture_ex1},       {"ex2", fixture_ex2},         {"ex25", fixture_ex25},         {"ex81", fixture_ex81},
        {"table1", fixture_table1}, {"search9", fixture_search9}, {"search25", fixture_search25},
    };
    return table;
}

}  // namespace detail

inline std::vector<std::string> fixture_names() {
    std::vector<std::string> out;
    for (const auto& [name, fn] : detail::fixture_table()) out.push_back(name);
    return out;
}

/// Runs one fixture; an unknown name is a DomainError listing the available ones.
inline FixtureResult run_fixture(const std::string& name, const FixtureOptions& opt = {}) {
    for (const auto& [n, fn] : detail::fixture_table()) {
        if (n != name) continue;
        FixtureResult r;
        r.name = name;
        detail::FixtureLog log(r);
        const auto t0 = std::chrono::steady_clock::now();
        fn(log, opt);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    }
    std::string list;
    for (const auto& n : fixture_names()) list += (list.empty() ? "" : ", ") + n;
    throw DomainError("unknown fixture '" + name + "'; available: " + list);
}

}  // namespace kts
