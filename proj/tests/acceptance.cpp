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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: kts_acceptance [--jobs N]

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <thread>

#include "kts/fixtures.hpp"
#include "kts/serialize.hpp"
#include "oracle.hpp"

namespace {

using namespace kts;
using Clock = std::chrono::steady_clock;

struct Criterion {
    int number;
    std::string title;
    double limit_seconds;  // 0 means untimed
    std::vector<std::string> failures;
    std::vector<std::string> info;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

struct ClosedCase {
    std::string label;
    RecursionSpec rec;
    ClosureResult closure;
};

// every Closed result met in criteria 1-6, re-verified in criterion 7
std::vector<ClosedCase> g_closed;
unsigned g_jobs = 1;

void keep(const std::string& label, const RecursionSpec& rec, const std::optional<ClosureResult>& c) {
    if (c && c->closed()) g_closed.push_back({label, rec, *c});
}

std::string str(const std::vector<FieldElement>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_element(v[i]);
    return s + "}";
}

void expect_report(Criterion& c, const TowerReport& r, const std::vector<FieldElement>& set, const Rational& lambda) {
    c.expect(r.certified, "certified");
    c.expect(r.closure && r.closure->elements == set, "S0 = " + str(set) + ", got " + (r.closure ? str(r.closure->elements) : "none"));
    c.expect(r.closure && r.closure->size() == set.size(), "|S0| = " + std::to_string(set.size()));
    c.expect(r.split_bound == 2, "split bound 2");
    c.expect(r.lambda_bound == lambda, "lambda bound " + lambda.to_string() + ", got " + (r.lambda_bound ? r.lambda_bound->to_string() : "none"));
}

void criterion1(Criterion& c) {
    const Field f = reference::gf9();
    const KummerSpec k = reference::spec(f, "1", "T");
    const TowerReport r = certify(k);
    expect_report(c, r, reference::elements(f, {"0", "1", "2"}), Rational(2));
    keep("f = T over GF(9)", to_recursion(k), r.closure);
}

void criterion2(Criterion& c) {
    const Field f = reference::gf9();
    const KummerSpec k = reference::spec(f, "1", "T+1");
    const TowerReport r = certify(k);
    expect_report(c, r, reference::elements(f, {"0", "1", "2", "d", "d^3", "d^5", "d^7"}), Rational(2, 3));
    keep("f = T+1 over GF(9)", to_recursion(k), r.closure);
}

void criterion3(Criterion& c) {
    const Field f = reference::gf25();
    const auto listed = reference::elements(f, {"0", "2*d+4", "4*d+3", "d+2", "3*d+1"});
    const RecursionSpec rec{f, 2, parse_poly(f, "T^2 + (d+2)*T"), parse_poly(f, "(d+2)*T + 1")};
    const ClosureResult general = compute_closure(rec);
    c.expect(general.closed() && general.elements == listed, "b1/b2 closure is the listed set, got " + str(general.elements));
    keep("GF(25) recursion, b1/b2 form", rec, general);
    const auto k = match_kummer(rec);
    c.expect(k.has_value(), "recursion has Kummer form");
    if (!k) return;
    c.info.push_back("Kummer form: alpha = " + format_element(k->alpha) + ", f = " + format_poly(k->f));
    const TowerReport r = certify(*k);
    expect_report(c, r, listed, Rational(1));
    keep("GF(25) recursion, Kummer form", to_recursion(*k), r.closure);

    const RecursionSpec literal{f, 2, parse_poly(f, "T^2 - (d+2)*T"), parse_poly(f, "(d+2)*T + 1")};
    const ClosureResult lit = compute_closure(literal);
    c.info.push_back(std::string("with numerator x^2 - (d+2)x instead: ") + to_string(lit.status) + ", " + std::to_string(lit.size()) +
                     " elements (sign reading recorded in the notes)");
}

void criterion4(Criterion& c) {
    const Field f = reference::gf81();
    SearchConfig cfg;
    cfg.field = f;
    cfg.alpha_filter = std::vector<FieldElement>{parse_element(f, reference::kAlpha81)};
    cfg.jobs = g_jobs;
    const SearchOutcome out = run_search(cfg);
    c.expect(out.total_candidates == 6480, "6480 candidates");
    c.expect(out.passing_equations == 8, "8 passing f, got " + std::to_string(out.passing_equations));
    c.expect(out.classes.size() == 4, "4 classes, got " + std::to_string(out.classes.size()));
    for (const auto& cl : out.classes) keep("GF(81) class " + cl.key, to_recursion(cl.report.spec), cl.report.closure);

    const EmbeddingMap e = FieldRegistry::instance().embedding(reference::gf9(), f);
    const ClassPartition part = classify_new(out, {canonical_key(lift(reference::spec(reference::gf9(), "1", "T"), e)).text,
                                                   canonical_key(lift(reference::spec(reference::gf9(), "1", "T+1"), e)).text});
    c.expect(part.known.size() == 2, "2 classes are the GF(9) towers");
    c.expect(part.fresh.size() == 2, "2 new classes");
    const KummerSpec ti = reference::spec(f, reference::kAlpha81, reference::kTowerI);
    const KummerSpec tj = reference::spec(f, reference::kAlpha81, reference::kTowerJ);
    int hit_i = 0, hit_j = 0;
    for (const auto& cl : part.fresh) {
        c.expect(cl.report.closure && cl.report.closure->size() == 9, "new class |S0| = 9: " + cl.key);
        c.expect(cl.report.lambda_bound == Rational(1, 2), "new class lambda 1/2: " + cl.key);
        hit_i += verify_equivalence(cl.representative, ti).has_value();
        hit_j += verify_equivalence(cl.representative, tj).has_value();
    }
    c.expect(hit_i == 1 && hit_j == 1, "new classes contain the towers I and J");
}

void criterion5(Criterion& c) {
    const Field f = reference::gf9();
    const KummerSpec base = reference::spec(f, "1", "T");
    int ok = 0;
    for (const auto& row : reference::table1_rows()) {
        const KummerSpec t = reference::spec(f, row.alpha, row.f);
        const auto w = verify_equivalence(base, t);
        const bool pass = w && closure_transform_check(base, *w);
        ok += pass;
        c.expect(pass, std::string("row alpha = ") + row.alpha + ", f = " + row.f);
        if (w) {
            c.info.push_back(std::string("alpha = ") + row.alpha + ", f = " + row.f + ": c = " + format_element(*w));
            keep(std::string("rescaled f = ") + row.f, to_recursion(t), compute_closure(to_recursion(t)));
        }
    }
    c.info.push_back(std::to_string(ok) + "/6 rows");
}

void criterion6(Criterion& c) {
    for (const Field& f : {reference::gf9(), reference::gf25()}) {
        SearchConfig cfg;
        cfg.field = f;
        cfg.jobs = g_jobs;
        const SearchOutcome out = run_search(cfg);
        const std::string q = std::to_string(f->size());
        if (f->size() == 9) {
            c.expect(out.classes.size() == 2, "q=9: 2 classes, got " + std::to_string(out.classes.size()));
        } else {
            c.expect(out.classes.size() == 1, "q=25: 1 class, got " + std::to_string(out.classes.size()));
            c.expect(out.passing_equations == 24, "q=25: 24 passing, got " + std::to_string(out.passing_equations));
        }
        c.info.push_back("q=" + q + ": " + std::to_string(out.passing_equations) + " passing of " + std::to_string(out.total_candidates) +
                         ", " + std::to_string(out.classes.size()) + (out.classes.size() == 1 ? " class" : " classes"));
        for (const auto& cl : out.classes) keep("q=" + q + " class " + cl.key, to_recursion(cl.report.spec), cl.report.closure);
    }
}

void criterion7(Criterion& c) {
    std::mt19937_64 rng(20261018);

    // field axioms and Frobenius on every field with at most 81 elements
    int fields = 0;
    for (std::uint64_t p = 2; p <= 81; ++p) {
        if (!detail::is_prime(p)) continue;
        std::uint64_t q = p;
        for (int s = 1; q <= 81; ++s, q *= p) {
            ++fields;
            const Field f = make_extension(p, s);
            const auto all = enumerate_elements(f);
            std::set<std::uint64_t> image;
            bool ok = true;
            for (const auto& a : all) {
                image.insert(element_index(frobenius(a)));
                ok = ok && pow(a, f->order()) == a && (a + (-a)).is_zero() && a * FieldElement::constant(f, 1) == a;
                if (!a.is_zero()) ok = ok && (a * inv(a)).is_one();
            }
            for (int i = 0; i < 2000; ++i) {
                const auto a = oracle::random_element(f, rng), b = oracle::random_element(f, rng), d = oracle::random_element(f, rng);
                ok = ok && a + b == b + a && a * b == b * a && (a * b) * d == a * (b * d) && (a + b) + d == a + (b + d) &&
                     a * (b + d) == a * b + a * d && frobenius(a * b) == frobenius(a) * frobenius(b) &&
                     frobenius(a + b) == frobenius(a) + frobenius(b);
                ok = ok && oracle::residues(a * b) == oracle::naive_mul(oracle::residues(a), oracle::residues(b), f->modulus(), f->characteristic());
            }
            c.expect(ok && image.size() == all.size(), "field axioms / Frobenius on " + f->label());
        }
    }
    c.info.push_back("field axioms and Frobenius on " + std::to_string(fields) + " fields");

    // root finder against exhaustive evaluation
    const Field small[] = {reference::gf9(), reference::gf25()};
    int root_bad = 0;
    for (int i = 0; i < 500; ++i) {
        const Field& f = small[i % 2];
        const Poly g = oracle::random_poly(f, 1 + static_cast<int>(rng() % 4), rng);
        if (distinct_roots_in(g) != oracle::roots_by_evaluation(g)) ++root_bad;
        const RootSet rs = all_roots(g);
        int total = 0;
        for (const auto& [x, k] : rs.roots) total += k;
        const Poly h = map_poly(g, rs.embedding);
        for (const auto& [x, k] : rs.roots) root_bad += oracle::multiplicity(h, x) != k;
        root_bad += total != g.degree();
    }
    c.expect(root_bad == 0, "root finder vs exhaustive evaluation: " + std::to_string(root_bad) + " mismatches");
    c.info.push_back("500 random polynomials of degree <= 4 over GF(9)/GF(25) match exhaustive evaluation");

    // closure post-verification and minimality
    for (const auto& k : g_closed) {
        c.expect(verify_closure(k.rec, k.closure), "closure verification: " + k.label);
        c.expect(is_minimal_closure(k.rec, k.closure), "minimality: " + k.label);
        if (k.closure.ambient->size() <= 6561)
            c.expect(oracle::closure_by_evaluation(k.rec, k.closure.embedding) == k.closure.elements, "evaluation oracle: " + k.label);
    }
    c.info.push_back(std::to_string(g_closed.size()) + " closed results re-verified (closed, minimal, evaluation oracle)");

    // orbit invariance
    int orbit_bad = 0;
    for (int i = 0; i < 100; ++i) {
        const Field& f = small[i % 2];
        const KummerSpec k = make_kummer_spec(f, 2, oracle::random_nonzero(f, rng), oracle::random_poly(f, 1, rng));
        const FieldElement x = oracle::random_nonzero(f, rng);
        const TowerReport a = certify(k), b = certify(transform(k, x));
        const auto size = [](const TowerReport& r) { return r.closure && r.closure->closed() ? r.closure->size() : 0; };
        orbit_bad += a.certified != b.certified || size(a) != size(b) || a.lambda_bound != b.lambda_bound || a.canonical_key != b.canonical_key;
        if (size(a)) orbit_bad += !closure_transform_check(k, x);
    }
    c.expect(orbit_bad == 0, "orbit invariance: " + std::to_string(orbit_bad) + " mismatches");
    c.info.push_back("100 random (spec, c) pairs keep certified, |S0|, lambda bound and key");

    // determinism across worker counts
    for (const Field& f : {reference::gf9(), make_prime_field(13)}) {
        SearchConfig cfg;
        cfg.field = f;
        cfg.jobs = 1;
        const std::string one = to_json(run_search(cfg)).dump();
        cfg.jobs = std::max(4u, g_jobs);
        const std::string many = to_json(run_search(cfg)).dump();
        c.expect(one == many, "run_search output differs between 1 and " + std::to_string(cfg.jobs) + " workers on " + f->label());
    }
    c.info.push_back("run_search output identical for 1 and " + std::to_string(std::max(4u, g_jobs)) + " workers");
}

void criterion8(Criterion& c) {
    for (int i = 0; i <= 10; ++i) {
        const std::uint64_t ext = std::uint64_t{1} << i;
        const std::uint64_t want = (std::uint64_t{1} << (i + 1)) + 1;
        c.expect(places_lower_bound(2, 1, ext) == want, "places bound at level " + std::to_string(i));
    }
    const std::pair<std::size_t, Rational> cases[] = {{3, Rational(2)}, {7, Rational(2, 3)}, {5, Rational(1)}, {9, Rational(1, 2)}};
    for (const auto& [s0, want] : cases) {
        const Rational got = lambda_bound(2, s0);
        c.expect(got == want && std::gcd(got.num(), got.den()) == 1 && got.den() > 0,
                 "lambda_bound(2, " + std::to_string(s0) + ") = " + want.to_string() + ", got " + got.to_string());
    }
}

}  // namespace

int main(int argc, char** argv) {
    g_jobs = std::max(1u, std::thread::hardware_concurrency());
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--jobs") == 0) g_jobs = static_cast<unsigned>(std::max(1, std::atoi(argv[i + 1])));

    struct Entry {
        Criterion c;
        std::function<void(Criterion&)> run;
    };
    std::vector<Entry> entries = {
        {{1, "GF(9), alpha = 1, f = T: S0 = GF(3), lambda >= 2", 1.0, {}, {}}, criterion1},
        {{2, "GF(9), alpha = 1, f = T+1: |S0| = 7, lambda >= 2/3", 1.0, {}, {}}, criterion2},
        {{3, "GF(25) recursion: |S0| = 5, lambda >= 1", 1.0, {}, {}}, criterion3},
        {{4, "GF(81) search with fixed alpha: 8 equations, 4 classes", 60.0, {}, {}}, criterion4},
        {{5, "rescalings of (1, T) over GF(9): 6/6 with closure check", 1.0, {}, {}}, criterion5},
        {{6, "full searches: q=9 gives 2 classes, q=25 gives 1 class of 24", 30.0, {}, {}}, criterion6},
        {{7, "property suites", 0.0, {}, {}}, criterion7},
        {{8, "places and lambda bound formulas", 0.0, {}, {}}, criterion8},
    };

    int failed = 0;
    for (auto& [c, fn] : entries) {
        const auto t0 = Clock::now();
        try {
            fn(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        const double sec = std::chrono::duration<double>(Clock::now() - t0).count();
        if (c.limit_seconds > 0 && sec >= c.limit_seconds)
            c.failures.push_back("took " + std::to_string(sec) + " s, limit " + std::to_string(c.limit_seconds) + " s");
        const bool ok = c.failures.empty();
        failed += !ok;
        std::printf("%s criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", c.number, c.title.c_str(), sec);
        for (const auto& s : c.info) std::printf("    %s\n", s.c_str());
        for (const auto& s : c.failures) std::printf("    failed: %s\n", s.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(entries.size()) - failed, entries.size());
    return failed ? 1 : 0;
}
