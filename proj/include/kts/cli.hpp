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
 * @file cli.hpp
 * @brief Command implementations behind tools/kts, kept apart from argument parsing so they can be tested.
 *
 * Exit codes: 0 success or certified, 1 input or I/O error, 2 well-formed but not certified (or not
 * related, or a fixture mismatch), 3 closure stopped by a budget.
 */

#pragma once

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "serialize.hpp"

namespace kts::cli {

inline constexpr const char* kVersion = "0.1.0";

enum Exit : int { kOk = 0, kError = 1, kNotCertified = 2, kBudget = 3 };

struct FieldArgs {
    std::optional<std::uint64_t> p;
    int s = 1;
    std::string modulus;  // "c0,c1,...,cs"; empty means the default modulus
};

struct LimitArgs {
    std::size_t max_s0 = 64;
    int max_ambient_degree = 16;

    ClosureLimits limits() const { return ClosureLimits{max_s0, max_ambient_degree}; }
};

struct OutputArgs {
    std::string format = "text";
    std::string out;
};

struct CheckArgs {
    FieldArgs field;
    int m = 2;
    std::string alpha, f;
    LimitArgs limits;
    OutputArgs output;
};

struct ClosureArgs {
    FieldArgs field;
    int m = 2;
    std::string alpha, f, b1, b2;
    LimitArgs limits;
    OutputArgs output;
};

struct SearchArgs {
    FieldArgs field;
    int m = 2;
    int deg_f = 1;
    std::string alpha;  // optional comma-separated filter
    LimitArgs limits;
    OutputArgs output;
    unsigned jobs = 1;
    bool no_dedup = false;
};

struct EquivArgs {
    FieldArgs field;
    int m = 2;
    std::string alpha, f;
    FieldArgs field_b;  // unset p means "same field as A"
    std::optional<int> m_b;
    std::string alpha_b, f_b;
    OutputArgs output;
};

struct ReproduceArgs {
    std::string name;
    LimitArgs limits;
    OutputArgs output;
    unsigned jobs = 1;
};

/// Provenance record embedded in every emitted result.
struct RunManifest {
    RunManifest(std::string cmd, Json cfg, Json fld) : command(std::move(cmd)), config(std::move(cfg)), field(std::move(fld)) {}

    std::string command;
    Json config;
    std::string version = kVersion;
    Json field;
    double seconds = 0;
    std::string digest;

    Json to_json() const {
        return Json{{"command", command}, {"config", config}, {"version", version}, {"field", field}, {"seconds", seconds}, {"digest", digest}};
    }
};

/// FNV-1a over the compact JSON dump, as 16 hex digits.
inline std::string digest_of(const Json& result) {
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << detail::stable_hash(result.dump());
    return hex.str();
}

// ---- modulus cache ----

inline std::filesystem::path cache_dir() {
    if (const char* d = std::getenv("KTS_CACHE_DIR"); d && *d) return d;
    if (const char* d = std::getenv("XDG_CACHE_HOME"); d && *d) return std::filesystem::path(d) / "kts";
    if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "kts";
    return {};
}

inline std::filesystem::path cache_file() {
    const auto dir = cache_dir();
    return dir.empty() ? dir : dir / "moduli.txt";
}

/// Seeds default moduli from the cache; bad lines are reported and skipped.
inline void load_modulus_cache(std::ostream& err) {
    const auto path = cache_file();
    if (path.empty()) return;
    std::ifstream in(path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::uint64_t p = 0;
        int s = 0;
        std::vector<Residue> m;
        Residue c;
        if (!(ls >> p >> s)) {
            err << "warning: " << path.string() << ":" << lineno << ": malformed entry ignored\n";
            continue;
        }
        while (ls >> c) m.push_back(c);
        try {
            DefaultModuli::instance().seed(static_cast<Residue>(p), s, m);
        } catch (const Error& e) {
            err << "warning: " << path.string() << ":" << lineno << ": " << e.what() << "\n";
        }
    }
}

/// Writes every known default modulus back; failure only warns.
inline void save_modulus_cache(std::ostream& err) {
    const auto path = cache_file();
    if (path.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) {
            err << "warning: cannot write modulus cache " << path.string() << "\n";
            return;
        }
        out << "# p s c0 c1 ... cs  (default moduli, ascending coefficients)\n";
        for (const auto& [key, m] : DefaultModuli::instance().snapshot()) {
            out << key.first << ' ' << key.second;
            for (Residue c : m) out << ' ' << c;
            out << '\n';
        }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) err << "warning: cannot write modulus cache " << path.string() << "\n";
}

// ---- shared helpers ----

inline Field build_field(const FieldArgs& a) {
    if (!a.p) throw DomainError("--p is required");
    if (a.modulus.empty()) return make_extension(*a.p, a.s);
    return make_extension(*a.p, a.s, parse_residue_list(a.modulus));
}

inline Json field_config(const FieldArgs& a) {
    return Json{{"p", a.p ? Json(*a.p) : Json(nullptr)}, {"s", a.s}, {"modulus", a.modulus}};
}

inline Json limit_config(const LimitArgs& l) { return Json{{"max_s0", l.max_s0}, {"max_ambient_degree", l.max_ambient_degree}}; }

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
    out.flush();
    if (!out) throw Error("cannot write " + path);
}

/// Sends `text` to --out when given, otherwise to stdout.
inline void emit(const OutputArgs& o, const std::string& text, std::ostream& out) {
    if (!o.out.empty()) {
        write_file(o.out, text);
        return;
    }
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

inline void require_format(const OutputArgs& o, bool csv_allowed) {
    if (o.format == "json" || o.format == "text" || (csv_allowed && o.format == "csv")) return;
    throw DomainError("unsupported --format '" + o.format + "'" + (csv_allowed ? "" : " for this command (use json or text)"));
}

inline std::string with_manifest(RunManifest& man, const Json& result, const std::chrono::steady_clock::time_point& t0) {
    man.digest = digest_of(result);
    man.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return Json{{"manifest", man.to_json()}, {"result", result}}.dump(2);
}

inline std::string manifest_footer(const RunManifest& man) {
    return "# " + man.command + " kts " + man.version + " digest " + man.digest + "\n";
}

inline std::string join(const std::vector<FieldElement>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_element(v[i]);
    return out + "}";
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string describe_field(const Field& f) {
    if (f->degree() == 1) return "GF(" + std::to_string(f->characteristic()) + ")";
    std::vector<FieldElement> c;
    for (Residue r : f->modulus()) c.push_back(FieldElement::constant(make_prime_field(f->characteristic()), r));
    std::string m = format_poly(Poly(c.front().field(), c));
    for (auto& ch : m)
        if (ch == 'T') ch = 'd';
    return "GF(" + std::to_string(f->characteristic()) + "^" + std::to_string(f->degree()) + ") with " + m + " = 0";
}

inline std::string closure_text(const ClosureResult& c, const Field& base) {
    std::ostringstream o;
    o << "closure     " << to_string(c.status) << ", |S0| = " << c.size() << ", generations " << c.generations
      << ", seeds " << c.seed_size << "\n";
    o << "ambient     " << describe_field(c.ambient) << "\n";
    if (!same_field(c.ambient, base))
        o << "base d      maps to " << format_element(c.embedding.generator_image()) << "\n";
    o << "S0          " << join(c.elements) << "\n";
    return o.str();
}

inline std::string report_text(const TowerReport& r) {
    std::ostringstream o;
    o << "field       " << describe_field(r.spec.field) << "\n";
    o << "equation    y^" << r.spec.m << " = (T^" << r.spec.m << " - alpha f(T) + alpha) / f(T)"
      << ", alpha = " << format_element(r.spec.alpha) << ", f = " << format_poly(r.spec.f) << "\n";
    const auto& h = r.checks;
    o << "checks      shape " << yes_no(h.shape) << ", gcd_m_q " << yes_no(h.gcd_m_q) << ", q_mod_m " << yes_no(h.q_mod_m)
      << ", gcd_condition " << yes_no(h.gcd_condition) << ", splits " << yes_no(h.splits) << ", disjoint_zero_sets "
      << yes_no(h.disjoint_zero_sets) << ", separable_f " << yes_no(h.separable_f) << ", coprime_b1_b2 "
      << yes_no(h.coprime_b1_b2) << "\n";
    if (auto f = h.first_failure()) o << "failed      " << *f << "\n";
    if (r.closure) o << closure_text(*r.closure, r.spec.field);
    o << "split bound " << r.split_bound << "\n";
    o << "lambda      " << (r.lambda_bound ? ">= " + r.lambda_bound->to_string() : std::string("n/a")) << "\n";
    if (r.optimality)
        o << "optimal     " << yes_no(r.optimality->optimal) << " (A(q) = " << r.optimality->ihara_bound.to_string() << ")\n";
    o << "certified   " << yes_no(r.certified) << "\n";
    o << "key         " << r.canonical_key << "\n";
    return o.str();
}

template <class Fn>
int guarded(std::ostream& err, Fn fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }
}

// ---- commands ----

inline int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto t0 = std::chrono::steady_clock::now();
        require_format(a.output, false);
        const Field field = build_field(a.field);
        const KummerSpec spec = make_kummer_spec(field, a.m, parse_element(field, a.alpha), parse_poly(field, a.f));
        const TowerReport r = certify(spec, a.limits.limits());
        RunManifest man{"check",
                        Json{{"field", field_config(a.field)}, {"m", a.m}, {"alpha", a.alpha}, {"f", a.f}, {"limits", limit_config(a.limits)}},
                        to_json(field)};
        const Json result = to_json(r);
        const std::string json = with_manifest(man, result, t0);
        emit(a.output, a.output.format == "json" ? json : report_text(r) + manifest_footer(man), out);
        return r.certified ? kOk : kNotCertified;
    });
}

inline int cmd_closure(const ClosureArgs& a, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto t0 = std::chrono::steady_clock::now();
        require_format(a.output, false);
        const Field field = build_field(a.field);
        const bool general = !a.b1.empty() || !a.b2.empty();
        if (general && (!a.alpha.empty() || !a.f.empty())) throw DomainError("give either --b1/--b2 or --alpha/--f, not both");
        RecursionSpec rec;
        if (general) {
            if (a.b1.empty() || a.b2.empty()) throw DomainError("--b1 and --b2 go together");
            if (a.m < 2) throw DomainError("m must be at least 2");
            rec = RecursionSpec{field, a.m, parse_poly(field, a.b1), parse_poly(field, a.b2)};
        } else {
            rec = to_recursion(make_kummer_spec(field, a.m, parse_element(field, a.alpha), parse_poly(field, a.f)));
        }
        const RecursionDiagnostics d = diagnose(rec);
        if (!d.degree_b1) throw ShapeError("hypothesis violated: b1 must have degree m = " + std::to_string(a.m));
        if (!d.degree_b2) throw ShapeError("hypothesis violated: b2 must have degree between 1 and m - 1");
        if (!d.coprime) throw ShapeError("hypothesis violated: b1 and b2 must be coprime polynomials");
        const ClosureResult c = compute_closure(rec, a.limits.limits());

        Json config{{"field", field_config(a.field)}, {"m", a.m}, {"limits", limit_config(a.limits)}};
        if (general) {
            config["b1"] = a.b1;
            config["b2"] = a.b2;
        } else {
            config["alpha"] = a.alpha;
            config["f"] = a.f;
        }
        RunManifest man{"closure", config, to_json(field)};
        Json result = to_json(c);
        result["b1"] = to_json(rec.b1);
        result["b2"] = to_json(rec.b2);
        const std::string json = with_manifest(man, result, t0);
        std::string text = "field       " + describe_field(field) + "\n" + "recursion   y^" + std::to_string(a.m) + " = (" +
                           format_poly(rec.b1) + ") / (" + format_poly(rec.b2) + ")\n" + closure_text(c, field);
        emit(a.output, a.output.format == "json" ? json : text + manifest_footer(man), out);
        return c.closed() ? kOk : kBudget;
    });
}

inline std::string outcome_text(const SearchOutcome& o) {
    std::ostringstream t;
    t << "candidates  " << o.total_candidates << "\n";
    t << "passing     " << o.passing_equations << "\n";
    t << "exceeded    " << o.exceeded_budget << "\n";
    for (const auto& [k, v] : o.rejected_by) t << "rejected    " << k << " " << v << "\n";
    t << "classes     " << o.classes.size() << "\n";
    t << "lambda  |S0|  equations  orbit  alpha  f  key\n";
    for (const auto& c : o.classes) {
        t << c.report.lambda_bound.value_or(Rational(0)).to_string() << "  " << (c.report.closure ? c.report.closure->size() : 0)
          << "  " << c.equations << "  " << c.orbit_size << "  " << format_element(c.representative.alpha) << "  "
          << format_poly(c.representative.f) << "  " << c.key << "\n";
    }
    return t.str();
}

inline std::vector<FieldElement> parse_alpha_list(const Field& field, const std::string& text) {
    std::vector<FieldElement> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        out.push_back(parse_element(field, std::string_view(text).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    for (const auto& a : out)
        if (a.is_zero()) throw DomainError("alpha must be nonzero");
    return out;
}

inline int cmd_search(const SearchArgs& a, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto t0 = std::chrono::steady_clock::now();
        require_format(a.output, true);
        const Field field = build_field(a.field);
        SearchConfig cfg;
        cfg.field = field;
        cfg.m = a.m;
        cfg.f_degree = a.deg_f;
        if (!a.alpha.empty()) cfg.alpha_filter = parse_alpha_list(field, a.alpha);
        cfg.limits = a.limits.limits();
        cfg.jobs = a.jobs;
        cfg.dedup = !a.no_dedup;

        // fail on an unwritable destination before the expensive part
        std::string json_path, csv_path;
        if (!a.output.out.empty()) {
            const std::filesystem::path base(a.output.out);
            json_path = base.extension() == ".json" ? base.string() : base.string() + ".json";
            csv_path = (base.extension() == ".json" ? base.parent_path() / base.stem() : base).string() + ".csv";
            for (const auto& p : {json_path, csv_path}) {
                std::ofstream probe(p, std::ios::app);
                if (!probe) throw Error("cannot write " + p);
            }
        }

        const SearchOutcome o = run_search(cfg);
        RunManifest man{"search",
                        Json{{"field", field_config(a.field)},
                             {"m", a.m},
                             {"deg_f", a.deg_f},
                             {"alpha", a.alpha},
                             {"limits", limit_config(a.limits)},
                             {"dedup", !a.no_dedup}},
                        to_json(field)};
        const Json result = to_json(o);
        const std::string json = with_manifest(man, result, t0);
        const std::string csv = "# manifest " + man.to_json().dump() + "\n" + to_csv(o);
        if (!json_path.empty()) {
            write_file(json_path, json);
            write_file(csv_path, csv);
        }
        if (a.output.format == "json") out << json << "\n";
        else if (a.output.format == "csv") out << csv;
        else out << outcome_text(o) << manifest_footer(man);
        return kOk;
    });
}

inline int cmd_equiv(const EquivArgs& a, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto t0 = std::chrono::steady_clock::now();
        require_format(a.output, false);
        const Field fa = build_field(a.field);
        // --s-b or --modulus-b alone keep the characteristic of A
        FieldArgs b = a.field_b;
        if (!b.p && (b.s != 1 || !b.modulus.empty())) b.p = a.field.p;
        const Field fb = b.p ? build_field(b) : fa;
        const KummerSpec sa = make_kummer_spec(fa, a.m, parse_element(fa, a.alpha), parse_poly(fa, a.f));
        const KummerSpec sb = make_kummer_spec(fb, a.m_b.value_or(a.m), parse_element(fb, a.alpha_b), parse_poly(fb, a.f_b));
        const auto c = verify_equivalence(sa, sb);

        Json result{{"a", to_json(sa)}, {"b", to_json(sb)}, {"related", c.has_value()}};
        std::ostringstream text;
        text << "A           alpha = " << format_element(sa.alpha) << ", f = " << format_poly(sa.f) << "\n";
        text << "B           alpha = " << format_element(sb.alpha) << ", f = " << format_poly(sb.f) << "\n";
        if (c) {
            const KummerSpec t = transform(sa, *c);
            result["witness"] = to_json(*c);
            result["witness_text"] = format_element(*c);
            text << "witness     c = " << format_element(*c) << "\n";
            text << "beta        c^-" << sa.m << " * alpha = " << format_element(t.alpha) << "\n";
            text << "g(T)        f(cT) = " << format_poly(t.f) << "\n";
        } else {
            text << "not related by scaling\n";
        }
        RunManifest man{"equiv",
                        Json{{"field", field_config(a.field)},
                             {"m", a.m},
                             {"alpha", a.alpha},
                             {"f", a.f},
                             {"field_b", a.field_b.p ? field_config(a.field_b) : Json(nullptr)},
                             {"m_b", a.m_b ? Json(*a.m_b) : Json(nullptr)},
                             {"alpha_b", a.alpha_b},
                             {"f_b", a.f_b}},
                        to_json(fa)};
        const std::string json = with_manifest(man, result, t0);
        emit(a.output, a.output.format == "json" ? json : text.str() + manifest_footer(man), out);
        return c ? kOk : kNotCertified;
    });
}

inline int cmd_reproduce(const ReproduceArgs& a, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto t0 = std::chrono::steady_clock::now();
        require_format(a.output, false);
        const FixtureResult r = run_fixture(a.name, FixtureOptions{a.limits.limits(), a.jobs});
        Json checks = Json::array();
        std::ostringstream text;
        text << "fixture     " << r.name << "\n";
        for (const auto& c : r.checks) {
            checks.push_back(Json{{"what", c.what}, {"ok", c.ok}, {"detail", c.detail}});
            text << (c.ok ? "  pass  " : "  FAIL  ") << c.what << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
        }
        for (const auto& n : r.notes) text << "  note  " << n << "\n";
        text << (r.passed() ? "PASS" : "FAIL") << " " << r.name << "\n";
        Json result{{"fixture", r.name}, {"passed", r.passed()}, {"checks", checks}, {"notes", r.notes}};
        RunManifest man{"reproduce", Json{{"fixture", a.name}, {"limits", limit_config(a.limits)}}, nullptr};
        const std::string json = with_manifest(man, result, t0);
        emit(a.output, a.output.format == "json" ? json : text.str() + manifest_footer(man), out);
        return r.passed() ? kOk : kNotCertified;
    });
}

}  // namespace kts::cli
