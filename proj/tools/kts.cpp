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

// kts: certify, search and compare Kummer-type recursive towers over finite fields.

#include <iostream>

#include <CLI11.hpp>

#include "kts/cli.hpp"

namespace {

void add_field(CLI::App* app, kts::cli::FieldArgs& f, const std::string& suffix = "", bool required = true) {
    auto* p = app->add_option("--p" + suffix, f.p, "characteristic");
    if (required) p->required();
    app->add_option("--s" + suffix, f.s, "extension degree over GF(p)")->check(CLI::PositiveNumber);
    app->add_option("--modulus" + suffix, f.modulus, "monic modulus c0,c1,...,cs (default: smallest irreducible)");
}

void add_limits(CLI::App* app, kts::cli::LimitArgs& l) {
    app->add_option("--max-s0", l.max_s0, "closure size budget")->check(CLI::PositiveNumber);
    app->add_option("--max-ambient-degree", l.max_ambient_degree, "largest extension degree the closure may enter")
        ->check(CLI::PositiveNumber);
}

void add_output(CLI::App* app, kts::cli::OutputArgs& o, bool csv) {
    app->add_option("--format", o.format, csv ? "json, csv or text" : "json or text")
        ->check(csv ? CLI::IsMember({"json", "csv", "text"}) : CLI::IsMember({"json", "text"}));
    app->add_option("--out", o.out, csv ? "write <out>.json and <out>.csv" : "write to a file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace kts::cli;
    CLI::App app{"Kummer-type tower certification"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    CheckArgs check;
    auto* c = app.add_subcommand("check", "verify the hypotheses and certify one equation");
    add_field(c, check.field);
    c->add_option("--m", check.m, "Kummer exponent");
    c->add_option("--alpha", check.alpha, "alpha, e.g. 2*d+1")->required();
    c->add_option("--f", check.f, "f(T), e.g. (d+2)*T + 1")->required();
    add_limits(c, check.limits);
    add_output(c, check.output, false);

    ClosureArgs closure;
    auto* cl = app.add_subcommand("closure", "compute the closed set S0 for y^m = b1(T)/b2(T)");
    add_field(cl, closure.field);
    cl->add_option("--m", closure.m, "exponent");
    cl->add_option("--alpha", closure.alpha, "Kummer-form alpha");
    cl->add_option("--f", closure.f, "Kummer-form f(T)");
    cl->add_option("--b1", closure.b1, "numerator, degree m");
    cl->add_option("--b2", closure.b2, "denominator, degree below m");
    add_limits(cl, closure.limits);
    add_output(cl, closure.output, false);

    SearchArgs search;
    auto* s = app.add_subcommand("search", "enumerate equations, certify and group them by scaling class");
    add_field(s, search.field);
    s->add_option("--m", search.m, "Kummer exponent");
    s->add_option("--deg-f", search.deg_f, "degree of f")->check(CLI::PositiveNumber);
    s->add_option("--alpha", search.alpha, "only these alpha values, comma separated");
    s->add_option("--jobs", search.jobs, "worker threads")->check(CLI::PositiveNumber);
    s->add_flag("--no-dedup", search.no_dedup, "certify every equation instead of one per class");
    add_limits(s, search.limits);
    add_output(s, search.output, true);

    EquivArgs equiv;
    auto* e = app.add_subcommand("equiv", "find c with beta = c^-m alpha and g(T) = f(cT)");
    add_field(e, equiv.field);
    e->add_option("--m", equiv.m, "exponent of A");
    e->add_option("--alpha", equiv.alpha, "alpha of A")->required();
    e->add_option("--f", equiv.f, "f of A")->required();
    add_field(e, equiv.field_b, "-b", false);
    e->add_option("--m-b", equiv.m_b, "exponent of B (default: same as A)");
    e->add_option("--alpha-b", equiv.alpha_b, "alpha of B")->required();
    e->add_option("--f-b", equiv.f_b, "f of B")->required();
    add_output(e, equiv.output, false);

    ReproduceArgs repro;
    auto* r = app.add_subcommand("reproduce", "run a named reference fixture");
    r->add_option("name", repro.name, "fixture name")->required();
    r->add_option("--jobs", repro.jobs, "worker threads")->check(CLI::PositiveNumber);
    add_limits(r, repro.limits);
    add_output(r, repro.output, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kOk : kError;
    }

    load_modulus_cache(std::cerr);
    int code = kError;
    if (*c) code = cmd_check(check, std::cout, std::cerr);
    else if (*cl) code = cmd_closure(closure, std::cout, std::cerr);
    else if (*s) code = cmd_search(search, std::cout, std::cerr);
    else if (*e) code = cmd_equiv(equiv, std::cout, std::cerr);
    else if (*r) code = cmd_reproduce(repro, std::cout, std::cerr);
    save_modulus_cache(std::cerr);
    return code;
}
