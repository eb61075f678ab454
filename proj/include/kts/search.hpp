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
 * @file search.hpp
 * @brief Exhaustive search over Kummer equations (alpha, f) with orbit deduplication.
 *
 * Candidates are grouped by canonical_key first. Every member of a scaling orbit has the same hypothesis
 * outcomes and the same closure size, so one representative per orbit is certified and its verdict is
 * counted once per orbit member in the candidate set. Orbits are sharded over workers by a hash of their
 * key; results are merged by position, so the outcome does not depend on the worker count.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "tower.hpp"

namespace kts {

struct SearchConfig {
    Field field;
    int m = 2;
    int f_degree = 1;
    std::optional<std::vector<FieldElement>> alpha_filter;
    ClosureLimits limits;
    bool dedup = true;
    unsigned jobs = 1;
};

struct SearchClass {
    std::string key;
    KummerSpec representative;  // canonical orbit member
    TowerReport report;         // certification of the first candidate met in the class
    std::uint64_t equations = 0;
    std::uint64_t orbit_size = 0;  // over all of GF(q)^*, not only the enumerated candidates
};

struct SearchOutcome {
    std::uint64_t total_candidates = 0;
    std::uint64_t passing_equations = 0;
    std::uint64_t exceeded_budget = 0;
    std::vector<SearchClass> classes;
    std::map<std::string, std::uint64_t> rejected_by;
};

namespace detail {

inline std::vector<FieldElement> alpha_values(const SearchConfig& cfg) {
    if (cfg.alpha_filter) {
        for (const auto& a : *cfg.alpha_filter) require_same_field(a.field(), cfg.field);
        return *cfg.alpha_filter;
    }
    std::vector<FieldElement> out;
    const std::uint64_t q = cfg.field->size();
    for (std::uint64_t i = 1; i < q; ++i) out.push_back(element_at(cfg.field, i));
    return out;
}

inline std::uint64_t f_count(const SearchConfig& cfg) {
    const std::uint64_t q = cfg.field->size();
    std::uint64_t n = q - 1;
    for (int i = 0; i < cfg.f_degree; ++i) n *= q;
    return n;
}

// index -> f of exact degree f_degree; f_0 varies fastest, the leading coefficient slowest
inline Poly f_at(const SearchConfig& cfg, std::uint64_t index) {
    const std::uint64_t q = cfg.field->size();
    std::vector<FieldElement> c;
    c.reserve(static_cast<std::size_t>(cfg.f_degree) + 1);
    for (int i = 0; i < cfg.f_degree; ++i) {
        c.push_back(element_at(cfg.field, index % q));
        index /= q;
    }
    c.push_back(element_at(cfg.field, index + 1));
    return Poly(cfg.field, std::move(c));
}

/// FNV-1a; stable across platforms, unlike std::hash.
inline std::uint64_t stable_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

/// Pairs (c, c^-m) for every c in GF(q)^*, in canonical order.
struct ScalingTable {
    std::vector<std::pair<FieldElement, FieldElement>> entries;

    ScalingTable(const Field& field, int m) {
        const std::uint64_t q = field->size();
        for (std::uint64_t i = 1; i < q; ++i) {
            FieldElement c = element_at(field, i);
            entries.emplace_back(c, pow(c, -static_cast<std::int64_t>(m)));
        }
    }
};

inline EquivalenceKey canonical_key(const KummerSpec& spec, const ScalingTable& table) {
    EquivalenceKey key{"", spec, 0, 0};
    bool first = true;
    for (const auto& [c, scale] : table.entries) {
        KummerSpec t{spec.field, spec.m, scale * spec.alpha, compose_linear(spec.f, c)};
        if (t == spec) ++key.stabilizer;
        if (first || spec_less(t, key.representative)) {
            key.representative = std::move(t);
            first = false;
        }
    }
    key.orbit_size = table.entries.size() / std::max<std::size_t>(key.stabilizer, 1);
    key.text = encode_spec(key.representative);
    return key;
}

/// Runs fn(i) for i in [0, n) on `jobs` threads with contiguous chunks; rethrows the first failure.
template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn fn) {
    jobs = std::max(1u, jobs);
    if (jobs == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    const std::size_t chunk = (n + jobs - 1) / jobs;
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            try {
                for (std::size_t i = w * chunk; i < std::min(n, (w + 1) * chunk); ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace detail

/// (q-1) alpha values (or the filter) times (q-1) q^d polynomials f of exact degree d.
inline std::uint64_t count_candidates(const SearchConfig& cfg) {
    return detail::alpha_values(cfg).size() * detail::f_count(cfg);
}

/// Every candidate in canonical order: alpha outermost, then f.
inline std::vector<KummerSpec> enumerate_candidates(const SearchConfig& cfg) {
    if (cfg.f_degree < 0) throw DomainError("f_degree must be nonnegative");
    std::vector<KummerSpec> out;
    const auto alphas = detail::alpha_values(cfg);
    const std::uint64_t nf = detail::f_count(cfg);
    out.reserve(alphas.size() * nf);
    for (const auto& a : alphas)
        for (std::uint64_t i = 0; i < nf; ++i) out.push_back(KummerSpec{cfg.field, cfg.m, a, detail::f_at(cfg, i)});
    return out;
}

namespace detail {

inline void tally(SearchOutcome& out, const TowerReport& r, std::uint64_t weight) {
    if (r.certified) {
        out.passing_equations += weight;
    } else if (auto failed = r.checks.first_failure()) {
        out.rejected_by[*failed] += weight;
    } else {
        out.exceeded_budget += weight;
    }
}

inline void sort_classes(std::vector<SearchClass>& classes) {
    std::sort(classes.begin(), classes.end(), [](const SearchClass& a, const SearchClass& b) {
        const Rational la = a.report.lambda_bound.value_or(Rational(0));
        const Rational lb = b.report.lambda_bound.value_or(Rational(0));
        if (la != lb) return la > lb;
        return a.key < b.key;
    });
}

}  // namespace detail

/**
 * Certifies every candidate and collects the certified towers by equivalence class. Closure is skipped for
 * candidates that already fail a hypothesis; budget exhaustion is counted apart from hypothesis failures.
 */
inline SearchOutcome run_search(const SearchConfig& cfg) {
    if (cfg.m < 2) throw DomainError("m must be at least 2");
    const std::vector<KummerSpec> candidates = enumerate_candidates(cfg);
    const detail::ScalingTable table(cfg.field, cfg.m);
    const CertifyOptions opts{.closure_on_failed_checks = false, .compute_key = false};

    SearchOutcome out;
    out.total_candidates = candidates.size();

    std::vector<EquivalenceKey> keys(candidates.size());
    detail::parallel_for(candidates.size(), cfg.jobs,
                         [&](std::size_t i) { keys[i] = detail::canonical_key(candidates[i], table); });

    struct Group {
        std::size_t first;  // index of the first candidate in enumeration order
        std::vector<std::size_t> members;
    };
    std::map<std::string, Group> groups;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        auto [it, inserted] = groups.try_emplace(keys[i].text, Group{i, {}});
        it->second.members.push_back(i);
    }

    std::vector<std::map<std::string, Group>::const_iterator> order;
    for (auto it = groups.cbegin(); it != groups.cend(); ++it) order.push_back(it);

    if (cfg.dedup) {
        // shard orbits by key hash; each worker certifies only its own orbits
        const unsigned jobs = std::max(1u, cfg.jobs);
        std::vector<std::vector<std::size_t>> shards(jobs);
        for (std::size_t g = 0; g < order.size(); ++g)
            shards[detail::stable_hash(order[g]->first) % jobs].push_back(g);
        std::vector<TowerReport> reports(order.size());
        detail::parallel_for(jobs, jobs, [&](std::size_t w) {
            for (std::size_t g : shards[w]) reports[g] = certify(candidates[order[g]->second.first], cfg.limits, opts);
        });
        for (std::size_t g = 0; g < order.size(); ++g) {
            const auto& [key, group] = *order[g];
            const std::uint64_t weight = group.members.size();
            detail::tally(out, reports[g], weight);
            if (reports[g].certified) {
                reports[g].canonical_key = key;
                out.classes.push_back(SearchClass{key, keys[group.first].representative, reports[g], weight,
                                                  keys[group.first].orbit_size});
            }
        }
    } else {
        std::vector<TowerReport> reports(candidates.size());
        detail::parallel_for(candidates.size(), cfg.jobs,
                             [&](std::size_t i) { reports[i] = certify(candidates[i], cfg.limits, opts); });
        for (std::size_t g = 0; g < order.size(); ++g) {
            const auto& [key, group] = *order[g];
            std::uint64_t passing = 0;
            for (std::size_t i : group.members) {
                detail::tally(out, reports[i], 1);
                passing += reports[i].certified ? 1 : 0;
            }
            if (passing) {
                TowerReport rep = reports[group.first];
                rep.canonical_key = key;
                out.classes.push_back(SearchClass{key, keys[group.first].representative, std::move(rep), passing,
                                                  keys[group.first].orbit_size});
            }
        }
    }
    detail::sort_classes(out.classes);
    return out;
}

struct ClassPartition {
    std::vector<SearchClass> known;
    std::vector<SearchClass> fresh;
};

/// Splits the classes of an outcome by membership of their key in `known_keys`.
inline ClassPartition classify_new(const SearchOutcome& outcome, const std::vector<std::string>& known_keys) {
    ClassPartition out;
    for (const auto& c : outcome.classes) {
        const bool known = std::find(known_keys.begin(), known_keys.end(), c.key) != known_keys.end();
        (known ? out.known : out.fresh).push_back(c);
    }
    return out;
}

}  // namespace kts
