// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include "oklab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

using namespace oklab;
using report::json;
using report::Report;
using verify::RunConfig;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream note;

    void require(bool cond, const std::string& why) {
        if (!cond) {
            pass = false;
            note << " [failed: " << why << "]";
        }
    }
};

const json& zero() {
    static const json z = json::array({0, 1});
    return z;
}

bool nonneg(const json& r) { return r[0].is_number_integer() ? r[0].get<std::int64_t>() >= 0 : r[0].get<std::string>()[0] != '-'; }

std::vector<const toric::ToricVariety*> beds(std::function<bool(const toric::ToricVariety&)> keep) {
    std::vector<const toric::ToricVariety*> out;
    for (const auto& n : toric::builtin_testbed_names()) {
        const auto& x = toric::builtin_testbed(n);
        if (keep(x)) out.push_back(&x);
    }
    return out;
}

bool has_prefix(const std::string& s, const std::string& p) { return s.compare(0, p.size(), p) == 0; }

std::size_t failures(const Report& r) { return r.count("fail"); }

struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<void(Outcome&)> body;
};

toric::AdmissibleFlag flag_of(std::vector<std::size_t> rays) { return toric::AdmissibleFlag{std::move(rays), std::nullopt}; }

}  // namespace

int main() {
    RunConfig cfg;
    std::size_t pairs_crit3 = 0;
    std::size_t computed_pairs = 0;
    std::size_t outside_pairs = 0;

    std::vector<Criterion> criteria;

    criteria.push_back({1, "curve base case", 1.0, [&](Outcome& o) {
        okounkov::BodyCache cache;
        const auto rep = verify::additivity_suite(toric::builtin_testbed("p1"), cfg, cache);
        std::size_t base = 0;
        for (const auto& c : rep.checks)
            if (has_prefix(c.key, "additivity/p1/base/")) {
                ++base;
                o.require(c.status == "pass", c.key);
            }
        o.note << base << " degrees exact";
        o.require(base == 4, "expected 4 degrees");
    }});

    criteria.push_back({2, "volume identity", 30.0, [&](Outcome& o) {
        okounkov::BodyCache cache;
        std::size_t n = 0;
        for (const auto* x : beds([](const auto&) { return true; })) {
            const auto rep = verify::volume_suite(*x, cfg, cache);
            n += rep.checks.size();
            o.require(failures(rep) == 0 && rep.count("pass") == rep.checks.size(), "identity on " + x->name());
        }
        o.note << n << " classes";
        o.require(n >= 50, "fewer than 50 classes");
    }});

    criteria.push_back({3, "additivity sweep", 120.0, [&](Outcome& o) {
        okounkov::BodyCache cache;
        for (const auto* x : beds([](const auto& x) { return x.dim() >= 2; })) {
            for (const auto& s : verify::setups(*x, cfg))
                for (const auto& c : additivity::cone_grid(*x, s, cfg.grid))
                    o.require(x->is_ample(c) && additivity::in_cone(*x, c, additivity::ConeCLM{s.l, s.m}).member,
                              "grid class outside C_L(M) on " + x->name());
            const auto rep = verify::additivity_suite(*x, cfg, cache);
            for (const auto& c : rep.checks) {
                ++pairs_crit3;
                o.require(c.status == "pass", c.key);
            }
        }
        computed_pairs += pairs_crit3;
        o.note << pairs_crit3 << " pairs equal";
        o.require(pairs_crit3 >= 100, "fewer than 100 pairs");
    }});

    criteria.push_back({12, "strict-inclusion search", 300.0, [&](Outcome& o) {
        okounkov::BodyCache cache;
        const auto& bl = toric::builtin_testbed("blpq-p2");
        const auto& rays = bl.fan().rays;
        // rays[1] = rays[0] + rays[2]: D_1 is an exceptional curve.
        IntVec sum = rays[0];
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += rays[2][i];
        o.require(sum == rays[1], "flag divisor is not exceptional");
        struct Case {
            const char* bed;
            std::vector<std::size_t> cone;
            bool must_be_empty;
        };
        for (const Case& k : {Case{"blpq-p2", {1, 0}, false}, Case{"p2", {0, 1}, true}, Case{"p1xp1", {1, 2}, true},
                              Case{"p1xp1", {0, 1}, true}}) {
            const auto& x = toric::builtin_testbed(k.bed);
            const auto s = additivity::search_strict(x, flag_of(k.cone), cfg.search_max_coeff, cfg.m_max, cache);
            computed_pairs += s.pairs_checked;
            outside_pairs += s.pairs_checked - s.pairs_in_theorem_cones;
            o.note << k.bed << ":" << s.pairs_checked << (s.found ? " strict" : " none") << "; ";
            if (k.must_be_empty) o.require(!s.found, std::string("strict pair on ") + k.bed);
            if (s.found) {
                o.require(s.verdict.status == additivity::Status::strict && s.verdict.witness.has_value(), "no witness");
                if (s.verdict.witness) {
                    o.require(s.verdict.combined.contains(*s.verdict.witness), "witness outside combined body");
                    o.require(!s.verdict.minkowski.contains(*s.verdict.witness), "witness inside Minkowski sum");
                }
            } else {
                o.require(s.pairs_checked == s.classes * (s.classes + 1) / 2, "search not exhaustive");
            }
        }
    }});

    criteria.push_back({4, "inclusion never fails", 120.0, [&](Outcome& o) {
        // Criteria 3 and 12 would have thrown on a violation; add pairs across chambers.
        okounkov::BodyCache cache;
        for (const auto* x : beds([](const auto& x) { return x.dim() == 2 && x.picard_rank() >= 2; })) {
            const auto& g = x->classes().nef_generators;
            RatVec base(x->picard_rank(), Rat(0));
            for (const auto& v : g) base = base + v;
            for (const auto& flag : verify::sweep_flags(*x, cfg))
                for (std::size_t i = 0; i < g.size(); ++i)
                    for (std::size_t j = 0; j < g.size(); ++j) {
                        const RatVec a = base + Rat(3) * g[i], b = base + Rat(3) * g[j];
                        if (!additivity::in_some_theorem_cone(*x, flag, a, b)) ++outside_pairs;
                        additivity::check_additivity(*x, a, b, flag, cfg.m_max, cache);
                        ++computed_pairs;
                    }
        }
        o.note << computed_pairs << " pairs, " << outside_pairs << " outside every C_L(M)";
        o.require(outside_pairs > 0, "no pair outside the theorem cones");
    }});

    criteria.push_back({5, "slice formula and mu endpoint", 60.0, [&](Outcome& o) {
        okounkov::BodyCache cache;
        std::size_t cases = 0, slices = 0, skipped = 0;
        for (const auto* x : beds([](const auto& x) { return x.dim() >= 2; })) {
            const auto rep = verify::slices_suite(*x, cfg, cache);
            for (const auto& c : rep.checks) {
                const bool endpoint = c.detail["check"] == "mu-endpoint";
                if (c.status == "skipped") {
                    ++skipped;
                    continue;
                }
                endpoint ? ++cases : ++slices;
                o.require(c.status == "pass", c.key);
            }
        }
        o.note << cases << " (M, flag) cases, " << slices << " slices exact, " << skipped
               << " grid points outside the ample cone";
        o.require(cases >= 20, "fewer than 20 cases");
    }});

    criteria.push_back({6, "proof replay", 60.0, [&](Outcome& o) {
        okounkov::BodyCache cache;
        std::set<std::string> pairs;
        std::size_t late = 0, early = 0, positive_t0 = 0, runs = 0;
        for (const auto* x : beds([](const auto& x) { return x.dim() >= 2; })) {
            const auto rep = verify::replay_suite(*x, cfg, cache);
            for (const auto& c : rep.checks) {
                if (c.status == "skipped") continue;
                ++runs;
                o.require(c.status == "pass", c.key);
                const auto& r = c.detail["replay"];
                pairs.insert(x->name() + c.detail["n1"].dump() + c.detail["n2"].dump() +
                             c.key.substr(0, c.key.rfind('/')));
                (r["case"] == "t>=t0" ? late : early)++;
                if (r["t0"] != zero()) ++positive_t0;
            }
        }
        o.note << pairs.size() << " pairs, " << runs << " replays (" << late << " t>=t0, " << early << " t<t0, "
               << positive_t0 << " with t0>0)";
        o.require(pairs.size() >= 10, "fewer than 10 pairs");
        o.require(late > 0 && early > 0, "a case never occurred");
        o.require(positive_t0 > 0, "no replay with t0 > 0");
    }});

    criteria.push_back({7, "mu additivity and boundary segment", 60.0, [&](Outcome& o) {
        okounkov::BodyCache cache;
        std::size_t n = 0;
        for (const auto* x : beds([](const auto& x) { return x.dim() >= 2; })) {
            const auto rep = verify::prop14_suite(*x, cfg, cache);
            for (const auto& c : rep.checks) {
                ++n;
                o.require(c.status == "pass" && c.detail["status"] == "equal" && c.detail["mu_defect"] == zero(),
                          c.key);
            }
        }
        o.note << n << " additive pairs";
        o.require(n == pairs_crit3, "pair count differs from the additivity sweep");
    }});

    criteria.push_back({8, "intersection numbers from bodies", 60.0, [&](Outcome& o) {
        okounkov::BodyCache cache;
        std::size_t tuples = 0, inj = 0;
        for (const char* name : {"p2", "p1xp1", "p1xp1xp1"}) {
            const auto rep = verify::cor13_suite(toric::builtin_testbed(name), cfg, cache);
            for (const auto& c : rep.checks)
                if (c.key.find("/injectivity/") == std::string::npos) {
                    ++tuples;
                    o.require(c.status == "pass", c.key);
                }
        }
        for (const auto* x : beds([](const auto& x) { return x.picard_rank() >= 2; })) {
            const auto rep = verify::cor13_suite(*x, cfg, cache);
            for (const auto& c : rep.checks)
                if (c.key.find("/injectivity/") != std::string::npos) {
                    ++inj;
                    o.require(c.status == "pass", c.key);
                }
        }
        // (L+M)^2 = 18 against (2+2)^2 = 16 for L = O(2,1), M = O(1,2).
        const auto& q = toric::builtin_testbed("p1xp1");
        const auto i = inequalities::injectivity_check(
            inequalities::make_delta_map(q, flag_of({0, 1}), {Rat(2), Rat(1)}, {Rat(1), Rat(2)}, cfg.m_max, cache));
        o.require(i.ok && i.self_sum == 18 && i.root_lo == 4 && i.root_hi == 4, "18 vs 16");
        o.note << tuples << " multidegree tuples, " << inj << " injectivity checks, 18 > 16";
    }});

    criteria.push_back({9, "restricted mixed-volume bound", 120.0, [&](Outcome& o) {
        okounkov::BodyCache cache;
        std::size_t n = 0, tight = 0;
        for (const auto* x : beds([](const auto& x) { return x.dim() >= 2; })) {
            const auto rep = verify::lemma61_suite(*x, cfg, cache);
            for (const auto& c : rep.checks) {
                ++n;
                o.require(c.status == "pass" && nonneg(c.detail["slack"]), c.key);
                if (c.detail["corresponding"] == true) {
                    ++tight;
                    o.require(c.detail["slack"] == zero(), c.key + " corresponding but slack > 0");
                }
            }
        }
        const auto& q = toric::builtin_testbed("p1xp1");
        for (long a = 1; a <= 3; ++a)
            for (long b = 1; b <= 3; ++b) {
                // L = O(a,b), M = O(1,0): L.M = b, so V = b/2.
                const auto r = inequalities::lemma61_check(q, {Rat(a), Rat(b)}, {Rat(1), Rat(0)}, flag_of({0, 1}),
                                                           cfg.m_max, cache);
                o.require(r.corresponding && r.record.lhs == Rat(b, 2) && r.record.slack == 0, "b/2 closed form");
            }
        o.note << n << " pairs, " << tight << " on corresponding flags with slack 0, b/2 closed form";
        o.require(n >= 100, "fewer than 100 pairs");
    }});

    criteria.push_back({10, "product inequality on nef triples", 120.0, [&](Outcome& o) {
        okounkov::BodyCache cache;
        for (const auto* x : beds([](const auto& x) { return x.dim() == 2 || x.dim() == 3; })) {
            const auto rep = verify::cor15_suite(*x, cfg, cache);
            o.require(rep.checks.size() >= 200 && rep.count("pass") == rep.checks.size(), x->name());
            o.note << x->name() << ":" << rep.count("pass") << " ";
        }
        const auto c = inequalities::cor15_check(toric::builtin_testbed("p1xp1"), {Rat(1), Rat(1)}, {Rat(1), Rat(0)},
                                                 {Rat(0), Rat(1)}, cfg.m_max, cache);
        o.require(c.ok && c.direct.lhs == 2 && c.direct.rhs == 2 && c.direct.slack == 0 && c.body.slack == 0,
                  "tight case");
        o.note << "tight case slack 0";
    }});

    criteria.push_back({11, "convex-body inequality and derivative", 120.0, [&](Outcome& o) {
        const auto rep = verify::lx_suite(cfg);
        std::size_t d2 = 0, d3 = 0, deriv = 0;
        for (const auto& c : rep.checks) {
            o.require(c.status == "pass", c.key);
            if (has_prefix(c.key, "lx/derivative/"))
                ++deriv;
            else
                (has_prefix(c.key, "lx/d2/") ? d2 : d3)++;
        }
        o.note << d2 << " triples in d=2, " << d3 << " in d=3, every k; " << deriv << " derivative pairs";
        o.require(d2 >= 200 && d3 >= 200 && deriv >= 10, "too few samples");
    }});

    bool all = true;
    std::vector<std::pair<int, std::string>> lines;
    for (auto& c : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(o);
        } catch (const InclusionViolation& e) {
            o.require(false, std::string("inclusion violated: ") + e.what());
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.require(s < c.limit_s, "over time limit");
        all = all && o.pass;
        char head[96];
        std::snprintf(head, sizeof head, "%s %2d %-38s %7.2fs / %.0fs  ", o.pass ? "PASS" : "FAIL", c.id,
                      c.name.c_str(), s, c.limit_s);
        lines.emplace_back(c.id, head + o.note.str());
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
    std::printf("%s: %zu criteria\n", all ? "ALL PASS" : "SOME FAILED", criteria.size());
    return all ? 0 : 1;
}
