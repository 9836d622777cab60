#include "oklab/verify.hpp"
#include "oklab/linalg.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>

namespace oklab::verify {

namespace {

using additivity::SweepSetup;
using report::CheckRecord;
using report::json;
using report::to_json;
using toric::AdmissibleFlag;
using toric::TDivisor;

std::string pad(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%05zu", i);
    return buf;
}

std::string key(const std::string& suite, const ToricVariety& x, const std::string& part, std::size_t i) {
    return suite + "/" + x.name() + "/" + part + "/" + pad(i);
}

CheckRecord record(std::string k, std::string suite, bool pass, json detail) {
    return CheckRecord{std::move(k), std::move(suite), pass ? "pass" : "fail", std::move(detail), std::nullopt};
}

CheckRecord skipped(std::string k, std::string suite, const std::string& reason, json detail) {
    detail["reason"] = reason;
    return CheckRecord{std::move(k), std::move(suite), "skipped", std::move(detail), std::nullopt};
}

RatVec nef_sum(const ToricVariety& x) {
    RatVec s(x.picard_rank(), Rat(0));
    for (const auto& g : x.classes().nef_generators) s = s + g;
    return s;
}

std::vector<RatVec> ample_set(const ToricVariety& x) {
    const RatVec base = nef_sum(x);
    std::vector<RatVec> out{base};
    for (const auto& g : x.classes().nef_generators) {
        out.push_back(base + g);
        out.push_back(Rat(2) * base + g);
    }
    std::set<RatVec> seen;
    std::vector<RatVec> uniq;
    for (auto& c : out)
        if (seen.insert(c).second) uniq.push_back(std::move(c));
    return uniq;
}

std::uint64_t name_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Rat random_rat(std::mt19937_64& rng, long long hi) {
    const long long q = 1 + static_cast<long long>(rng() % 3);
    return Rat(static_cast<long long>(rng() % static_cast<std::uint64_t>(hi * q + 1)), q);
}

exactgeom::Polytope random_body(std::mt19937_64& rng, std::size_t d) {
    while (true) {
        std::vector<RatVec> pts;
        for (std::size_t i = 0; i < d + 3; ++i) {
            RatVec p(d);
            for (auto& c : p) c = random_rat(rng, 4);
            pts.push_back(std::move(p));
        }
        auto body = exactgeom::convex_hull(pts, d);
        if (body.full_dimensional()) return body;
    }
}

template <class F>
void for_each_pair(const ToricVariety& x, const RunConfig& cfg, F&& f) {
    for (const auto& s : setups(x, cfg)) {
        const auto classes = additivity::cone_grid(x, s, cfg.grid);
        for (std::size_t i = 0; i < classes.size(); ++i)
            for (std::size_t j = i; j < classes.size(); ++j) f(s, classes[i], classes[j]);
    }
}

std::vector<std::vector<std::size_t>> multisets(std::size_t n, std::size_t d) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(d, 0);
    while (true) {
        out.push_back(cur);
        std::size_t i = d;
        while (i > 0 && cur[i - 1] == n - 1) --i;
        if (i == 0) break;
        const std::size_t v = cur[i - 1] + 1;
        for (std::size_t k = i - 1; k < d; ++k) cur[k] = v;
    }
    return out;
}

}  // namespace

void validate(const RunConfig& cfg) {
    if (cfg.m_max < 1) throw ConfigError("--mmax must be positive");
    if (cfg.grid_den < 1) throw ConfigError("--grid-den must be positive");
    if (cfg.replay_den < 1) throw ConfigError("replay denominator must be positive");
    if (cfg.search_max_coeff < 1) throw ConfigError("--max-coeff must be positive");
    if (cfg.grid.empty()) throw ConfigError("coefficient grid is empty");
    for (const auto& g : cfg.grid)
        if (g <= 0) throw ConfigError("coefficient grid entries must be positive");
    if (cfg.format != "json" && cfg.format != "csv") throw ConfigError("--format must be json or csv");
}

json to_json(const RunConfig& cfg) {
    json out{{"testbeds", cfg.testbeds},
             {"m_max", cfg.m_max},
             {"grid_den", cfg.grid_den},
             {"grid", report::to_json(RatVec(cfg.grid))},
             {"seed", cfg.seed},
             {"random_triples", cfg.random_triples},
             {"max_flags_surface", cfg.max_flags_surface},
             {"max_flags_threefold", cfg.max_flags_threefold},
             {"replay_pairs", cfg.replay_pairs},
             {"replay_den", cfg.replay_den},
             {"search_max_coeff", cfg.search_max_coeff},
             {"format", cfg.format}};
    out["flag"] = cfg.flag ? json(*cfg.flag) : json(nullptr);
    out["catalog"] = cfg.catalog ? json(cfg.catalog->string()) : json(nullptr);
    return out;
}

std::vector<std::string> suite_names() {
    return {"additivity", "slices", "prop14", "cor13", "lemma61", "cor15", "lx", "volume", "all"};
}

std::vector<AdmissibleFlag> sweep_flags(const ToricVariety& x, const RunConfig& cfg) {
    if (cfg.flag) {
        AdmissibleFlag f;
        try {
            f = toric::parse_flag(*cfg.flag);
            x.validate(f);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("bad --flag for ") + x.name() + ": " + e.what());
        }
        return {f};
    }
    const std::size_t limit = x.dim() >= 3 ? cfg.max_flags_threefold : cfg.max_flags_surface;
    std::vector<AdmissibleFlag> out;
    for (const auto& c : x.fan().max_cones) {
        if (limit && out.size() == limit) break;
        out.push_back(AdmissibleFlag{c, std::nullopt});
    }
    return out;
}

std::vector<SweepSetup> setups(const ToricVariety& x, const RunConfig& cfg) {
    std::vector<SweepSetup> out;
    const RatVec m = nef_sum(x);
    for (auto flag : sweep_flags(x, cfg)) {
        const TDivisor l = x.ray_divisor(flag.rays[0]);
        const auto corr = toric::flag_corresponds(x, flag, l);
        if (!corr.holds) continue;
        flag.ratios = corr.ratios;
        out.push_back(SweepSetup{flag, x.class_of(l), m, corr.ratios.empty() ? Rat(1) : corr.ratios.front()});
    }
    return out;
}

Report make_report(const RunConfig& cfg) {
    Report r;
    r.version = report::version_string();
    r.config = to_json(cfg);
    return r;
}

Report volume_suite(const ToricVariety& x, const RunConfig& cfg, BodyCache& cache) {
    Report rep;
    const auto& gens = x.classes().nef_generators;
    const AdmissibleFlag flag = sweep_flags(x, cfg).front();
    std::set<RatVec> seen;
    std::vector<std::int64_t> c(gens.size(), 1);
    std::size_t idx = 0;
    while (true) {
        RatVec cls(x.picard_rank(), Rat(0));
        for (std::size_t i = 0; i < gens.size(); ++i) cls = cls + Rat(c[i]) * gens[i];
        if (x.is_big(cls) && seen.insert(cls).second) {
            const TDivisor d = x.divisor_of_class(cls);
            const auto body = cache.get(x, flag, d, cfg.m_max);
            const Rat top = toric::intersection_number(x, std::vector<TDivisor>(x.dim(), d));
            const Rat scaled = Rat(factorial(static_cast<unsigned>(x.dim()))) * exactgeom::volume(body.body);
            rep.add(record(key("volume", x, toric::to_string(flag), idx++), "volume", body.exact && scaled == top,
                           json{{"class", to_json(cls)},
                                {"d_factorial_volume", to_json(scaled)},
                                {"top_degree", to_json(top)},
                                {"exact", body.exact}}));
        }
        std::size_t i = 0;
        while (i < c.size() && c[i] == 4) c[i++] = 1;
        if (i == c.size()) break;
        ++c[i];
    }
    return rep;
}

Report additivity_suite(const ToricVariety& x, const RunConfig& cfg, BodyCache& cache) {
    Report rep;
    if (x.dim() == 1) {
        const AdmissibleFlag flag = sweep_flags(x, cfg).front();
        std::size_t idx = 0;
        for (const Rat& q : {Rat(1, 2), Rat(1), Rat(2), Rat(3)}) {
            const RatVec cls(x.picard_rank(), q);
            const auto body = okounkov::no_body_rational(x, x.divisor_of_class(cls), flag, cfg.m_max);
            const auto segment = exactgeom::convex_hull(std::vector<RatVec>{{Rat(0)}, {q}}, 1);
            rep.add(record(key("additivity", x, "base", idx++), "additivity",
                           body.exact && body.body == segment && body.body == toric::CurveModel::body(q),
                           json{{"degree", to_json(q)}, {"body", to_json(body.body)}}));
        }
    }
    std::size_t idx = 0;
    for_each_pair(x, cfg, [&](const SweepSetup& s, const RatVec& a, const RatVec& b) {
        const auto v = additivity::check_additivity(x, a, b, s.flag, cfg.m_max, cache);
        const auto ba = exactgeom::minkowski_sum(cache.get(x, s.flag, x.divisor_of_class(b), cfg.m_max).body,
                                                 cache.get(x, s.flag, x.divisor_of_class(a), cfg.m_max).body);
        const bool commutes = ba == v.minkowski;
        const auto ma = additivity::in_cone(x, a, additivity::ConeCLM{s.l, s.m});
        const auto mb = additivity::in_cone(x, b, additivity::ConeCLM{s.l, s.m});
        CheckRecord r = record(key("additivity", x, toric::to_string(s.flag), idx++), "additivity",
                               v.status == additivity::Status::equal && commutes && ma.member && mb.member,
                               json{{"n1", to_json(a)},
                                    {"n2", to_json(b)},
                                    {"lambda1", to_json(ma.lambda)},
                                    {"mu1", to_json(ma.mu)},
                                    {"lambda2", to_json(mb.lambda)},
                                    {"mu2", to_json(mb.mu)},
                                    {"status", additivity::to_string(v.status)},
                                    {"commutes", commutes},
                                    {"vol1", to_json(v.vol1)},
                                    {"vol2", to_json(v.vol2)},
                                    {"vol_sum", to_json(v.vol_sum)}});
        if (v.witness) r.witness = to_json(v);
        rep.add(std::move(r));
    });
    return rep;
}

Report slices_suite(const ToricVariety& x, const RunConfig& cfg, BodyCache& cache) {
    Report rep;
    if (x.dim() < 2) return rep;
    std::size_t idx = 0;
    for (const auto& flag : sweep_flags(x, cfg)) {
        const std::string part = toric::to_string(flag);
        const RatVec e = x.classes().eff_generators[flag.rays[0]];
        for (const auto& m : ample_set(x)) {
            const TDivisor md = x.divisor_of_class(m);
            const auto ep = okounkov::mu_endpoint_check(x, flag, md, cfg.m_max);
            rep.add(record(key("slices", x, part, idx++), "slices", ep.ok,
                           json{{"check", "mu-endpoint"}, {"class", to_json(m)}, {"mu", to_json(ep.mu)},
                                {"endpoint", to_json(ep.endpoint)}}));
            (void)cache;
            for (std::int64_t k = 0; Rat(k, cfg.grid_den) < ep.mu; ++k) {
                const Rat t(k, cfg.grid_den);
                json detail{{"check", "slice-formula"}, {"class", to_json(m)}, {"t", to_json(t)}};
                RatVec shifted = m - t * e;
                if (!x.is_ample(shifted)) {
                    rep.add(skipped(key("slices", x, part, idx++), "slices", "M - tE not ample", detail));
                    continue;
                }
                const auto sc = okounkov::slice_formula_check(x, flag, md, t, cfg.m_max);
                detail["slice"] = to_json(sc.slice);
                detail["restricted"] = to_json(sc.restricted);
                CheckRecord r = record(key("slices", x, part, idx++), "slices", sc.ok, detail);
                if (sc.witness) r.witness = to_json(*sc.witness);
                rep.add(std::move(r));
            }
        }
    }
    return rep;
}

Report replay_suite(const ToricVariety& x, const RunConfig& cfg, BodyCache& cache) {
    Report rep;
    if (x.dim() < 2) return rep;
    std::size_t idx = 0;
    for (const auto& s : setups(x, cfg)) {
        const auto classes = additivity::cone_grid(x, s, cfg.grid);
        const RatVec e = x.classes().eff_generators[s.flag.rays[0]];
        for (std::size_t p = 1; p <= cfg.replay_pairs && p < classes.size(); ++p) {
            const RatVec& a = classes[0];
            const RatVec& b = classes[p];
            const Rat top = toric::mu(x, a + b, e);
            for (std::int64_t k = 1; Rat(k, cfg.replay_den) < top; ++k) {
                const Rat t(k, cfg.replay_den);
                json detail{{"check", "replay"}, {"n1", to_json(a)}, {"n2", to_json(b)}, {"t", to_json(t)}};
                try {
                    const auto r = additivity::slice_decomposition_replay(x, s.flag, additivity::ConeCLM{s.l, s.m},
                                                                          a, b, t, cfg.m_max, cache);
                    detail["replay"] = to_json(r);
                    CheckRecord rec = record(key("replay", x, toric::to_string(s.flag), idx++), "slices", r.ok, detail);
                    for (const auto& step : r.trace)
                        if (!step.holds) {
                            rec.witness = json{{"step", step.name}, {"body", to_json(step.body)}};
                            break;
                        }
                    rep.add(std::move(rec));
                } catch (const PreconditionError& err) {
                    rep.add(skipped(key("replay", x, toric::to_string(s.flag), idx++), "slices", err.what(), detail));
                }
            }
        }
    }
    return rep;
}

Report prop14_suite(const ToricVariety& x, const RunConfig& cfg, BodyCache& cache) {
    Report rep;
    std::size_t idx = 0;
    for_each_pair(x, cfg, [&](const SweepSetup& s, const RatVec& a, const RatVec& b) {
        const auto v = additivity::check_additivity(x, a, b, s.flag, cfg.m_max, cache);
        const auto n = additivity::necessary_condition_check(x, a, b, s.flag, v.status, cfg.grid_den);
        json detail = to_json(n);
        detail["n1"] = to_json(a);
        detail["n2"] = to_json(b);
        detail["status"] = additivity::to_string(v.status);
        CheckRecord r = record(key("prop14", x, toric::to_string(s.flag), idx++), "prop14", n.ok, detail);
        if (n.off_boundary) r.witness = to_json(*n.off_boundary);
        rep.add(std::move(r));
    });
    return rep;
}

Report cor13_suite(const ToricVariety& x, const RunConfig& cfg, BodyCache& cache) {
    Report rep;
    const auto ss = setups(x, cfg);
    auto it = std::find_if(ss.begin(), ss.end(), [&](const SweepSetup& s) { return x.is_nef(s.l); });
    AdmissibleFlag flag = it != ss.end() ? it->flag : sweep_flags(x, cfg).front();
    const RatVec l = it != ss.end() ? it->l : x.classes().nef_generators.front();
    const RatVec m = nef_sum(x);
    const auto map = inequalities::make_delta_map(x, flag, l, m, cfg.m_max, cache);
    const std::vector<RatVec> pool{l, m, l + m, Rat(2) * m - l, Rat(3) * l + Rat(1, 2) * m};
    const std::vector<std::string> names{"L", "M", "L+M", "2M-L", "3L+M/2"};
    const std::string part = toric::to_string(flag);
    std::size_t idx = 0;
    for (const auto& ms : multisets(pool.size(), x.dim())) {
        std::vector<RatVec> classes;
        std::vector<std::string> label;
        for (auto i : ms) {
            classes.push_back(pool[i]);
            label.push_back(names[i]);
        }
        const auto c = inequalities::check_cor13(map, classes);
        std::vector<RatVec> rev(classes.rbegin(), classes.rend());
        const bool symmetric = inequalities::check_cor13(map, rev).volume_side == c.volume_side;
        std::vector<RatVec> scaled = classes;
        scaled[0] = Rat(5, 2) * scaled[0];
        const bool homogeneous = inequalities::check_cor13(map, scaled).volume_side == Rat(5, 2) * c.volume_side;
        json detail = to_json(c);
        detail["classes"] = label;
        detail["L"] = to_json(l);
        detail["M"] = to_json(m);
        detail["permutation_invariant"] = symmetric;
        detail["scaling_invariant"] = homogeneous;
        rep.add(record(key("cor13", x, part, idx++), "cor13", c.ok && symmetric && homogeneous, detail));
    }
    if (x.picard_rank() < 2) {
        rep.add(skipped(key("cor13", x, "injectivity", 0), "cor13", "Picard rank one: no independent pair",
                        json{{"check", "injectivity"}}));
        return rep;
    }
    std::size_t j = 0;
    for (const auto& g : x.classes().nef_generators) {
        const RatVec m2 = nef_sum(x) + g;
        if (linalg::rank({nef_sum(x), m2}) < 2) continue;
        const auto imap = inequalities::make_delta_map(x, flag, nef_sum(x), m2, cfg.m_max, cache);
        const auto inj = inequalities::injectivity_check(imap);
        json detail = to_json(inj);
        detail["L"] = to_json(imap.l);
        detail["M"] = to_json(imap.m);
        rep.add(record(key("cor13", x, "injectivity", j++), "cor13", inj.ok, detail));
    }
    return rep;
}

Report lemma61_suite(const ToricVariety& x, const RunConfig& cfg, BodyCache& cache) {
    Report rep;
    const auto ample = ample_set(x);
    std::vector<std::pair<RatVec, RatVec>> pairs;
    for (const auto& a : ample)
        for (const auto& b : ample) pairs.emplace_back(a, b);
    for (const auto& a : ample)
        for (const auto& g : x.classes().nef_generators) {
            pairs.emplace_back(a, g);
            pairs.emplace_back(g, a);
        }
    std::size_t idx = 0;
    for (const auto& flag : sweep_flags(x, cfg)) {
        for (const auto& [l, m] : pairs) {
            const auto r = inequalities::lemma61_check(x, l, m, flag, cfg.m_max, cache);
            json detail = to_json(r.record);
            detail["corresponding"] = r.corresponding;
            rep.add(record(key("lemma61", x, toric::to_string(flag), idx++), "lemma61", r.ok, detail));
        }
    }
    return rep;
}

Report cor15_suite(const ToricVariety& x, const RunConfig& cfg, BodyCache& cache) {
    Report rep;
    std::mt19937_64 rng(cfg.seed ^ name_hash(x.name()));
    const auto& gens = x.classes().nef_generators;
    auto draw = [&] {
        RatVec c(x.picard_rank(), Rat(0));
        for (const auto& g : gens) c = c + Rat(static_cast<long>(rng() % 5)) * g;
        return c;
    };
    for (std::size_t i = 0; i < cfg.random_triples; ++i) {
        const RatVec l = draw(), m = draw(), n = draw();
        auto c = inequalities::cor15_check(x, l, m, n, cfg.m_max, cache);
        c.direct.seed = c.body.seed = cfg.seed;
        json detail{{"direct", to_json(c.direct)},
                    {"bodies", to_json(c.body)},
                    {"flag", report::to_json(c.flag)},
                    {"flag_corresponds_to_m", c.flag_corresponds_to_m},
                    {"lemma_steps", c.lemma_steps},
                    {"draw", i}};
        rep.add(record(key("cor15", x, "seed" + std::to_string(cfg.seed), i), "cor15", c.ok, detail));
    }
    return rep;
}

Report lx_suite(const RunConfig& cfg) {
    Report rep;
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t d : {std::size_t{2}, std::size_t{3}}) {
        for (std::size_t i = 0; i < cfg.random_triples; ++i) {
            const auto k = random_body(rng, d), l = random_body(rng, d), m = random_body(rng, d);
            json per_k = json::array();
            bool ok = true;
            for (unsigned j = 0; j <= d; ++j) {
                auto r = inequalities::lehmann_xiao_check(k, l, m, j);
                r.seed = cfg.seed;
                ok = ok && r.pass();
                per_k.push_back(to_json(r));
            }
            rep.add(record("lx/d" + std::to_string(d) + "/" + pad(i), "lx", ok,
                           json{{"records", per_k}, {"K", to_json(k)}, {"L", to_json(l)}, {"M", to_json(m)}}));
        }
        for (std::size_t i = 0; i < 6; ++i) {
            const auto k = random_body(rng, d), l = random_body(rng, d);
            const auto dv = inequalities::mixed_volume_derivative_check(k, l);
            rep.add(record("lx/derivative/d" + std::to_string(d) + "/" + pad(i), "lx", dv.ok,
                           json{{"linear_coefficient", to_json(dv.linear_coefficient)},
                                {"mixed", to_json(dv.mixed)},
                                {"samples", to_json(dv.samples)}}));
        }
    }
    return rep;
}

Report search_report(const ToricVariety& x, const RunConfig& cfg, BodyCache& cache) {
    Report rep = make_report(cfg);
    const AdmissibleFlag flag = cfg.flag ? sweep_flags(x, cfg).front() : x.default_flag();
    const auto s = additivity::search_strict(x, flag, cfg.search_max_coeff, cfg.m_max, cache);
    json detail = to_json(s);
    detail["flag"] = report::to_json(flag);
    CheckRecord r = record(key("search", x, toric::to_string(flag), 0), "search-strict", true, detail);
    if (s.found && s.verdict.witness) r.witness = to_json(*s.verdict.witness);
    rep.add(std::move(r));
    return rep;
}

std::vector<const ToricVariety*> select_testbeds(const toric::Catalog& catalog, const RunConfig& cfg) {
    std::vector<const ToricVariety*> out;
    const auto names = cfg.testbeds.empty() ? catalog.names() : cfg.testbeds;
    for (const auto& n : names) {
        try {
            out.push_back(&catalog.get(n));
        } catch (const std::exception& e) {
            throw ConfigError("unknown testbed '" + n + "'");
        }
    }
    return out;
}

Report run_suite(const std::string& suite, const toric::Catalog& catalog, const RunConfig& cfg, BodyCache& cache) {
    validate(cfg);
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) throw ConfigError("unknown suite '" + suite + "'");
    const auto beds = select_testbeds(catalog, cfg);
    for (const auto* x : beds) sweep_flags(*x, cfg);
    Report rep = make_report(cfg);
    rep.config["suite"] = suite;
    auto want = [&](const char* s) { return suite == "all" || suite == s; };
    for (const auto* x : beds) {
        if (want("volume")) rep.append(volume_suite(*x, cfg, cache));
        if (want("additivity")) rep.append(additivity_suite(*x, cfg, cache));
        if (want("slices")) {
            rep.append(slices_suite(*x, cfg, cache));
            rep.append(replay_suite(*x, cfg, cache));
        }
        if (want("prop14")) rep.append(prop14_suite(*x, cfg, cache));
        if (want("cor13")) rep.append(cor13_suite(*x, cfg, cache));
        if (want("lemma61")) rep.append(lemma61_suite(*x, cfg, cache));
        if (want("cor15")) rep.append(cor15_suite(*x, cfg, cache));
    }
    if (want("lx")) rep.append(lx_suite(cfg));
    return rep;
}

}  // namespace oklab::verify
