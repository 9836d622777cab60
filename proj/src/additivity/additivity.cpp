#include "oklab/additivity.hpp"
#include "oklab/linalg.hpp"

#include <algorithm>
#include <set>

namespace oklab::additivity {

namespace {

using okounkov::NOBody;
using toric::TDivisor;

// Coefficients (a, b) with v = a p + b q, or nullopt.
std::optional<std::pair<Rat, Rat>> solve2(const RatVec& p, const RatVec& q, const RatVec& v) {
    RatMatrix a(v.size(), RatVec(2));
    for (std::size_t i = 0; i < v.size(); ++i) {
        a[i][0] = p[i];
        a[i][1] = q[i];
    }
    auto x = linalg::solve(a, v, 2);
    if (!x) return std::nullopt;
    return std::make_pair((*x)[0], (*x)[1]);
}

bool dependent(const RatVec& a, const RatVec& b) { return linalg::rank({a, b}) < 2; }

RatVec unit(std::size_t d) {
    RatVec e(d, Rat(0));
    e[0] = 1;
    return e;
}

}  // namespace

std::string to_string(Status s) { return s == Status::equal ? "equal" : "strict"; }

Membership in_cone(const ToricVariety& x, const RatVec& n, const ConeCLM& cone) {
    if (n.size() != x.picard_rank() || cone.l.size() != n.size() || cone.m.size() != n.size())
        throw PreconditionError("in_cone: class has wrong length");
    if (is_zero(cone.m)) throw PreconditionError("in_cone: M must be nonzero");
    Membership out;
    if (dependent(cone.l, cone.m)) {
        auto c = solve2(cone.m, RatVec(n.size(), Rat(0)), n);
        if (!c) throw PreconditionError("in_cone: class outside span{L, M}");
        out.lambda = 0;
        out.mu = c->first;
    } else {
        auto c = solve2(cone.l, cone.m, n);
        if (!c) throw PreconditionError("in_cone: class outside span{L, M}");
        out.lambda = c->first;
        out.mu = c->second;
    }
    out.member = out.mu >= 0 && x.is_ample(n);
    return out;
}

AdditivityVerdict check_additivity(const ToricVariety& x, const RatVec& n1, const RatVec& n2,
                                   const AdmissibleFlag& flag, std::int64_t m_max, BodyCache& cache) {
    const NOBody b1 = cache.get(x, flag, x.divisor_of_class(n1), m_max);
    const NOBody b2 = cache.get(x, flag, x.divisor_of_class(n2), m_max);
    const NOBody b12 = cache.get(x, flag, x.divisor_of_class(n1 + n2), m_max);
    if (!b1.exact || !b2.exact || !b12.exact) throw PreconditionError("check_additivity: body not certified");
    AdditivityVerdict v;
    v.minkowski = exactgeom::minkowski_sum(b1.body, b2.body);
    v.combined = b12.body;
    v.vol1 = exactgeom::volume(b1.body);
    v.vol2 = exactgeom::volume(b2.body);
    v.vol_sum = exactgeom::volume(b12.body);
    if (!v.combined.contains(v.minkowski))
        throw InclusionViolation("Delta(N1) + Delta(N2) is not contained in Delta(N1 + N2) on " + x.name());
    if (v.combined == v.minkowski) return v;
    v.status = Status::strict;
    for (const auto& p : v.combined.vertices())
        if (auto h = v.minkowski.violated_by(p)) {
            v.witness = p;
            v.violated = h;
            break;
        }
    return v;
}

Replay slice_decomposition_replay(const ToricVariety& x, const AdmissibleFlag& flag, const ConeCLM& cone,
                                  const RatVec& n1_in, const RatVec& n2_in, const Rat& t, std::int64_t m_max,
                                  BodyCache& cache) {
    x.validate(flag);
    const std::size_t d = x.dim();
    if (d < 2) throw PreconditionError("replay: slices need dimension at least 2");
    const auto corr = toric::flag_corresponds(x, flag, x.divisor_of_class(cone.l));
    if (!corr.holds) throw PreconditionError("replay: flag does not correspond to L");
    Replay out;
    out.r = corr.ratios.front();
    out.t = t;

    auto m1 = in_cone(x, n1_in, cone);
    auto m2 = in_cone(x, n2_in, cone);
    if (!m1.member || !m2.member) throw PreconditionError("replay: classes outside C_L(M)");
    if (m1.mu <= 0 || m2.mu <= 0) throw PreconditionError("replay: needs mu_i > 0");
    RatVec n1 = n1_in, n2 = n2_in;
    if (out.r * m1.lambda / m1.mu > out.r * m2.lambda / m2.mu) {
        std::swap(n1, n2);
        std::swap(m1, m2);
        out.swapped = true;
    }
    out.lambda1 = m1.lambda;
    out.mu1 = m1.mu;
    out.lambda2 = m2.lambda;
    out.mu2 = m2.mu;
    const Rat c = m2.mu / m1.mu;
    out.t0 = out.r * m2.lambda - c * out.r * m1.lambda;

    const std::size_t v1 = flag.rays[0];
    const RatVec e_cls = x.classes().eff_generators[v1];
    const TDivisor e_div = x.ray_divisor(v1);
    const RatVec n12 = n1 + n2;
    const Rat mu_total = toric::mu(x, n12, e_cls);
    if (t <= 0 || t >= mu_total) throw PreconditionError("replay: t outside (0, mu)");

    const TDivisor d1 = x.divisor_of_class(n1);
    const TDivisor d2 = x.divisor_of_class(n2);
    const Polytope body1 = cache.get(x, flag, d1, m_max).body;
    const Polytope body2 = cache.get(x, flag, d2, m_max).body;
    const NOBody b12 = cache.get(x, flag, x.divisor_of_class(n12), m_max);
    if (!b12.exact) throw PreconditionError("replay: body not certified");
    const Polytope s0 = exactgeom::slice(b12.body, t);
    const Polytope s0_embedded = exactgeom::embed_slice(s0, t);
    const Polytope rhs = exactgeom::minkowski_sum(body1, body2);
    auto step = [&](std::string name, Polytope body, bool holds) {
        out.trace.push_back(ReplayStep{std::move(name), std::move(body), holds});
    };
    step("slice", s0_embedded, true);

    if (t >= out.t0) {
        out.late = true;
        const TDivisor a{(Rat(1) + c) * d1.coeffs};
        const TDivisor rep{a.coeffs + out.t0 * e_div.coeffs};
        const Polytope rep_body = okounkov::no_body_rational(x, rep, flag, m_max).body;
        const Polytope s1 = exactgeom::slice(rep_body, t);
        step("class-identity", exactgeom::embed_slice(s1, t), x.class_of(rep) == n12 && s1 == s0);

        const Polytope restricted = okounkov::restricted_body(x, flag, rep, t, m_max);
        step("slice-formula", exactgeom::embed_slice(restricted, t), restricted == s1);

        const RatVec shift = out.t0 * unit(d);
        const Polytope moved = exactgeom::translate(exactgeom::embed_slice(restricted, t - out.t0), shift);
        step("translate-e1", moved, moved == exactgeom::embed_slice(restricted, t));

        const Polytope a_body = okounkov::no_body_rational(x, a, flag, m_max).body;
        const Polytope a_slice =
            exactgeom::translate(exactgeom::embed_slice(exactgeom::slice(a_body, t - out.t0), t - out.t0), shift);
        step("shifted-slice", a_slice, a_slice == moved);

        const Polytope t0e = okounkov::toric_body(x, flag, TDivisor{out.t0 * e_div.coeffs});
        step("e1-in-body", t0e, t0e.contains(shift));

        const Polytope split = exactgeom::minkowski_sum(t0e, a_body);
        step("slice-in-split", split, split.contains(s0_embedded));

        const Polytope c_body = exactgeom::scale(body1, c);
        const Polytope scaled = exactgeom::minkowski_sum(c_body, body1);
        step("scaling", scaled, scaled == a_body);

        const TDivisor partner{out.t0 * e_div.coeffs + c * d1.coeffs};
        const Polytope partner_body = okounkov::no_body_rational(x, partner, flag, m_max).body;
        const Polytope lhs = exactgeom::minkowski_sum(t0e, c_body);
        step("superadditivity", lhs, partner_body.contains(lhs));
        step("class-identity-n2", partner_body, x.class_of(partner) == n2 && partner_body == body2);

        step("inclusion", rhs, rhs.contains(s0_embedded));
    } else {
        const Rat s = t / out.t0;
        const Rat a = Rat(1) + c * s;
        const Rat b = (out.t0 - t) / out.t0;
        step("class-identity", s0_embedded,
             n12 - t * e_cls == a * n1 + b * n2 && (t / out.r) * cone.l == t * e_cls);

        const Polytope t1 = okounkov::restricted_body(x, flag, x.divisor_of_class(n12), t, m_max);
        step("slice-formula", exactgeom::embed_slice(t1, t), t1 == s0);

        const auto star = toric::star_of_first(x, flag);
        const TDivisor r1 = toric::restrict_to_first(x, flag, star, d1);
        const TDivisor r2 = toric::restrict_to_first(x, flag, star, d2);
        const TDivisor comb{a * r1.coeffs + b * r2.coeffs};
        const Polytope t2 = okounkov::no_body_rational(star.variety, comb, star.flag, m_max).body;
        step("restriction", exactgeom::embed_slice(t2, t), t2 == t1);

        const TDivisor q{(c * s) * r1.coeffs + b * r2.coeffs};
        const Polytope body_r1 = okounkov::no_body_rational(star.variety, r1, star.flag, m_max).body;
        const Polytope body_q = okounkov::no_body_rational(star.variety, q, star.flag, m_max).body;
        const Polytope t3 = exactgeom::minkowski_sum(body_r1, body_q);
        step("induction", exactgeom::embed_slice(t3, t), t3 == t2);

        const Polytope t4 =
            exactgeom::minkowski_sum(exactgeom::embed_slice(body_r1, 0), exactgeom::embed_slice(body_q, t));
        step("embed", t4, t4 == exactgeom::embed_slice(t3, t));

        const Polytope rb1 = okounkov::restricted_body(x, flag, d1, m_max);
        const Polytope rb2 = okounkov::restricted_body(x, flag, d2, t, m_max);
        const Polytope t5 = exactgeom::minkowski_sum(exactgeom::embed_slice(rb1, 0), exactgeom::embed_slice(rb2, t));
        step("restricted-bodies", t5, t5 == t4 && rb1 == body_r1 && rb2 == body_q);

        const Polytope t6 = exactgeom::minkowski_sum(exactgeom::embed_slice(exactgeom::slice(body1, 0), 0),
                                                     exactgeom::embed_slice(exactgeom::slice(body2, t), t));
        step("slices", t6, t6 == t5 && t6 == s0_embedded);

        step("inclusion", rhs, rhs.contains(s0_embedded));
    }
    out.ok = std::all_of(out.trace.begin(), out.trace.end(), [](const ReplayStep& s) { return s.holds; });
    return out;
}

NecessaryCondition necessary_condition_check(const ToricVariety& x, const RatVec& l, const RatVec& m,
                                             const AdmissibleFlag& flag, Status verdict, std::int64_t grid_den) {
    x.validate(flag);
    if (!x.is_ample(l) || !x.is_ample(m)) throw PreconditionError("necessary_condition_check: L, M must be ample");
    if (grid_den <= 0) throw PreconditionError("necessary_condition_check: grid denominator must be positive");
    const RatVec e = x.classes().eff_generators[flag.rays[0]];
    NecessaryCondition out;
    out.mu_l = toric::mu(x, l, e);
    out.mu_m = toric::mu(x, m, e);
    out.mu_sum = toric::mu(x, l + m, e);
    out.l0 = l - out.mu_l * e;
    out.m0 = m - out.mu_m * e;
    if (verdict == Status::strict) {
        out.vacuous = true;
        out.ok = true;
        return out;
    }
    out.ok = out.mu_sum == out.mu_l + out.mu_m;
    for (std::int64_t k = 0; k <= grid_den; ++k) {
        const Rat s(k, grid_den);
        const RatVec p = (Rat(1) - s) * out.l0 + s * out.m0;
        ++out.grid_points;
        if (toric::boundary_membership(x, p) != toric::ConePosition::boundary) {
            out.ok = false;
            if (!out.off_boundary) out.off_boundary = p;
        }
    }
    return out;
}

std::vector<Rat> default_coefficient_grid() { return {Rat(1, 2), Rat(1), Rat(3, 2), Rat(2), Rat(3)}; }

std::vector<SweepSetup> sweep_setups(const ToricVariety& x, std::size_t max_flags) {
    std::vector<SweepSetup> out;
    RatVec m(x.picard_rank(), Rat(0));
    for (const auto& g : x.classes().nef_generators) m = m + g;
    for (const auto& c : x.fan().max_cones) {
        if (max_flags && out.size() == max_flags) break;
        AdmissibleFlag flag{c, std::nullopt};
        const auto l = x.ray_divisor(c[0]);
        const auto corr = toric::flag_corresponds(x, flag, l);
        if (!corr.holds) continue;
        flag.ratios = corr.ratios;
        out.push_back(SweepSetup{flag, x.class_of(l), m, corr.ratios.empty() ? Rat(1) : corr.ratios.front()});
    }
    return out;
}

std::vector<RatVec> cone_grid(const ToricVariety& x, const SweepSetup& s, const std::vector<Rat>& grid) {
    std::vector<Rat> lambdas{Rat(0)};
    for (const auto& g : grid) {
        lambdas.push_back(g);
        lambdas.push_back(-g);
    }
    std::set<RatVec> seen;
    std::vector<RatVec> out;
    for (const auto& mu : grid)
        for (const auto& lam : lambdas) {
            RatVec n = lam * s.l + mu * s.m;
            if (!x.is_ample(n) || !seen.insert(n).second) continue;
            out.push_back(std::move(n));
        }
    return out;
}

bool in_some_theorem_cone(const ToricVariety& x, const AdmissibleFlag& flag, const RatVec& n1, const RatVec& n2) {
    const RatVec e = x.classes().eff_generators[flag.rays[0]];
    if (dependent(e, n1)) return true;
    auto c = solve2(e, n1, n2);
    return c && c->second >= 0;
}

StrictSearch search_strict(const ToricVariety& x, const AdmissibleFlag& flag, std::int64_t max_coeff,
                           std::int64_t m_max, BodyCache& cache) {
    x.validate(flag);
    const auto& gens = x.classes().nef_generators;
    std::vector<RatVec> classes;
    std::set<RatVec> seen;
    std::vector<std::int64_t> c(gens.size(), 0);
    while (true) {
        RatVec n(x.picard_rank(), Rat(0));
        for (std::size_t i = 0; i < gens.size(); ++i) n = n + Rat(c[i]) * gens[i];
        if (x.is_ample(n) && seen.insert(n).second) classes.push_back(n);
        std::size_t i = 0;
        while (i < c.size() && c[i] == max_coeff) c[i++] = 0;
        if (i == c.size()) break;
        ++c[i];
    }
    StrictSearch out;
    out.classes = classes.size();
    out.max_coeff = max_coeff;
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t j = i; j < classes.size(); ++j) {
            ++out.pairs_checked;
            if (in_some_theorem_cone(x, flag, classes[i], classes[j])) ++out.pairs_in_theorem_cones;
            auto v = check_additivity(x, classes[i], classes[j], flag, m_max, cache);
            if (v.status == Status::strict) {
                out.found = true;
                out.n1 = classes[i];
                out.n2 = classes[j];
                out.verdict = std::move(v);
                return out;
            }
        }
    return out;
}

}  // namespace oklab::additivity
