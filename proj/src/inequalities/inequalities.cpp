#include "oklab/inequalities.hpp"
#include "oklab/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace oklab::inequalities {

namespace {

using toric::TDivisor;

Rat inv_factorial(std::size_t d) { return Rat(1) / Rat(factorial(static_cast<unsigned>(d))); }

Rat inter(const ToricVariety& x, const RatVec& a, unsigned k, const RatVec& b) {
    return toric::intersection_number(x, x.divisor_of_class(a), k, x.divisor_of_class(b));
}

Rat power(const Rat& v, unsigned d) {
    Rat out = 1;
    for (unsigned i = 0; i < d; ++i) out *= v;
    return out;
}

std::optional<BigInt> exact_root(const BigInt& v, unsigned d) {
    if (v < 0) return std::nullopt;
    BigInt lo = 0, hi = 1;
    while (boost::multiprecision::pow(hi, d) < v) hi *= 2;
    while (lo < hi) {
        BigInt mid = (lo + hi) / 2;
        if (boost::multiprecision::pow(mid, d) < v)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (boost::multiprecision::pow(lo, d) == v) return lo;
    return std::nullopt;
}

// Does s differ from (a^(1/d) + b^(1/d))^d? Refines brackets until decided.
bool strict_root_sum(const Rat& s, const Rat& a, const Rat& b, unsigned d, Rat& lo_out, Rat& hi_out) {
    Rat width = 1;
    for (int iter = 0; iter < 200; ++iter) {
        auto [la, ha] = root_bracket(a, d, width);
        auto [lb, hb] = root_bracket(b, d, width);
        lo_out = la + lb;
        hi_out = ha + hb;
        if (s > power(hi_out, d) || s < power(lo_out, d)) return true;
        if (lo_out == hi_out) return false;
        width /= 4;
    }
    return false;
}

std::vector<AdmissibleFlag> orderings(const std::vector<std::size_t>& cone) {
    std::vector<std::size_t> rays = cone;
    std::sort(rays.begin(), rays.end());
    std::vector<AdmissibleFlag> out;
    do {
        out.push_back(AdmissibleFlag{rays, std::nullopt});
    } while (std::next_permutation(rays.begin(), rays.end()));
    return out;
}

}  // namespace

Polytope class_body(const ToricVariety& x, const AdmissibleFlag& flag, const RatVec& cls, std::int64_t m_max,
                    BodyCache& cache) {
    if (x.is_big(cls)) {
        auto b = cache.get(x, flag, x.divisor_of_class(cls), m_max);
        if (!b.exact) throw PreconditionError("class_body: body not certified");
        return b.body;
    }
    if (!x.is_nef(cls)) throw PreconditionError("class_body: class is neither big nor nef");
    return okounkov::toric_body(x, flag, x.divisor_of_class(cls));
}

DeltaMap make_delta_map(const ToricVariety& x, const AdmissibleFlag& flag, const RatVec& l, const RatVec& m,
                        std::int64_t m_max, BodyCache& cache) {
    x.validate(flag);
    if (!x.is_nef(l) || !x.is_nef(m)) throw PreconditionError("make_delta_map: basis classes must be nef");
    if (is_zero(l) || is_zero(m)) throw PreconditionError("make_delta_map: basis classes must be nonzero");
    DeltaMap map;
    map.variety = &x;
    map.flag = flag;
    map.l = l;
    map.m = m;
    map.independent = linalg::rank({l, m}) == 2;
    if (!map.independent && x.picard_rank() != 1) throw PreconditionError("make_delta_map: L and M are dependent");
    map.body_l = class_body(x, flag, l, m_max, cache);
    map.body_m = class_body(x, flag, m, m_max, cache);
    return map;
}

std::pair<Rat, Rat> coordinates(const DeltaMap& map, const RatVec& n) {
    auto c = additivity::in_cone(*map.variety, n, additivity::ConeCLM{map.l, map.m});
    return {c.lambda, c.mu};
}

FormalBody delta_map_apply(const DeltaMap& map, const RatVec& n) {
    auto [lambda, mu] = coordinates(map, n);
    return lambda * FormalBody::of(map.body_l) + mu * FormalBody::of(map.body_m);
}

std::vector<Rat> expand_products(const std::vector<std::pair<Rat, Rat>>& factors) {
    std::vector<Rat> poly{Rat(1)};
    for (const auto& [lambda, mu] : factors) {
        std::vector<Rat> next(poly.size() + 1, Rat(0));
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k] += poly[k] * mu;
            next[k + 1] += poly[k] * lambda;
        }
        poly = std::move(next);
    }
    return poly;
}

Cor13Check check_cor13(const DeltaMap& map, const std::vector<RatVec>& classes) {
    const ToricVariety& x = *map.variety;
    const std::size_t d = x.dim();
    if (classes.size() != d) throw PreconditionError("check_cor13: needs exactly d classes");
    std::vector<std::pair<Rat, Rat>> coords;
    for (const auto& c : classes) coords.push_back(coordinates(map, c));
    Cor13Check out;
    for (std::size_t k = 0; k <= d; ++k) {
        out.basis_intersections.push_back(inv_factorial(d) * inter(x, map.l, static_cast<unsigned>(k), map.m));
        out.basis_volumes.push_back(exactgeom::mixed_volume(map.body_l, static_cast<unsigned>(k), map.body_m));
    }
    const auto coeffs = expand_products(coords);
    out.intersection_side = 0;
    out.volume_side = 0;
    for (std::size_t k = 0; k <= d; ++k) {
        out.intersection_side += coeffs[k] * out.basis_intersections[k];
        out.volume_side += coeffs[k] * out.basis_volumes[k];
    }
    if (std::all_of(classes.begin(), classes.end(), [&](const RatVec& c) { return x.is_nef(c); })) {
        std::vector<TDivisor> divs;
        for (const auto& c : classes) divs.push_back(x.divisor_of_class(c));
        out.intersection_direct = inv_factorial(d) * toric::intersection_number(x, divs);
    }
    if (std::all_of(coords.begin(), coords.end(), [](const auto& c) { return c.first >= 0 && c.second >= 0; })) {
        std::vector<Polytope> bodies;
        for (const auto& c : classes) bodies.push_back(delta_map_apply(map, c).positive);
        out.volume_direct = exactgeom::mixed_volume(bodies);
    }
    out.ok = out.intersection_side == out.volume_side &&
             (!out.intersection_direct || *out.intersection_direct == out.intersection_side) &&
             (!out.volume_direct || *out.volume_direct == out.volume_side);
    return out;
}

std::pair<Rat, Rat> root_bracket(const Rat& v, unsigned d, const Rat& width) {
    if (v < 0 || d == 0) throw PreconditionError("root_bracket: needs v >= 0 and d >= 1");
    auto rn = exact_root(numerator(v), d);
    auto rd = exact_root(denominator(v), d);
    if (rn && rd) {
        Rat r(*rn, *rd);
        return {r, r};
    }
    Rat lo = 0, hi = std::max(Rat(1), v);
    while (hi - lo > width) {
        Rat mid = (lo + hi) / 2;
        if (power(mid, d) <= v)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

Injectivity injectivity_check(const DeltaMap& map) {
    const ToricVariety& x = *map.variety;
    if (!map.independent) throw PreconditionError("injectivity_check: L and M are dependent");
    if (!x.is_ample(map.l) || !x.is_ample(map.m)) throw PreconditionError("injectivity_check: L and M must be ample");
    const auto d = static_cast<unsigned>(x.dim());
    Injectivity out;
    out.self_l = inter(x, map.l, d, map.l);
    out.self_m = inter(x, map.m, d, map.m);
    out.self_sum = inter(x, map.l + map.m, d, map.l + map.m);
    const bool strict = strict_root_sum(out.self_sum, out.self_l, out.self_m, d, out.root_lo, out.root_hi);
    out.vol_l = exactgeom::volume(map.body_l);
    out.vol_m = exactgeom::volume(map.body_m);
    out.vol_sum = exactgeom::volume(exactgeom::minkowski_sum(map.body_l, map.body_m));
    Rat lo, hi;
    out.volumes_strict = strict_root_sum(out.vol_sum, out.vol_l, out.vol_m, d, lo, hi);
    out.ok = strict && out.volumes_strict && out.vol_l > 0 && out.vol_m > 0;
    return out;
}

InequalityRecord make_record(std::string name, const Rat& lhs, const Rat& rhs, std::vector<std::string> inputs,
                             std::uint64_t seed) {
    return InequalityRecord{std::move(name), lhs, rhs, rhs - lhs, std::move(inputs), seed};
}

Lemma61 lemma61_check(const ToricVariety& x, const RatVec& l, const RatVec& m, const AdmissibleFlag& flag,
                      std::int64_t m_max, BodyCache& cache) {
    x.validate(flag);
    if (!x.is_nef(l) || !x.is_nef(m)) throw PreconditionError("lemma61_check: classes must be nef");
    const std::size_t d = x.dim();
    const Polytope bl = class_body(x, flag, l, m_max, cache);
    const Polytope bm = class_body(x, flag, m, m_max, cache);
    Lemma61 out;
    out.record = make_record("lemma61", exactgeom::mixed_volume(bl, 1, bm), inv_factorial(d) * inter(x, l, 1, m),
                             {to_string(l), to_string(m), toric::to_string(flag)});
    out.corresponding = toric::flag_corresponds(x, flag, x.divisor_of_class(l)).holds ||
                        toric::flag_corresponds(x, flag, x.divisor_of_class(m)).holds;
    out.ok = out.record.pass() && (!out.corresponding || out.record.slack == 0);
    return out;
}

InequalityRecord lehmann_xiao_check(const Polytope& k_body, const Polytope& l_body, const Polytope& m_body,
                                    unsigned k) {
    const std::size_t d = l_body.dim();
    if (k_body.dim() != d || m_body.dim() != d) throw PreconditionError("lehmann_xiao_check: dimension mismatch");
    if (k > d) throw PreconditionError("lehmann_xiao_check: k must be in [0, d]");
    const Rat lhs = exactgeom::volume(l_body) * exactgeom::mixed_volume(k_body, k, m_body);
    const Rat rhs = Rat(binomial(static_cast<unsigned>(d), k)) * exactgeom::mixed_volume(k_body, k, l_body) *
                    exactgeom::mixed_volume(l_body, k, m_body);
    return make_record("lehmann-xiao", lhs, rhs, {"k=" + std::to_string(k)});
}

std::optional<AdmissibleFlag> corresponding_flag(const ToricVariety& x, const RatVec& cls) {
    const TDivisor div = x.divisor_of_class(cls);
    for (const auto& cone : x.fan().max_cones)
        for (auto flag : orderings(cone)) {
            auto c = toric::flag_corresponds(x, flag, div);
            if (c.holds) {
                flag.ratios = c.ratios;
                return flag;
            }
        }
    return std::nullopt;
}

Cor15 cor15_check(const ToricVariety& x, const RatVec& l, const RatVec& m, const RatVec& n, std::int64_t m_max,
                  BodyCache& cache) {
    if (!x.is_nef(l) || !x.is_nef(m) || !x.is_nef(n)) throw PreconditionError("cor15_check: classes must be nef");
    const auto d = static_cast<unsigned>(x.dim());
    const std::vector<std::string> inputs{to_string(l), to_string(m), to_string(n)};
    Cor15 out;
    const Rat ld = inter(x, l, d, l);
    const Rat mn = inter(x, m, 1, n);
    const Rat ml = inter(x, m, 1, l);
    const Rat ln = inter(x, l, 1, n);
    out.direct = make_record("cor15", ld * mn, Rat(d) * ml * ln, inputs);

    auto flag = corresponding_flag(x, m);
    out.flag_corresponds_to_m = flag.has_value();
    out.flag = flag ? *flag : x.default_flag();
    const Polytope bl = class_body(x, out.flag, l, m_max, cache);
    const Polytope bm = class_body(x, out.flag, m, m_max, cache);
    const Polytope bn = class_body(x, out.flag, n, m_max, cache);
    out.body = lehmann_xiao_check(bm, bl, bn, 1);
    out.body.name = "cor15-bodies";
    out.body.inputs = inputs;

    const Rat f = inv_factorial(d);
    const Rat v_mn = exactgeom::mixed_volume(bm, 1, bn);
    const Rat v_ml = exactgeom::mixed_volume(bm, 1, bl);
    const Rat v_ln = exactgeom::mixed_volume(bl, 1, bn);
    out.lemma_steps = exactgeom::volume(bl) == f * ld && v_mn == f * mn && v_ml <= f * ml && v_ln <= f * ln;
    out.ok = out.direct.pass() && out.body.pass() && out.lemma_steps;
    return out;
}

Derivative mixed_volume_derivative_check(const Polytope& k_body, const Polytope& l_body) {
    const std::size_t d = l_body.dim();
    if (k_body.dim() != d) throw PreconditionError("mixed_volume_derivative_check: dimension mismatch");
    Derivative out;
    RatMatrix vander;
    for (std::size_t t = 0; t <= d; ++t) {
        const Polytope body =
            t == 0 ? l_body : exactgeom::minkowski_sum(exactgeom::scale(k_body, Rat(static_cast<long>(t))), l_body);
        out.samples.push_back(exactgeom::volume(body));
        RatVec row;
        Rat p = 1;
        for (std::size_t j = 0; j <= d; ++j) {
            row.push_back(p);
            p *= Rat(static_cast<long>(t));
        }
        vander.push_back(std::move(row));
    }
    auto coeffs = linalg::solve(vander, out.samples, d + 1);
    if (!coeffs) throw std::logic_error("mixed_volume_derivative_check: singular interpolation");
    out.linear_coefficient = (*coeffs)[1];
    out.mixed = exactgeom::mixed_volume(k_body, 1, l_body);
    out.ok = out.linear_coefficient == Rat(static_cast<long>(d)) * out.mixed;
    return out;
}

Derivative mixed_volume_derivative_check(const ToricVariety& x, const RatVec& l, const RatVec& m,
                                         const AdmissibleFlag& flag, std::int64_t m_max, BodyCache& cache) {
    return mixed_volume_derivative_check(class_body(x, flag, l, m_max, cache), class_body(x, flag, m, m_max, cache));
}

}  // namespace oklab::inequalities
