#include "oklab/okounkov.hpp"

#include <algorithm>
#include <numeric>

namespace oklab::okounkov {

namespace {

bool integral(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return denominator(x) == 1; });
}

std::int64_t to_i64(const Rat& r) { return numerator(r).convert_to<std::int64_t>(); }

}  // namespace

GradedValuationFamily toric_family(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& d) {
    x.validate(flag);
    x.validate(d);
    if (!integral(d.coeffs)) throw PreconditionError("toric_family: divisor must be integral");
    GradedValuationFamily fam;
    fam.testbed = x.name();
    fam.flag = flag;
    fam.cls = x.class_of(d);
    fam.dim = x.dim();
    fam.big = x.is_big(fam.cls);
    const ToricVariety* xp = &x;
    fam.level = [xp, flag, d](std::int64_t m) {
        std::vector<IntVec> out;
        TDivisor md{Rat(m) * d.coeffs};
        for (const auto& u : toric::section_lattice(*xp, d, m)) {
            IntVec v;
            for (auto i : flag.rays) {
                std::int64_t s = 0;
                for (std::size_t k = 0; k < u.size(); ++k) s += xp->fan().rays[i][k] * u[k];
                v.push_back(s + to_i64(md.coeffs[i]));
            }
            out.push_back(std::move(v));
        }
        return out;
    };
    fam.top_degree = [xp, d]() -> std::optional<Rat> {
        if (!xp->is_nef(xp->class_of(d))) return std::nullopt;
        std::vector<TDivisor> args(xp->dim(), d);
        return toric::intersection_number(*xp, args);
    };
    return fam;
}

GradedValuationFamily curve_family(std::int64_t degree) {
    GradedValuationFamily fam;
    fam.testbed = "curve";
    fam.flag = AdmissibleFlag{{0}, std::nullopt};
    fam.cls = RatVec{Rat(degree)};
    fam.dim = 1;
    fam.big = degree > 0;
    // Vanishing orders at a point of sections of a degree-k bundle: 0..k.
    fam.level = [degree](std::int64_t m) {
        std::vector<IntVec> out;
        for (std::int64_t k = 0; k <= m * degree; ++k) out.push_back({k});
        return out;
    };
    fam.top_degree = [degree]() -> std::optional<Rat> { return Rat(degree); };
    return fam;
}

NOBody no_body(const GradedValuationFamily& fam, std::int64_t m_max) {
    if (!fam.big) throw PreconditionError("no_body: class is not big");
    if (m_max < 1) throw PreconditionError("no_body: m_max must be positive");
    Polytope hull(fam.dim);
    std::vector<Polytope> stages;
    std::int64_t denom = 1;
    for (std::int64_t m = 1; m <= m_max; ++m) {
        const std::int64_t next = std::lcm(denom, m);
        std::vector<IntVec> pts;
        for (const auto& v : hull.vertices()) {
            IntVec p;
            for (const auto& c : v) p.push_back(to_i64(c * Rat(next)));
            pts.push_back(std::move(p));
        }
        for (auto v : fam.level(m)) {
            for (auto& c : v) c *= next / m;
            pts.push_back(std::move(v));
        }
        hull = exactgeom::convex_hull_lattice(pts, next, fam.dim);
        denom = next;
        stages.push_back(hull);
    }
    NOBody out{hull, fam.flag, fam.cls, m_max, false};
    if (m_max >= 3 && stages[0] == stages[1] && stages[1] == stages[2]) {
        auto top = fam.top_degree();
        if (top && Rat(factorial(static_cast<unsigned>(fam.dim))) * exactgeom::volume(hull) == *top) out.exact = true;
    }
    return out;
}

NOBody no_body_rational(const ToricVariety& x, const TDivisor& d, const AdmissibleFlag& flag, std::int64_t m_max) {
    x.validate(d);
    const BigInt p = common_denominator(d.coeffs);
    TDivisor pd{Rat(p) * d.coeffs};
    NOBody b = no_body(toric_family(x, flag, pd), m_max);
    if (p != 1) {
        b.body = exactgeom::scale(b.body, Rat(1) / Rat(p));
        b.cls = x.class_of(d);
    }
    return b;
}

Polytope toric_body(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& d) {
    x.validate(flag);
    const Polytope p = toric::polytope_of_divisor(x, d);
    std::vector<RatVec> pts;
    for (const auto& u : p.vertices()) pts.push_back(toric::flag_map(x, flag, d, u));
    return exactgeom::convex_hull(pts, x.dim());
}

Polytope restricted_body(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& n, std::int64_t m_max) {
    x.validate(flag);
    if (x.dim() < 2) throw PreconditionError("restricted_body: no divisorial flag member on a curve");
    if (!x.is_ample(x.class_of(n))) throw PreconditionError("restricted_body: class is not ample");
    const auto star = toric::star_of_first(x, flag);
    const TDivisor r = toric::restrict_to_first(x, flag, star, n);
    NOBody b = no_body_rational(star.variety, r, star.flag, m_max);
    if (!b.exact) throw std::logic_error("restricted_body: body of an ample restriction not certified");
    return b.body;
}

Polytope restricted_body(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& n, const Rat& t,
                         std::int64_t m_max) {
    TDivisor shifted = n;
    shifted.coeffs.at(flag.rays.at(0)) -= t;
    return restricted_body(x, flag, shifted, m_max);
}

std::optional<RatVec> symmetric_difference_witness(const Polytope& a, const Polytope& b) {
    for (const auto& v : a.vertices())
        if (!b.contains(v)) return v;
    for (const auto& v : b.vertices())
        if (!a.contains(v)) return v;
    return std::nullopt;
}

SliceCheck slice_formula_check(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& m, const Rat& t,
                               std::int64_t m_max) {
    x.validate(flag);
    if (x.dim() < 2) throw PreconditionError("slice_formula_check: needs dimension at least 2");
    const RatVec cls = x.class_of(m);
    const RatVec e = x.classes().eff_generators[flag.rays[0]];
    if (t < 0 || t >= toric::mu(x, cls, e)) throw PreconditionError("slice_formula_check: t outside [0, mu)");
    const NOBody body = no_body_rational(x, m, flag, m_max);
    if (!body.exact) throw PreconditionError("slice_formula_check: body not certified");
    SliceCheck out;
    out.slice = exactgeom::slice(body.body, t);
    out.restricted = restricted_body(x, flag, m, t, m_max);
    out.witness = symmetric_difference_witness(out.slice, out.restricted);
    out.ok = !out.witness && out.slice == out.restricted;
    return out;
}

EndpointCheck mu_endpoint_check(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& m,
                                std::int64_t m_max) {
    const RatVec cls = x.class_of(m);
    const RatVec e = x.classes().eff_generators.at(flag.rays.at(0));
    EndpointCheck out;
    out.mu = toric::mu(x, cls, e);
    const NOBody body = no_body_rational(x, m, flag, m_max);
    out.endpoint = body.body.vertices().front()[0];
    for (const auto& v : body.body.vertices()) out.endpoint = std::max(out.endpoint, v[0]);
    out.ok = out.mu == out.endpoint;
    return out;
}

NOBody BodyCache::get(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& d, std::int64_t m_max) {
    Key key{x.name(), toric::to_string(flag), x.class_of(d), m_max};
    {
        std::lock_guard lock(mu_);
        auto it = entries_.find(key);
        if (it != entries_.end()) return it->second;
    }
    NOBody b = no_body_rational(x, x.divisor_of_class(std::get<2>(key)), flag, m_max);
    std::lock_guard lock(mu_);
    return entries_.emplace(std::move(key), std::move(b)).first->second;
}

std::size_t BodyCache::size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
}

void BodyCache::clear() {
    std::lock_guard lock(mu_);
    entries_.clear();
}

BodyCache& default_cache() {
    static BodyCache cache;
    return cache;
}

}  // namespace oklab::okounkov
