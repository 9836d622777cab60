#include "oklab/linalg.hpp"
#include "oklab/toric.hpp"

#include <algorithm>

namespace oklab::toric {

namespace {

BigInt ceil_div(const Rat& r) {
    BigInt n = numerator(r), q = denominator(r);
    BigInt f = n / q;
    if (f * q != n && n > 0) f += 1;
    return f;
}

BigInt floor_div(const Rat& r) {
    BigInt n = numerator(r), q = denominator(r);
    BigInt f = n / q;
    if (f * q != n && n < 0) f -= 1;
    return f;
}

// Calls f on every d-subset of {0..n-1}.
template <typename F>
void for_each_subset(std::size_t n, std::size_t d, F&& f) {
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i) idx[i] = i;
    if (d > n) return;
    while (true) {
        f(idx);
        std::size_t i = d;
        while (i > 0 && idx[i - 1] == n - d + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

Polytope polytope_of_divisor(const ToricVariety& x, const TDivisor& d) {
    x.validate(d);
    const std::size_t dim = x.dim();
    const auto& rays = x.fan().rays;
    std::vector<RatVec> pts;
    for_each_subset(rays.size(), dim, [&](const std::vector<std::size_t>& s) {
        RatMatrix a;
        RatVec b;
        for (auto i : s) {
            a.push_back(to_ratvec(rays[i]));
            b.push_back(-d.coeffs[i]);
        }
        if (linalg::rank(a) != dim) return;
        auto u = linalg::solve(a, b, dim);
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (dot(rays[i], *u) < -d.coeffs[i]) return;
        pts.push_back(std::move(*u));
    });
    return exactgeom::convex_hull(pts, dim);
}

std::vector<IntVec> section_lattice(const ToricVariety& x, const TDivisor& d, std::int64_t m) {
    if (m <= 0) throw PreconditionError("section_lattice: level must be positive");
    const auto p = polytope_of_divisor(x, d);
    std::vector<IntVec> out;
    if (p.empty()) return out;
    const std::size_t dim = x.dim();
    const auto& rays = x.fan().rays;
    IntVec lo(dim), hi(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        Rat mn = p.vertices().front()[i], mx = mn;
        for (const auto& v : p.vertices()) {
            mn = std::min(mn, v[i]);
            mx = std::max(mx, v[i]);
        }
        lo[i] = ceil_div(Rat(m) * mn).convert_to<std::int64_t>();
        hi[i] = floor_div(Rat(m) * mx).convert_to<std::int64_t>();
        if (lo[i] > hi[i]) return out;
    }
    // <u, v_rho> >= ceil(-m a_rho) since the left side is an integer.
    IntVec bound(rays.size());
    for (std::size_t r = 0; r < rays.size(); ++r)
        bound[r] = ceil_div(-Rat(m) * d.coeffs[r]).convert_to<std::int64_t>();
    IntVec u = lo;
    while (true) {
        bool ok = true;
        for (std::size_t r = 0; r < rays.size() && ok; ++r) {
            std::int64_t s = 0;
            for (std::size_t i = 0; i < dim; ++i) s += rays[r][i] * u[i];
            ok = s >= bound[r];
        }
        if (ok) out.push_back(u);
        std::size_t i = 0;
        while (i < dim && u[i] == hi[i]) u[i] = lo[i], ++i;
        if (i == dim) break;
        ++u[i];
    }
    return out;
}

RatVec flag_map(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& d, const RatVec& u) {
    RatVec out;
    out.reserve(flag.rays.size());
    for (auto i : flag.rays) out.push_back(dot(x.fan().rays[i], u) + d.coeffs[i]);
    return out;
}

RatVec flag_valuation(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& d, const IntVec& u) {
    x.validate(flag);
    x.validate(d);
    if (u.size() != x.dim()) throw exactgeom::DimensionMismatch("flag_valuation: character has wrong length");
    const RatVec ur = to_ratvec(u);
    for (std::size_t r = 0; r < x.ray_count(); ++r)
        if (dot(x.fan().rays[r], ur) < -d.coeffs[r])
            throw PreconditionError("flag_valuation: character outside P_D");
    return flag_map(x, flag, d, ur);
}

Rat intersection_number(const ToricVariety& x, const std::vector<TDivisor>& divisors) {
    if (divisors.size() != x.dim())
        throw exactgeom::DimensionMismatch("intersection_number: need exactly d divisors");
    std::vector<Polytope> bodies;
    for (const auto& d : divisors) {
        if (!x.is_nef(x.class_of(d))) throw PreconditionError("intersection_number: divisor is not nef");
        bodies.push_back(polytope_of_divisor(x, d));
    }
    return Rat(factorial(static_cast<unsigned>(x.dim()))) * exactgeom::mixed_volume(bodies);
}

Rat intersection_number(const ToricVariety& x, const TDivisor& l, unsigned k, const TDivisor& m) {
    if (k > x.dim()) throw PreconditionError("intersection_number: exponent exceeds dimension");
    std::vector<TDivisor> args(k, l);
    args.insert(args.end(), x.dim() - k, m);
    return intersection_number(x, args);
}

StarModel star_of_first(const ToricVariety& x, const AdmissibleFlag& flag) {
    x.validate(flag);
    const std::size_t d = x.dim();
    if (d < 2) throw PreconditionError("star_of_first: a curve has no divisorial flag member");
    const auto& rays = x.fan().rays;
    RatMatrix cols(d, RatVec(d));
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) cols[i][j] = rays[flag.rays[j]][i];
    const RatMatrix binv = *linalg::inverse(cols);
    const std::size_t v1 = flag.rays[0];

    std::vector<std::size_t> adjacent;
    for (const auto& c : x.fan().max_cones)
        if (std::find(c.begin(), c.end(), v1) != c.end())
            for (auto r : c)
                if (r != v1) adjacent.push_back(r);
    std::sort(adjacent.begin(), adjacent.end());
    adjacent.erase(std::unique(adjacent.begin(), adjacent.end()), adjacent.end());

    Fan star;
    star.name = x.name() + "/D" + std::to_string(v1);
    star.dim = d - 1;
    for (auto r : adjacent) {
        RatVec c = linalg::apply(binv, to_ratvec(rays[r]));
        IntVec v;
        for (std::size_t i = 1; i < d; ++i) v.push_back(c[i].convert_to<std::int64_t>());
        star.rays.push_back(std::move(v));
    }
    auto local = [&](std::size_t r) {
        return static_cast<std::size_t>(std::lower_bound(adjacent.begin(), adjacent.end(), r) - adjacent.begin());
    };
    for (const auto& c : x.fan().max_cones) {
        if (std::find(c.begin(), c.end(), v1) == c.end()) continue;
        std::vector<std::size_t> cone;
        for (auto r : c)
            if (r != v1) cone.push_back(local(r));
        star.max_cones.push_back(std::move(cone));
    }
    // Put the induced flag cone first so that it is the reference cone.
    AdmissibleFlag sub;
    for (std::size_t i = 1; i < d; ++i) sub.rays.push_back(local(flag.rays[i]));
    auto sorted_sub = sub.rays;
    std::sort(sorted_sub.begin(), sorted_sub.end());
    std::stable_partition(star.max_cones.begin(), star.max_cones.end(), [&](const std::vector<std::size_t>& c) {
        auto s = c;
        std::sort(s.begin(), s.end());
        return s == sorted_sub;
    });
    return StarModel{ToricVariety(std::move(star)), sub, adjacent};
}

TDivisor restrict_to_first(const ToricVariety& x, const AdmissibleFlag& flag, const StarModel& star,
                           const TDivisor& d) {
    x.validate(d);
    const std::size_t dim = x.dim();
    const auto& rays = x.fan().rays;
    RatMatrix cols(dim, RatVec(dim));
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i) cols[i][j] = rays[flag.rays[j]][i];
    const RatMatrix binv = *linalg::inverse(cols);
    // u = -a_{v_1} e_1^*, so D + div(chi^u) has no v_1 component.
    const Rat a1 = d.coeffs[flag.rays[0]];
    TDivisor out{RatVec(star.parent_rays.size())};
    for (std::size_t k = 0; k < star.parent_rays.size(); ++k) {
        const std::size_t r = star.parent_rays[k];
        out.coeffs[k] = d.coeffs[r] - a1 * dot(binv[0], to_ratvec(rays[r]));
    }
    return out;
}

Polytope CurveModel::body(const Rat& degree) {
    if (degree <= 0) throw PreconditionError("curve body: degree must be positive");
    std::vector<RatVec> pts{RatVec{Rat(0)}, RatVec{degree}};
    return exactgeom::convex_hull(pts, 1);
}

}  // namespace oklab::toric
