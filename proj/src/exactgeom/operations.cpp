#include "oklab/exactgeom.hpp"
#include "oklab/linalg.hpp"

#include <algorithm>

namespace oklab::exactgeom {

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch("minkowski_sum: dimension mismatch");
    if (p.empty() || q.empty()) return Polytope(p.dim());
    if (p.vertices().size() == 1) return translate(q, p.vertices().front());
    if (q.vertices().size() == 1) return translate(p, q.vertices().front());
    std::vector<RatVec> sums;
    sums.reserve(p.vertices().size() * q.vertices().size());
    for (const auto& a : p.vertices())
        for (const auto& b : q.vertices()) sums.push_back(a + b);
    return convex_hull(sums, p.dim());
}

Polytope scale(const Polytope& p, const Rat& c) {
    if (c < 0) throw std::invalid_argument("scale: negative scalar");
    if (p.empty()) return p;
    if (c == 0) return Polytope::point(RatVec(p.dim(), Rat(0)));
    if (c == 1) return p;
    detail::PolytopeRep rep;
    rep.dim = p.dim();
    rep.affine_dim = p.affine_dim();
    for (const auto& v : p.vertices()) rep.vertices.push_back(c * v);
    for (const auto& e : p.equations()) rep.equations.push_back({e.normal, c * e.offset});
    for (const auto& f : p.facets()) rep.facets.push_back({f.normal, c * f.offset});
    rep.facet_vertices = p.facet_vertices();
    return detail::make_polytope(std::move(rep));
}

Polytope translate(const Polytope& p, const RatVec& v) {
    if (v.size() != p.dim()) throw DimensionMismatch("translate: dimension mismatch");
    if (p.empty()) return p;
    detail::PolytopeRep rep;
    rep.dim = p.dim();
    rep.affine_dim = p.affine_dim();
    for (const auto& x : p.vertices()) rep.vertices.push_back(x + v);
    for (const auto& e : p.equations()) rep.equations.push_back({e.normal, e.offset + dot(e.normal, v)});
    for (const auto& f : p.facets()) rep.facets.push_back({f.normal, f.offset + dot(f.normal, v)});
    rep.facet_vertices = p.facet_vertices();
    return detail::make_polytope(std::move(rep));
}

std::vector<std::pair<std::size_t, std::size_t>> edges(const Polytope& p) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const int k = p.affine_dim();
    const std::size_t n = p.vertices().size();
    if (k <= 0) return out;
    if (k == 1) {
        out.emplace_back(0, 1);
        return out;
    }
    std::vector<std::vector<std::size_t>> facets_at(n);
    for (std::size_t f = 0; f < p.facet_vertices().size(); ++f)
        for (auto v : p.facet_vertices()[f]) facets_at[v].push_back(f);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<std::size_t> common;
            std::set_intersection(facets_at[i].begin(), facets_at[i].end(), facets_at[j].begin(),
                                  facets_at[j].end(), std::back_inserter(common));
            if (common.size() + 1 < static_cast<std::size_t>(k)) continue;
            RatMatrix normals;
            for (auto f : common) normals.push_back(p.facets()[f].normal);
            if (linalg::rank(normals) + 1 == static_cast<std::size_t>(k)) out.emplace_back(i, j);
        }
    }
    return out;
}

Polytope slice(const Polytope& p, const Rat& t) {
    if (p.dim() < 2) throw DimensionMismatch("slice: ambient dimension must be at least 2");
    const std::size_t d = p.dim();
    std::vector<RatVec> pts;
    auto drop_first = [](const RatVec& x) { return RatVec(x.begin() + 1, x.end()); };
    const auto& vs = p.vertices();
    for (const auto& v : vs)
        if (v[0] == t) pts.push_back(drop_first(v));
    for (auto [i, j] : edges(p)) {
        const Rat a = vs[i][0] - t;
        const Rat b = vs[j][0] - t;
        if ((a < 0 && b > 0) || (a > 0 && b < 0)) {
            Rat lam = a / (a - b);
            pts.push_back(drop_first(vs[i] + lam * (vs[j] - vs[i])));
        }
    }
    return convex_hull(pts, d - 1);
}

Polytope embed_slice(const Polytope& q, const Rat& t) {
    std::vector<RatVec> pts;
    for (const auto& v : q.vertices()) {
        RatVec x;
        x.reserve(v.size() + 1);
        x.push_back(t);
        x.insert(x.end(), v.begin(), v.end());
        pts.push_back(std::move(x));
    }
    return convex_hull(pts, q.dim() + 1);
}

bool equals(const Polytope& p, const Polytope& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch("equals: dimension mismatch");
    return p == q;
}

FormalBody FormalBody::of(const Polytope& p) {
    return {p, Polytope::point(RatVec(p.dim(), Rat(0)))};
}

FormalBody operator+(const FormalBody& a, const FormalBody& b) {
    return {minkowski_sum(a.positive, b.positive), minkowski_sum(a.negative, b.negative)};
}

FormalBody operator*(const Rat& c, const FormalBody& a) {
    if (c >= 0) return {scale(a.positive, c), scale(a.negative, c)};
    return {scale(a.negative, -c), scale(a.positive, -c)};
}

bool equals(const FormalBody& a, const FormalBody& b) {
    return equals(minkowski_sum(a.positive, b.negative), minkowski_sum(b.positive, a.negative));
}

}  // namespace oklab::exactgeom
