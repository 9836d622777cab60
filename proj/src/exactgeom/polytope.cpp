#include "oklab/exactgeom.hpp"
#include "oklab/linalg.hpp"

#include "double_description.hpp"

#include <algorithm>
#include <limits>

namespace oklab::exactgeom {

namespace detail {
Polytope make_polytope(PolytopeRep rep) {
    return Polytope(std::make_shared<const PolytopeRep>(std::move(rep)));
}
}  // namespace detail

namespace {

constexpr std::size_t kPrefilterThreshold = 48;

struct LocalFacet {
    RatVec normal;  // in projected coordinates
    Rat offset;
};

// Facets of the hull of points that affinely span R^k (k >= 1).
std::vector<LocalFacet> full_dimensional_facets(const std::vector<RatVec>& pts, std::size_t k) {
    std::vector<detail::IntRow> rows;
    rows.reserve(pts.size());
    for (const auto& q : pts) {
        RatVec row = q;
        row.push_back(Rat(-1));
        rows.push_back(detail::to_int_row(row));
    }
    auto rays = detail::extreme_rays(rows, k + 1);
    std::vector<LocalFacet> out;
    out.reserve(rays.size());
    for (const auto& r : rays) {
        LocalFacet f;
        f.normal.reserve(k);
        for (std::size_t i = 0; i < k; ++i) f.normal.emplace_back(r[i]);
        f.offset = Rat(r[k]);
        out.push_back(std::move(f));
    }
    return out;
}

RatVec project(const RatVec& p, const std::vector<std::size_t>& coords) {
    RatVec q;
    q.reserve(coords.size());
    for (auto c : coords) q.push_back(p[c]);
    return q;
}

// All nonzero vectors of {-1,0,1}^k.
std::vector<std::vector<int>> sign_directions(std::size_t k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k, -1);
    while (true) {
        bool nonzero = std::any_of(cur.begin(), cur.end(), [](int x) { return x != 0; });
        if (nonzero) out.push_back(cur);
        std::size_t i = 0;
        while (i < k && cur[i] == 1) cur[i++] = -1;
        if (i == k) break;
        ++cur[i];
    }
    return out;
}

// Points sorted lexicographically and deduplicated.
Polytope hull_sorted_unique(std::vector<RatVec> pts, std::size_t dim);

// Discards points that lie in the hull of a few direction-extreme points.
// Points inside that hull are convex combinations of other input points and
// therefore never extreme.
std::vector<std::size_t> prefilter(const std::vector<RatVec>& proj, std::size_t k) {
    std::vector<std::size_t> all(proj.size());
    for (std::size_t i = 0; i < proj.size(); ++i) all[i] = i;
    if (proj.size() <= kPrefilterThreshold || k > 6) return all;

    std::vector<std::size_t> cand;
    for (const auto& dir : sign_directions(k)) {
        std::size_t best = 0;
        Rat best_val;
        for (std::size_t i = 0; i < proj.size(); ++i) {
            Rat v = 0;
            for (std::size_t c = 0; c < k; ++c)
                if (dir[c]) v += dir[c] > 0 ? proj[i][c] : -proj[i][c];
            if (i == 0 || v > best_val) {
                best_val = v;
                best = i;
            }
        }
        cand.push_back(best);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::vector<RatVec> cpts;
    for (auto i : cand) cpts.push_back(proj[i]);
    if (static_cast<std::size_t>(linalg::affine_rank(cpts)) < k) return all;
    auto inner = full_dimensional_facets(cpts, k);

    std::vector<std::size_t> keep = cand;
    for (std::size_t i = 0; i < proj.size(); ++i) {
        if (std::binary_search(cand.begin(), cand.end(), i)) continue;
        bool inside = true;
        for (const auto& f : inner) {
            if (dot(f.normal, proj[i]) > f.offset) {
                inside = false;
                break;
            }
        }
        if (!inside) keep.push_back(i);
    }
    std::sort(keep.begin(), keep.end());
    return keep;
}

Polytope hull_sorted_unique(std::vector<RatVec> pts, std::size_t dim) {
    if (pts.empty()) return Polytope(dim);
    if (pts.size() == 1) return Polytope::point(pts.front());

    RatMatrix diffs;
    diffs.reserve(pts.size() - 1);
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
    auto ech = linalg::rref(diffs);
    const std::vector<std::size_t>& coords = ech.pivots;
    const std::size_t k = coords.size();

    detail::PolytopeRep rep;
    rep.dim = dim;
    rep.affine_dim = static_cast<int>(k);
    for (auto& n : linalg::nullspace(ech.rows, dim)) {
        RatVec prim = primitive_direction(n);
        Rat off = dot(prim, pts[0]);
        rep.equations.push_back({std::move(prim), std::move(off)});
    }

    std::vector<RatVec> proj;
    proj.reserve(pts.size());
    for (const auto& p : pts) proj.push_back(project(p, coords));

    std::vector<std::size_t> keep = prefilter(proj, k);
    std::vector<RatVec> kept_proj;
    kept_proj.reserve(keep.size());
    for (auto i : keep) kept_proj.push_back(proj[i]);
    auto local = full_dimensional_facets(kept_proj, k);

    // A point is extreme iff the normals of its tight facets span R^k.
    std::vector<std::size_t> vert_idx;
    for (std::size_t j = 0; j < keep.size(); ++j) {
        RatMatrix tight;
        for (const auto& f : local)
            if (dot(f.normal, kept_proj[j]) == f.offset) tight.push_back(f.normal);
        if (tight.size() >= k && linalg::rank(tight) == k) vert_idx.push_back(keep[j]);
    }
    // keep is increasing, so the vertex list stays lexicographically sorted.
    for (auto i : vert_idx) rep.vertices.push_back(pts[i]);

    for (const auto& f : local) {
        Halfspace h;
        h.normal.assign(dim, Rat(0));
        for (std::size_t c = 0; c < k; ++c) h.normal[coords[c]] = f.normal[c];
        h.offset = f.offset;
        std::vector<std::size_t> on;
        for (std::size_t v = 0; v < vert_idx.size(); ++v)
            if (dot(f.normal, proj[vert_idx[v]]) == f.offset) on.push_back(v);
        rep.facets.push_back(std::move(h));
        rep.facet_vertices.push_back(std::move(on));
    }
    return detail::make_polytope(std::move(rep));
}

}  // namespace

Polytope::Polytope(std::size_t dim) {
    detail::PolytopeRep rep;
    rep.dim = dim;
    rep_ = std::make_shared<const detail::PolytopeRep>(std::move(rep));
}

Polytope Polytope::point(RatVec p) {
    detail::PolytopeRep rep;
    rep.dim = p.size();
    rep.affine_dim = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        RatVec e(p.size(), Rat(0));
        e[i] = 1;
        rep.equations.push_back({std::move(e), p[i]});
    }
    rep.vertices.push_back(std::move(p));
    return detail::make_polytope(std::move(rep));
}

std::vector<Halfspace> Polytope::halfspaces() const {
    std::vector<Halfspace> out;
    for (const auto& e : equations()) {
        out.push_back(e);
        out.push_back({Rat(-1) * e.normal, -e.offset});
    }
    out.insert(out.end(), facets().begin(), facets().end());
    return out;
}

bool Polytope::contains(const RatVec& x) const {
    if (x.size() != dim()) throw DimensionMismatch("contains: point dimension mismatch");
    if (empty()) return false;
    for (const auto& e : equations())
        if (!e.tight_at(x)) return false;
    for (const auto& f : facets())
        if (!f.satisfied_by(x)) return false;
    return true;
}

bool Polytope::contains(const Polytope& other) const {
    if (other.dim() != dim()) throw DimensionMismatch("contains: body dimension mismatch");
    for (const auto& v : other.vertices())
        if (!contains(v)) return false;
    return true;
}

std::optional<Halfspace> Polytope::violated_by(const RatVec& x) const {
    if (x.size() != dim()) throw DimensionMismatch("violated_by: point dimension mismatch");
    for (auto& h : halfspaces())
        if (!h.satisfied_by(x)) return h;
    return std::nullopt;
}

bool operator==(const Polytope& a, const Polytope& b) {
    return a.dim() == b.dim() && a.vertices() == b.vertices();
}

Polytope convex_hull(std::span<const RatVec> points, std::size_t dim) {
    std::vector<RatVec> pts(points.begin(), points.end());
    for (const auto& p : pts)
        if (p.size() != dim) throw DimensionMismatch("convex_hull: points of mixed dimension");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return hull_sorted_unique(std::move(pts), dim);
}

Polytope convex_hull(std::span<const RatVec> points) {
    if (points.empty()) throw std::invalid_argument("convex_hull: no points and no dimension given");
    return convex_hull(points, points.front().size());
}

Polytope convex_hull_lattice(std::span<const IntVec> points, std::int64_t denom, std::size_t dim) {
    if (denom <= 0) throw std::invalid_argument("convex_hull_lattice: denominator must be positive");
    std::vector<IntVec> pts(points.begin(), points.end());
    for (const auto& p : pts)
        if (p.size() != dim) throw DimensionMismatch("convex_hull_lattice: points of mixed dimension");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto to_rat = [&](const IntVec& p) {
        RatVec r(dim);
        for (std::size_t i = 0; i < dim; ++i) r[i] = Rat(p[i], denom);
        return r;
    };

    std::vector<RatVec> keep;
    if (pts.size() > kPrefilterThreshold && dim <= 6) {
        std::vector<std::size_t> cand;
        for (const auto& dir : sign_directions(dim)) {
            std::size_t best = 0;
            std::int64_t best_val = std::numeric_limits<std::int64_t>::min();
            for (std::size_t i = 0; i < pts.size(); ++i) {
                std::int64_t v = 0;
                for (std::size_t c = 0; c < dim; ++c) v += dir[c] * pts[i][c];
                if (v > best_val) {
                    best_val = v;
                    best = i;
                }
            }
            cand.push_back(best);
        }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        std::vector<RatVec> cpts;
        for (auto i : cand) cpts.push_back(to_rat(pts[i]));
        Polytope inner = convex_hull(cpts, dim);

        // Integer facet data: normal . p <= offset * denom.
        struct IntFacet {
            std::vector<std::int64_t> normal;
            __int128 num, den;
        };
        std::vector<IntFacet> facets;
        bool usable = inner.full_dimensional();
        for (const auto& f : inner.facets()) {
            if (!usable) break;
            IntFacet g;
            for (const auto& a : f.normal) {
                if (denominator(a) != 1 || !fits_int64(numerator(a))) usable = false;
                else g.normal.push_back(numerator(a).convert_to<std::int64_t>());
            }
            if (!fits_int64(numerator(f.offset)) || !fits_int64(denominator(f.offset))) usable = false;
            if (!usable) break;
            g.num = numerator(f.offset).convert_to<std::int64_t>();
            g.den = denominator(f.offset).convert_to<std::int64_t>();
            facets.push_back(std::move(g));
        }
        if (usable) {
            keep = inner.vertices();
            for (const auto& p : pts) {
                bool inside = true;
                for (const auto& f : facets) {
                    __int128 s = 0;
                    for (std::size_t c = 0; c < dim; ++c) s += static_cast<__int128>(f.normal[c]) * p[c];
                    if (s * f.den > f.num * denom) {
                        inside = false;
                        break;
                    }
                }
                if (!inside) keep.push_back(to_rat(p));
            }
            return convex_hull(keep, dim);
        }
    }
    keep.reserve(pts.size());
    for (const auto& p : pts) keep.push_back(to_rat(p));
    return convex_hull(keep, dim);
}

std::vector<RatVec> cone_facets(const std::vector<RatVec>& generators, std::size_t dim) {
    std::vector<detail::IntRow> rows;
    for (const auto& g : generators) {
        if (g.size() != dim) throw DimensionMismatch("cone_facets: generator dimension mismatch");
        rows.push_back(detail::to_int_row(Rat(-1) * g));
    }
    std::vector<RatVec> out;
    for (const auto& r : detail::extreme_rays(rows, dim)) out.push_back(detail::to_rat_row(r));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<RatVec> cone_rays(const std::vector<RatVec>& inequalities, std::size_t dim) {
    std::vector<detail::IntRow> rows;
    for (const auto& a : inequalities) {
        if (a.size() != dim) throw DimensionMismatch("cone_rays: inequality dimension mismatch");
        rows.push_back(detail::to_int_row(Rat(-1) * a));
    }
    std::vector<RatVec> out;
    for (const auto& r : detail::extreme_rays(rows, dim)) out.push_back(detail::to_rat_row(r));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace oklab::exactgeom
