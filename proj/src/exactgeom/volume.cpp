#include "oklab/exactgeom.hpp"
#include "oklab/linalg.hpp"

#include <algorithm>
#include <map>

namespace oklab::exactgeom {

namespace {

using Face = std::vector<std::size_t>;

// Fan triangulation of a face from its first vertex over a recursively
// triangulated boundary. Faces are vertex index sets of the polytope; the
// facets of a face S are the maximal sets S n F (F a facet of the polytope)
// of one dimension less.
class Triangulator {
public:
    explicit Triangulator(const Polytope& p) : p_(p) {}

    void run(const Face& face, int dim, std::vector<Face>& out) {
        if (dim == 0) {
            out.push_back({face.front()});
            return;
        }
        if (dim == 1) {
            out.push_back({face.front(), face.back()});
            return;
        }
        const std::size_t anchor = face.front();
        std::vector<Face> subfaces;
        for (const auto& fv : p_.facet_vertices()) {
            Face g;
            std::set_intersection(face.begin(), face.end(), fv.begin(), fv.end(), std::back_inserter(g));
            if (g.size() == face.size() || static_cast<int>(g.size()) < dim) continue;
            if (std::binary_search(g.begin(), g.end(), anchor)) continue;
            if (affine_dim(g) != dim - 1) continue;
            if (std::find(subfaces.begin(), subfaces.end(), g) != subfaces.end()) continue;
            subfaces.push_back(std::move(g));
        }
        for (const auto& g : subfaces) {
            std::vector<Face> sub;
            run(g, dim - 1, sub);
            for (auto& s : sub) {
                s.insert(s.begin(), anchor);
                out.push_back(std::move(s));
            }
        }
    }

private:
    int affine_dim(const Face& g) {
        auto it = cache_.find(g);
        if (it != cache_.end()) return it->second;
        std::vector<RatVec> pts;
        for (auto i : g) pts.push_back(p_.vertices()[i]);
        int r = linalg::affine_rank(pts);
        cache_.emplace(g, r);
        return r;
    }

    const Polytope& p_;
    std::map<Face, int> cache_;
};

}  // namespace

Rat volume(const Polytope& p) {
    if (p.empty() || !p.full_dimensional()) return 0;
    const std::size_t d = p.dim();
    if (d == 0) return 1;
    Face all(p.vertices().size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<Face> simplices;
    Triangulator(p).run(all, static_cast<int>(d), simplices);
    Rat total = 0;
    const auto& v = p.vertices();
    for (const auto& s : simplices) {
        RatMatrix m;
        m.reserve(d);
        for (std::size_t i = 1; i <= d; ++i) m.push_back(v[s[i]] - v[s[0]]);
        total += abs(linalg::determinant(std::move(m)));
    }
    return total / Rat(factorial(static_cast<unsigned>(d)));
}

Rat mixed_volume(std::span<const Polytope> bodies) {
    const std::size_t d = bodies.size();
    if (d == 0) throw std::invalid_argument("mixed_volume: no bodies");
    for (const auto& b : bodies)
        if (b.dim() != d)
            throw DimensionMismatch("mixed_volume: need exactly d bodies in R^d");

    // Identical arguments are grouped so each distinct subset sum is hulled once.
    std::vector<Polytope> distinct;
    std::vector<unsigned> mult;
    for (const auto& b : bodies) {
        auto it = std::find(distinct.begin(), distinct.end(), b);
        if (it == distinct.end()) {
            distinct.push_back(b);
            mult.push_back(1);
        } else {
            ++mult[static_cast<std::size_t>(it - distinct.begin())];
        }
    }

    const std::size_t g = distinct.size();
    std::vector<unsigned> a(g, 0);
    Rat total = 0;
    while (true) {
        unsigned size = 0;
        for (auto x : a) size += x;
        if (size > 0) {
            BigInt coeff = 1;
            Polytope sum = Polytope::point(RatVec(d, Rat(0)));
            for (std::size_t i = 0; i < g; ++i) {
                coeff *= binomial(mult[i], a[i]);
                if (a[i]) sum = minkowski_sum(sum, scale(distinct[i], Rat(a[i])));
            }
            Rat term = Rat(coeff) * volume(sum);
            if ((d - size) % 2) total -= term;
            else total += term;
        }
        std::size_t i = 0;
        while (i < g && a[i] == mult[i]) a[i++] = 0;
        if (i == g) break;
        ++a[i];
    }
    return total / Rat(factorial(static_cast<unsigned>(d)));
}

Rat mixed_volume(const Polytope& k_body, unsigned k, const Polytope& l_body) {
    const std::size_t d = k_body.dim();
    if (k > d) throw std::invalid_argument("mixed_volume: multiplicity exceeds dimension");
    std::vector<Polytope> args(k, k_body);
    args.insert(args.end(), d - k, l_body);
    return mixed_volume(args);
}

}  // namespace oklab::exactgeom
