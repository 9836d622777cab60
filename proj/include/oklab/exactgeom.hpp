#pragma once

// Exact rational convex bodies in R^d.
//
// A Polytope stores its canonical V-representation (extreme points only,
// sorted lexicographically) together with an H-representation: affine
// equations cutting out the affine hull plus facet inequalities inside it.
// Lower-dimensional and empty bodies are ordinary values.

#include "oklab/rational.hpp"

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace oklab::exactgeom {

using oklab::operator+;
using oklab::operator-;
using oklab::operator*;

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// normal . x <= offset (or == offset when used as an equation).
struct Halfspace {
    RatVec normal;
    Rat offset;

    bool satisfied_by(const RatVec& x) const { return dot(normal, x) <= offset; }
    bool tight_at(const RatVec& x) const { return dot(normal, x) == offset; }
    friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

class Polytope;

namespace detail {
struct PolytopeRep {
    std::size_t dim = 0;
    int affine_dim = -1;
    std::vector<RatVec> vertices;
    std::vector<Halfspace> equations;
    std::vector<Halfspace> facets;
    std::vector<std::vector<std::size_t>> facet_vertices;
};
Polytope make_polytope(PolytopeRep rep);
}  // namespace detail

class Polytope {
public:
    /// The empty body in R^dim.
    explicit Polytope(std::size_t dim = 0);

    static Polytope point(RatVec p);

    std::size_t dim() const { return rep_->dim; }
    bool empty() const { return rep_->vertices.empty(); }
    /// Dimension of the affine hull; -1 for the empty body.
    int affine_dim() const { return rep_->affine_dim; }
    bool full_dimensional() const { return rep_->affine_dim == static_cast<int>(rep_->dim); }

    const std::vector<RatVec>& vertices() const { return rep_->vertices; }
    const std::vector<Halfspace>& equations() const { return rep_->equations; }
    const std::vector<Halfspace>& facets() const { return rep_->facets; }
    /// Indices (into vertices()) of the vertices on each facet.
    const std::vector<std::vector<std::size_t>>& facet_vertices() const { return rep_->facet_vertices; }

    /// Equations expanded into inequality pairs, followed by the facets.
    std::vector<Halfspace> halfspaces() const;

    bool contains(const RatVec& x) const;
    bool contains(const Polytope& other) const;
    /// First inequality of halfspaces() that x violates.
    std::optional<Halfspace> violated_by(const RatVec& x) const;

    friend bool operator==(const Polytope& a, const Polytope& b);

private:
    explicit Polytope(std::shared_ptr<const detail::PolytopeRep> rep) : rep_(std::move(rep)) {}
    friend Polytope detail::make_polytope(detail::PolytopeRep rep);

    std::shared_ptr<const detail::PolytopeRep> rep_;
};

/// Convex hull of finitely many points (all of length dim).
Polytope convex_hull(std::span<const RatVec> points, std::size_t dim);
/// Dimension taken from the points; throws on an empty list.
Polytope convex_hull(std::span<const RatVec> points);
/// Convex hull of {p / denom : p in points} for lattice points; faster path
/// for large lattice point sets.
Polytope convex_hull_lattice(std::span<const IntVec> points, std::int64_t denom, std::size_t dim);

Polytope minkowski_sum(const Polytope& p, const Polytope& q);
Polytope scale(const Polytope& p, const Rat& c);
Polytope translate(const Polytope& p, const RatVec& v);

/// Exact d-dimensional volume; 0 for lower-dimensional or empty bodies.
Rat volume(const Polytope& p);

/// Mixed volume V(K_1,...,K_d) by polarization over subset sums.
Rat mixed_volume(std::span<const Polytope> bodies);
/// V(K^k, L^(d-k)).
Rat mixed_volume(const Polytope& k_body, unsigned k, const Polytope& l_body);

/// {x in R^(d-1) : (t, x) in P}.
Polytope slice(const Polytope& p, const Rat& t);
/// {t} x Q as a body in R^(dim Q + 1).
Polytope embed_slice(const Polytope& q, const Rat& t);

bool equals(const Polytope& p, const Polytope& q);

/// Vertex index pairs spanning edges (1-dimensional faces).
std::vector<std::pair<std::size_t, std::size_t>> edges(const Polytope& p);

/// Facet normals a (a . x >= 0 on the cone) of the pointed, full-dimensional
/// cone generated by `generators`, as primitive integer vectors.
std::vector<RatVec> cone_facets(const std::vector<RatVec>& generators, std::size_t dim);
/// Extreme rays of the pointed cone {x : a . x >= 0 for every a}.
std::vector<RatVec> cone_rays(const std::vector<RatVec>& inequalities, std::size_t dim);

/// Formal difference positive - negative in the vector space of bodies.
struct FormalBody {
    Polytope positive;
    Polytope negative;

    static FormalBody of(const Polytope& p);
    std::size_t dim() const { return positive.dim(); }
};

FormalBody operator+(const FormalBody& a, const FormalBody& b);
/// Any rational coefficient; negative coefficients swap the two sides.
FormalBody operator*(const Rat& c, const FormalBody& a);
/// (P,Q) ~ (P',Q') iff P + Q' = P' + Q.
bool equals(const FormalBody& a, const FormalBody& b);

}  // namespace oklab::exactgeom
