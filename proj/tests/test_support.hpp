#pragma once

// Shared fixtures and independent oracles for the unit tests.

#include "oklab/exactgeom.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace oklab::testing {

inline Rat R(long long p, long long q = 1) { return Rat(p, q); }

inline RatVec V(std::initializer_list<Rat> xs) { return RatVec(xs); }

inline exactgeom::Polytope hull(std::vector<RatVec> pts) { return exactgeom::convex_hull(pts); }

/// Axis-parallel box [lo_i, hi_i].
inline exactgeom::Polytope box(const RatVec& lo, const RatVec& hi) {
    const std::size_t d = lo.size();
    std::vector<RatVec> pts;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        RatVec p(d);
        for (std::size_t i = 0; i < d; ++i) p[i] = (mask >> i) & 1 ? hi[i] : lo[i];
        pts.push_back(std::move(p));
    }
    return exactgeom::convex_hull(pts, d);
}

/// conv{0, s e_1, ..., s e_d}.
inline exactgeom::Polytope simplex(std::size_t d, const Rat& s = 1) {
    std::vector<RatVec> pts{RatVec(d, Rat(0))};
    for (std::size_t i = 0; i < d; ++i) {
        RatVec e(d, Rat(0));
        e[i] = s;
        pts.push_back(std::move(e));
    }
    return exactgeom::convex_hull(pts, d);
}

/// Random rational points with coordinates in [0, hi] and denominators <= 3.
inline std::vector<RatVec> random_points(std::mt19937_64& rng, std::size_t count, std::size_t d, long long hi = 4) {
    std::vector<RatVec> pts;
    for (std::size_t i = 0; i < count; ++i) {
        RatVec p(d);
        for (auto& x : p) {
            long long q = 1 + static_cast<long long>(rng() % 3);
            x = Rat(static_cast<long long>(rng() % static_cast<std::uint64_t>(hi * q + 1)), q);
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

inline Rat cross(const RatVec& o, const RatVec& a, const RatVec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Monotone-chain hull in the plane (independent of the library's hull).
inline std::vector<RatVec> planar_hull_oracle(std::vector<RatVec> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<RatVec> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

/// Shoelace area of the hull of a planar point set.
inline Rat planar_area_oracle(const std::vector<RatVec>& pts) {
    auto h = planar_hull_oracle(pts);
    if (h.size() < 3) return 0;
    Rat twice = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const auto& a = h[i];
        const auto& b = h[(i + 1) % h.size()];
        twice += a[0] * b[1] - a[1] * b[0];
    }
    return abs(twice) / 2;
}

}  // namespace oklab::testing
