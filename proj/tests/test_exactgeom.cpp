#include "oklab/exactgeom.hpp"
#include "oklab/linalg.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace oklab;
using namespace oklab::exactgeom;
using namespace oklab::testing;

namespace {

Polytope unit_square() { return box({R(0), R(0)}, {R(1), R(1)}); }

}  // namespace

// ---------------------------------------------------------------- convex_hull

TEST(ConvexHull, DropsInteriorPoint) {
    auto p = hull({V({0, 0}), V({1, 0}), V({0, 1}), V({R(1, 2), R(1, 4)})});
    EXPECT_EQ(p.vertices(), (std::vector<RatVec>{V({0, 0}), V({0, 1}), V({1, 0})}));
    EXPECT_EQ(p.affine_dim(), 2);
}

TEST(ConvexHull, SinglePoint) {
    auto p = hull({V({0, 0})});
    EXPECT_EQ(p.vertices().size(), 1u);
    EXPECT_EQ(p.affine_dim(), 0);
    EXPECT_TRUE(p.contains(V({0, 0})));
    EXPECT_FALSE(p.contains(V({0, 1})));
}

TEST(ConvexHull, LatticePointsOfDoubledSimplex) {
    // Oracle: enumerate the lattice points of 2 * (unit simplex) directly.
    std::vector<RatVec> pts;
    for (int x = 0; x <= 2; ++x)
        for (int y = 0; x + y <= 2; ++y) pts.push_back(V({x, y}));
    ASSERT_EQ(pts.size(), 6u);
    EXPECT_EQ(hull(pts), simplex(2, 2));
    EXPECT_EQ(hull(pts).vertices(), (std::vector<RatVec>{V({0, 0}), V({0, 2}), V({2, 0})}));
}

TEST(ConvexHull, Idempotent) {
    std::mt19937_64 rng(11);
    auto p = hull(random_points(rng, 12, 3));
    EXPECT_EQ(hull(p.vertices()), p);
}

TEST(ConvexHull, DimensionMismatch) {
    std::vector<RatVec> pts{V({0, 0}), V({1, 0, 0})};
    EXPECT_THROW(convex_hull(pts), DimensionMismatch);
}

TEST(ConvexHull, LowerDimensionalInSpace) {
    // A triangle in the plane x + y + z = 1.
    auto p = hull({V({1, 0, 0}), V({0, 1, 0}), V({0, 0, 1}), V({R(1, 3), R(1, 3), R(1, 3)})});
    EXPECT_EQ(p.affine_dim(), 2);
    EXPECT_EQ(p.vertices().size(), 3u);
    EXPECT_EQ(p.equations().size(), 1u);
    EXPECT_TRUE(p.contains(V({R(1, 2), R(1, 2), 0})));
    EXPECT_FALSE(p.contains(V({R(1, 2), R(1, 2), R(1, 2)})));
    EXPECT_EQ(volume(p), 0);
}

TEST(ConvexHull, EmptyInput) {
    std::vector<RatVec> none;
    auto p = convex_hull(none, 2);
    EXPECT_TRUE(p.empty());
    EXPECT_EQ(p.affine_dim(), -1);
    EXPECT_EQ(volume(p), 0);
}

TEST(ConvexHull, LatticePathMatchesGeneralPath) {
    std::vector<IntVec> lat;
    std::vector<RatVec> rat;
    for (int x = 0; x <= 9; ++x)
        for (int y = 0; y <= 7; ++y)
            for (int z = 0; z <= 5; ++z)
                if (2 * x + 3 * y + z <= 21) {
                    lat.push_back({x, y, z});
                    rat.push_back(V({R(x, 3), R(y, 3), R(z, 3)}));
                }
    EXPECT_EQ(convex_hull_lattice(lat, 3, 3), convex_hull(rat, 3));
}

TEST(ConvexHull, PlanarOracleAgreement) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        auto pts = random_points(rng, 3 + trial % 9, 2);
        auto oracle = planar_hull_oracle(pts);
        auto p = convex_hull(pts, 2);
        auto got = p.vertices();
        std::sort(oracle.begin(), oracle.end());
        if (oracle.size() >= 3) {
            EXPECT_EQ(got, oracle);
            EXPECT_EQ(volume(p), planar_area_oracle(pts));
        }
    }
}

TEST(ConvexHull, VrepAndHrepAgree) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t d = 2 + trial % 3;
        auto p = hull(random_points(rng, d + 3 + trial % 5, d));
        for (const auto& v : p.vertices()) EXPECT_TRUE(p.contains(v));
        for (std::size_t f = 0; f < p.facets().size(); ++f) {
            std::vector<RatVec> on;
            for (auto i : p.facet_vertices()[f]) {
                EXPECT_TRUE(p.facets()[f].tight_at(p.vertices()[i]));
                on.push_back(p.vertices()[i]);
            }
            EXPECT_EQ(linalg::affine_rank(on), p.affine_dim() - 1);
        }
        // Centroid is inside; a point beyond a facet is not.
        RatVec c(d, Rat(0));
        for (const auto& v : p.vertices()) c = c + v;
        c = Rat(1, static_cast<long long>(p.vertices().size())) * c;
        EXPECT_TRUE(p.contains(c));
        if (!p.facets().empty()) {
            RatVec out = c + Rat(100) * p.facets()[0].normal;
            EXPECT_FALSE(p.contains(out));
        }
    }
}

// ------------------------------------------------------------- minkowski_sum

TEST(MinkowskiSum, SquarePlusSquare) {
    EXPECT_EQ(minkowski_sum(unit_square(), unit_square()), box({0, 0}, {2, 2}));
}

TEST(MinkowskiSum, SquarePlusSegment) {
    auto seg = hull({V({0, 0}), V({1, 0})});
    EXPECT_EQ(minkowski_sum(unit_square(), seg), box({0, 0}, {2, 1}));
}

TEST(MinkowskiSum, PointTranslates) {
    auto tri = simplex(2);
    auto moved = minkowski_sum(tri, Polytope::point(V({3, R(-1, 2)})));
    EXPECT_EQ(moved, hull({V({3, R(-1, 2)}), V({4, R(-1, 2)}), V({3, R(1, 2)})}));
    EXPECT_TRUE(moved.contains(V({R(13, 4), 0})));
}

TEST(MinkowskiSum, NeutralCommutativeAssociative) {
    std::mt19937_64 rng(3);
    auto a = hull(random_points(rng, 5, 2));
    auto b = hull(random_points(rng, 4, 2));
    auto c = hull(random_points(rng, 6, 2));
    auto zero = Polytope::point(V({0, 0}));
    EXPECT_EQ(minkowski_sum(a, zero), a);
    EXPECT_EQ(minkowski_sum(a, b), minkowski_sum(b, a));
    EXPECT_EQ(minkowski_sum(minkowski_sum(a, b), c), minkowski_sum(a, minkowski_sum(b, c)));
}

TEST(MinkowskiSum, DimensionMismatch) {
    EXPECT_THROW(minkowski_sum(unit_square(), simplex(3)), DimensionMismatch);
}

// --------------------------------------------------------------------- scale

TEST(Scale, Examples) {
    EXPECT_EQ(scale(simplex(2), 3), hull({V({0, 0}), V({3, 0}), V({0, 3})}));
    EXPECT_EQ(scale(box({0, 0}, {2, 3}), R(1, 2)), box({0, 0}, {1, R(3, 2)}));
    EXPECT_EQ(scale(box({1, 1}, {2, 3}), 0), Polytope::point(V({0, 0})));
    EXPECT_EQ(scale(unit_square(), 1), unit_square());
    EXPECT_THROW(scale(unit_square(), -1), std::invalid_argument);
}

TEST(Scale, HrepTracksVertices) {
    auto p = scale(hull({V({1, 0}), V({0, 2}), V({3, 3})}), R(5, 2));
    EXPECT_TRUE(p.contains(V({R(5, 2), 0})));
    EXPECT_FALSE(p.contains(V({1, 0})));
    EXPECT_EQ(p, hull(p.vertices()));
}

// -------------------------------------------------------------------- volume

TEST(Volume, Examples) {
    EXPECT_EQ(volume(unit_square()), 1);
    EXPECT_EQ(volume(simplex(2, 2)), 2);
    EXPECT_EQ(volume(hull({V({0, 0}), V({1, 1})})), 0);
    EXPECT_EQ(volume(simplex(3)), R(1, 6));
    EXPECT_EQ(volume(box({0, 0, 0}, {1, 2, 3})), 6);
    EXPECT_EQ(volume(box({0, 0, 0, 0}, {1, 1, 1, 2})), 2);
    // Cross-polytope in R^3.
    EXPECT_EQ(volume(hull({V({1, 0, 0}), V({-1, 0, 0}), V({0, 1, 0}), V({0, -1, 0}), V({0, 0, 1}),
                           V({0, 0, -1})})),
              R(4, 3));
}

TEST(Volume, SliceIntegrationOracle3D) {
    // Oracle: vol = integral of slice areas. Slice area is quadratic between
    // consecutive vertex heights, so Simpson's rule is exact per interval.
    // Slice areas come from the planar shoelace oracle.
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 12; ++trial) {
        auto p = hull(random_points(rng, 7 + trial % 4, 3));
        std::vector<Rat> heights;
        for (const auto& v : p.vertices()) heights.push_back(v[0]);
        std::sort(heights.begin(), heights.end());
        heights.erase(std::unique(heights.begin(), heights.end()), heights.end());
        auto area = [&](const Rat& t) { return planar_area_oracle(slice(p, t).vertices()); };
        Rat integral = 0;
        for (std::size_t i = 0; i + 1 < heights.size(); ++i) {
            Rat a = heights[i], b = heights[i + 1];
            integral += (b - a) / 6 * (area(a) + 4 * area((a + b) / 2) + area(b));
        }
        EXPECT_EQ(volume(p), integral) << "trial " << trial;
    }
}

TEST(Volume, ProductBodyFubini) {
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) {
            auto rect = box({0, 0}, {a, b});
            // The slice length is b on [0, a] and the integral is a * b.
            auto s = slice(rect, R(a, 2));
            Rat length = s.vertices().back()[0] - s.vertices().front()[0];
            EXPECT_EQ(volume(s), length);
            EXPECT_EQ(length * a, volume(rect));
        }
}

// -------------------------------------------------------------- mixed_volume

TEST(MixedVolume, Examples) {
    std::vector<Polytope> a{unit_square(), box({0, 0}, {2, 2})};
    EXPECT_EQ(mixed_volume(a), 2);
    std::vector<Polytope> b{unit_square(), hull({V({0, 0}), V({0, 1})})};
    EXPECT_EQ(mixed_volume(b), R(1, 2));
}

TEST(MixedVolume, RectangleBilinearFormula) {
    // Oracle: brute-force polarization with closed-form rectangle areas,
    // (area of (a+c) x (b+e) - a b - c e) / 2 = (a e + b c) / 2.
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            for (int c = 0; c <= 2; ++c)
                for (int e = 0; e <= 2; ++e) {
                    Rat oracle = (Rat((a + c) * (b + e)) - a * b - c * e) / 2;
                    ASSERT_EQ(oracle, Rat(a * e + b * c, 2));
                    std::vector<Polytope> args{box({0, 0}, {a, b}), box({0, 0}, {c, e})};
                    EXPECT_EQ(mixed_volume(args), oracle);
                }
}

TEST(MixedVolume, WrongCount) {
    std::vector<Polytope> three{unit_square(), unit_square(), unit_square()};
    EXPECT_THROW(mixed_volume(three), DimensionMismatch);
    std::vector<Polytope> none;
    EXPECT_THROW(mixed_volume(none), std::invalid_argument);
}

TEST(MixedVolume, DiagonalIsVolumeAndSymmetric) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 4; ++trial) {
        auto k = hull(random_points(rng, 6, 3));
        auto l = hull(random_points(rng, 5, 3));
        auto m = hull(random_points(rng, 5, 3));
        std::vector<Polytope> kkk{k, k, k};
        EXPECT_EQ(mixed_volume(kkk), volume(k));
        std::vector<Polytope> args{k, l, m};
        Rat v = mixed_volume(args);
        std::sort(args.begin(), args.end(), [](const Polytope& x, const Polytope& y) {
            return x.vertices() < y.vertices();
        });
        do {
            EXPECT_EQ(mixed_volume(args), v);
        } while (std::next_permutation(args.begin(), args.end(), [](const Polytope& x, const Polytope& y) {
            return x.vertices() < y.vertices();
        }));
    }
}

TEST(MixedVolume, MultilinearUnderSumAndScaling) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 4; ++trial) {
        auto k = hull(random_points(rng, 5, 3));
        auto k2 = hull(random_points(rng, 5, 3));
        auto l = hull(random_points(rng, 5, 3));
        auto m = hull(random_points(rng, 4, 3));
        std::vector<Polytope> sum_args{minkowski_sum(k, k2), l, m};
        std::vector<Polytope> a{k, l, m}, b{k2, l, m};
        EXPECT_EQ(mixed_volume(sum_args), mixed_volume(a) + mixed_volume(b));
        std::vector<Polytope> scaled{scale(k, R(3, 2)), l, m};
        EXPECT_EQ(mixed_volume(scaled), R(3, 2) * mixed_volume(a));
    }
}

TEST(MixedVolume, PlanarBrunnMinkowskiExpansion) {
    // vol(K + L) = vol K + 2 V(K, L) + vol L with areas from the shoelace oracle.
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        auto kp = random_points(rng, 3 + trial % 5, 2);
        auto lp = random_points(rng, 3 + trial % 4, 2);
        std::vector<RatVec> sums;
        for (const auto& a : kp)
            for (const auto& b : lp) sums.push_back(a + b);
        std::vector<Polytope> args{hull(kp), hull(lp)};
        EXPECT_EQ(planar_area_oracle(sums),
                  planar_area_oracle(kp) + 2 * mixed_volume(args) + planar_area_oracle(lp));
    }
}

// --------------------------------------------------------------------- slice

TEST(Slice, Examples) {
    auto rect = box({0, 0}, {2, 3});
    EXPECT_EQ(slice(rect, 1), hull({V({0}), V({3})}));
    EXPECT_EQ(slice(simplex(2, 2), 1), hull({V({0}), V({1})}));
    EXPECT_TRUE(slice(rect, R(5, 2)).empty());
    EXPECT_EQ(slice(rect, 2), hull({V({0}), V({3})}));
    EXPECT_THROW(slice(hull({V({0}), V({1})}), 0), DimensionMismatch);
}

TEST(Slice, EmbedRoundTrip) {
    auto p = hull({V({0, 0, 0}), V({2, 0, 0}), V({0, 2, 0}), V({0, 0, 2}), V({1, 1, 1})});
    auto s = slice(p, 1);
    auto lifted = embed_slice(s, 1);
    EXPECT_EQ(lifted.dim(), 3u);
    EXPECT_TRUE(p.contains(lifted));
    EXPECT_EQ(slice(lifted, 1), s);
}

// -------------------------------------------------------------------- equals

TEST(Equals, Examples) {
    auto with_center = hull({V({0, 0}), V({1, 0}), V({0, 1}), V({1, 1}), V({R(1, 2), R(1, 2)})});
    EXPECT_TRUE(equals(unit_square(), with_center));
    EXPECT_FALSE(equals(simplex(2), unit_square()));
    auto p = hull({V({0, 1}), V({2, 0}), V({R(1, 3), 3})});
    EXPECT_TRUE(equals(p, minkowski_sum(p, Polytope::point(V({0, 0})))));
    EXPECT_THROW(equals(unit_square(), simplex(3)), DimensionMismatch);
}

// --------------------------------------------------------------- properties

TEST(Properties, InclusionMonotone) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t d = 2 + trial % 2;
        auto b = random_points(rng, 10, d);
        std::vector<RatVec> a(b.begin(), b.begin() + 4 + trial % 5);
        auto ha = hull(a), hb = hull(b);
        EXPECT_TRUE(hb.contains(ha));
    }
}

TEST(Properties, PureAndDeterministic) {
    std::mt19937_64 rng(8);
    auto pts = random_points(rng, 15, 3);
    auto p1 = hull(pts);
    std::reverse(pts.begin(), pts.end());
    auto p2 = hull(pts);
    EXPECT_EQ(p1.vertices(), p2.vertices());
    EXPECT_EQ(volume(p1), volume(p2));
}

// --------------------------------------------------------------- FormalBody

TEST(FormalBody, CancellationLaw) {
    auto k = unit_square();
    auto l = simplex(2);
    FormalBody fk = FormalBody::of(k), fl = FormalBody::of(l);
    // (K + L) - L ~ K
    EXPECT_TRUE(equals(fk + fl + Rat(-1) * fl, fk));
    // 2K - K ~ K
    EXPECT_TRUE(equals(Rat(2) * fk + Rat(-1) * fk, fk));
    EXPECT_FALSE(equals(fk, fl));
    // -L is not a convex body but is a valid formal element.
    FormalBody neg = Rat(-1) * fl;
    EXPECT_EQ(neg.positive, Polytope::point(V({0, 0})));
    EXPECT_EQ(neg.negative, l);
}

TEST(Cones, FacetsAndRaysRoundTrip) {
    std::vector<RatVec> gens{V({1, 0, 0}), V({0, 1, 0}), V({0, 0, 1}), V({1, 1, -1})};
    auto facets = cone_facets(gens, 3);
    for (const auto& a : facets)
        for (const auto& g : gens) EXPECT_GE(dot(a, g), 0);
    auto rays = cone_rays(facets, 3);
    EXPECT_EQ(rays.size(), 4u);
    for (const auto& g : gens) EXPECT_TRUE(std::find(rays.begin(), rays.end(), g) != rays.end());
}
