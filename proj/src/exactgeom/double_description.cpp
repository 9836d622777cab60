#include "double_description.hpp"

#include "oklab/linalg.hpp"

#include <boost/dynamic_bitset.hpp>

#include <stdexcept>

namespace oklab::exactgeom::detail {

namespace {

using Bits = boost::dynamic_bitset<>;

struct Ray {
    IntRow v;
    Bits tight;
};

BigInt dot_int(const IntRow& a, const IntRow& b) {
    BigInt s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void make_primitive(IntRow& v) {
    BigInt g = 0;
    for (const auto& x : v) g = boost::multiprecision::gcd(g, BigInt(abs(x)));
    if (g > 1)
        for (auto& x : v) x /= g;
}

}  // namespace

IntRow to_int_row(const RatVec& v) {
    BigInt l = common_denominator(v);
    IntRow out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = numerator(v[i]) * (l / denominator(v[i]));
    return out;
}

RatVec to_rat_row(const IntRow& v) {
    RatVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
    return out;
}

std::vector<IntRow> extreme_rays(const std::vector<IntRow>& rows, std::size_t n) {
    const std::size_t m = rows.size();

    // Greedy choice of n independent rows for the initial simplicial cone.
    std::vector<std::size_t> basis;
    RatMatrix echelon;
    for (std::size_t i = 0; i < m && basis.size() < n; ++i) {
        RatMatrix trial = echelon;
        trial.push_back(to_rat_row(rows[i]));
        auto e = linalg::rref(trial);
        if (e.pivots.size() > echelon.size()) {
            echelon = std::move(e.rows);
            basis.push_back(i);
        }
    }
    if (basis.size() < n) throw std::logic_error("double description: cone is not pointed");

    RatMatrix a0;
    for (auto i : basis) a0.push_back(to_rat_row(rows[i]));
    auto inv = linalg::inverse(a0);
    if (!inv) throw std::logic_error("double description: singular initial basis");

    std::vector<Ray> rays;
    for (std::size_t j = 0; j < n; ++j) {
        RatVec col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = -(*inv)[i][j];
        Ray r{to_int_row(col), Bits(m)};
        make_primitive(r.v);
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) r.tight.set(basis[k]);
        rays.push_back(std::move(r));
    }

    Bits in_basis(m);
    for (auto i : basis) in_basis.set(i);

    for (std::size_t row = 0; row < m; ++row) {
        if (in_basis.test(row)) continue;
        const IntRow& a = rows[row];

        std::vector<BigInt> val(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot_int(a, rays[i].v);
            if (val[i] > 0) pos.push_back(i);
            else if (val[i] < 0) neg.push_back(i);
        }
        if (pos.empty()) {
            for (std::size_t i = 0; i < rays.size(); ++i)
                if (val[i] == 0) rays[i].tight.set(row);
            continue;
        }

        std::vector<Ray> next;
        for (std::size_t p : pos) {
            for (std::size_t q : neg) {
                Bits common = rays[p].tight & rays[q].tight;
                if (n >= 2 && common.count() + 2 < n) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == q) continue;
                    if (common.is_subset_of(rays[r].tight)) adjacent = false;
                }
                if (!adjacent) continue;
                Ray fresh{IntRow(n), common};
                for (std::size_t k = 0; k < n; ++k) fresh.v[k] = val[p] * rays[q].v[k] - val[q] * rays[p].v[k];
                make_primitive(fresh.v);
                fresh.tight.set(row);
                next.push_back(std::move(fresh));
            }
        }
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (val[i] > 0) continue;
            if (val[i] == 0) rays[i].tight.set(row);
            next.push_back(std::move(rays[i]));
        }
        rays = std::move(next);
    }

    std::vector<IntRow> out;
    out.reserve(rays.size());
    for (auto& r : rays) out.push_back(std::move(r.v));
    return out;
}

}  // namespace oklab::exactgeom::detail
