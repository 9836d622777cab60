#include "oklab/linalg.hpp"
#include "oklab/toric.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace oklab::toric {

namespace {

RatVec to_rat(const IntVec& v) { return to_ratvec(v); }

std::int64_t gcd_of(const IntVec& v) {
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

bool is_subset(const std::vector<std::size_t>& small, const std::vector<std::size_t>& big) {
    for (auto i : small)
        if (std::find(big.begin(), big.end(), i) == big.end()) return false;
    return true;
}

}  // namespace

std::string to_string(ConePosition p) {
    switch (p) {
        case ConePosition::interior: return "interior";
        case ConePosition::boundary: return "boundary";
        case ConePosition::outside: return "outside";
    }
    return "?";
}

AdmissibleFlag parse_flag(const std::string& text) {
    std::string body = text;
    if (body.rfind("cone:", 0) == 0) body = body.substr(5);
    AdmissibleFlag flag;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(item, &used);
            if (used != item.size() || v < 0) throw std::invalid_argument(item);
            flag.rays.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw ToricError("bad flag: " + text);
        }
    }
    if (flag.rays.empty()) throw ToricError("bad flag: " + text);
    return flag;
}

std::string to_string(const AdmissibleFlag& flag) {
    std::string out = "cone:";
    for (std::size_t i = 0; i < flag.rays.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(flag.rays[i]);
    }
    return out;
}

ToricVariety::ToricVariety(Fan fan) : fan_(std::move(fan)) {
    check_fan();
    derive_walls();
    derive_classes();
}

void ToricVariety::check_fan() {
    const std::size_t d = fan_.dim;
    if (d == 0) throw ToricError(fan_.name + ": dimension must be positive");
    if (fan_.rays.size() <= d) throw ToricError(fan_.name + ": too few rays for a complete fan");
    for (const auto& r : fan_.rays) {
        if (r.size() != d) throw ToricError(fan_.name + ": ray of wrong length");
        if (gcd_of(r) != 1) throw ToricError(fan_.name + ": ray is not primitive");
    }
    {
        auto sorted = fan_.rays;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ToricError(fan_.name + ": repeated ray");
    }
    std::set<std::vector<std::size_t>> seen;
    for (const auto& c : fan_.max_cones) {
        if (c.size() != d) throw ToricError(fan_.name + ": maximal cone needs d rays");
        auto s = c;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end() || s.back() >= fan_.rays.size())
            throw ToricError(fan_.name + ": bad ray index in cone");
        if (!seen.insert(s).second) throw ToricError(fan_.name + ": repeated cone");
        RatMatrix m;
        for (auto i : c) m.push_back(to_rat(fan_.rays[i]));
        Rat det = linalg::determinant(m);
        if (det != 1 && det != -1) throw ToricError(fan_.name + ": cone is not smooth");
    }
    if (fan_.max_cones.empty()) throw ToricError(fan_.name + ": no cones");

    // Completeness: every wall borders exactly two cones from opposite sides,
    // and a generic point lies in exactly one cone.
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> opposite;
    for (const auto& c : fan_.max_cones) {
        auto s = c;
        std::sort(s.begin(), s.end());
        for (std::size_t drop = 0; drop < d; ++drop) {
            std::vector<std::size_t> w;
            for (std::size_t j = 0; j < d; ++j)
                if (j != drop) w.push_back(s[j]);
            opposite[w].push_back(s[drop]);
        }
    }
    for (const auto& [w, opp] : opposite) {
        if (opp.size() != 2) throw ToricError(fan_.name + ": fan is not complete");
        RatMatrix rows;
        for (auto i : w) rows.push_back(to_rat(fan_.rays[i]));
        auto normal = linalg::nullspace(rows, d);
        if (normal.size() != 1) throw ToricError(fan_.name + ": degenerate wall");
        Rat a = dot(fan_.rays[opp[0]], normal[0]);
        Rat b = dot(fan_.rays[opp[1]], normal[0]);
        if (a * b >= 0) throw ToricError(fan_.name + ": cones overlap across a wall");
    }
    RatVec generic(d);
    Rat g = 1;
    for (std::size_t i = 0; i < d; ++i, g *= 1009) generic[i] = g;
    int hits = 0;
    for (const auto& c : fan_.max_cones) {
        RatMatrix cols(d, RatVec(d));
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < d; ++i) cols[i][j] = fan_.rays[c[j]][i];
        auto coords = linalg::solve(cols, generic, d);
        if (coords && std::all_of(coords->begin(), coords->end(), [](const Rat& x) { return x > 0; })) ++hits;
    }
    if (hits != 1) throw ToricError(fan_.name + ": cones do not cover space exactly once");
}

void ToricVariety::derive_walls() {
    const std::size_t d = fan_.dim;
    const std::size_t n = fan_.rays.size();
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> opposite;
    for (const auto& c : fan_.max_cones) {
        auto s = c;
        std::sort(s.begin(), s.end());
        for (std::size_t drop = 0; drop < d; ++drop) {
            std::vector<std::size_t> w;
            for (std::size_t j = 0; j < d; ++j)
                if (j != drop) w.push_back(s[j]);
            opposite[w].push_back(s[drop]);
        }
    }
    for (const auto& [w, opp] : opposite) {
        Wall wall;
        wall.rays = w;
        wall.p = opp[0];
        wall.q = opp[1];
        wall.curve.assign(n, Rat(0));
        wall.curve[wall.p] = 1;
        wall.curve[wall.q] = 1;
        if (!w.empty()) {
            // v_p + v_q + sum b_i w_i = 0
            RatMatrix cols(d, RatVec(w.size()));
            for (std::size_t j = 0; j < w.size(); ++j)
                for (std::size_t i = 0; i < d; ++i) cols[i][j] = fan_.rays[w[j]][i];
            RatVec rhs(d);
            for (std::size_t i = 0; i < d; ++i) rhs[i] = -Rat(fan_.rays[wall.p][i] + fan_.rays[wall.q][i]);
            auto b = linalg::solve(cols, rhs, w.size());
            if (!b) throw ToricError(fan_.name + ": wall relation not found");
            for (std::size_t j = 0; j < w.size(); ++j) wall.curve[w[j]] = (*b)[j];
        }
        walls_.push_back(std::move(wall));
    }
}

void ToricVariety::derive_classes() {
    const std::size_t d = fan_.dim;
    const std::size_t n = fan_.rays.size();
    classes_.dim_pic = n - d;
    classes_.reference_cone = 0;
    const auto& ref = fan_.max_cones[0];
    RatMatrix m;
    for (auto i : ref) m.push_back(to_rat(fan_.rays[i]));
    ref_dual_ = *linalg::inverse(m);
    for (std::size_t i = 0; i < n; ++i)
        if (std::find(ref.begin(), ref.end(), i) == ref.end()) classes_.class_rays.push_back(i);

    std::set<RatVec> nef;
    for (const auto& w : walls_) {
        RatVec f;
        for (auto i : classes_.class_rays) f.push_back(w.curve[i]);
        if (!is_zero(f)) nef.insert(primitive_direction(f));
    }
    classes_.nef_inequalities.assign(nef.begin(), nef.end());
    try {
        classes_.nef_generators = exactgeom::cone_rays(classes_.nef_inequalities, classes_.dim_pic);
    } catch (const std::logic_error&) {
        throw ToricError(fan_.name + ": nef cone is not pointed");
    }
    RatVec probe(classes_.dim_pic, Rat(0));
    for (const auto& g : classes_.nef_generators) probe = probe + g;
    if (classes_.nef_generators.empty() || !is_ample(probe)) throw ToricError(fan_.name + ": fan is not projective");

    std::set<RatVec> eff;
    for (std::size_t i = 0; i < n; ++i) {
        auto c = class_of(ray_divisor(i));
        classes_.eff_generators.push_back(c);
        if (!is_zero(c)) eff.insert(primitive_direction(c));
    }
    classes_.eff_inequalities = exactgeom::cone_facets({eff.begin(), eff.end()}, classes_.dim_pic);
}

AdmissibleFlag ToricVariety::default_flag() const { return AdmissibleFlag{fan_.max_cones[0], std::nullopt}; }

void ToricVariety::validate(const AdmissibleFlag& flag) const {
    auto s = flag.rays;
    std::sort(s.begin(), s.end());
    for (const auto& c : fan_.max_cones) {
        auto t = c;
        std::sort(t.begin(), t.end());
        if (s == t) return;
    }
    throw ToricError(fan_.name + ": flag " + to_string(flag) + " is not a maximal cone");
}

void ToricVariety::validate(const TDivisor& d) const {
    if (d.coeffs.size() != fan_.rays.size())
        throw ToricError(fan_.name + ": divisor needs one coefficient per ray");
}

RatVec ToricVariety::class_of(const TDivisor& d) const {
    validate(d);
    const auto& ref = fan_.max_cones[0];
    const std::size_t dd = fan_.dim;
    // u with <u, v_rho> = -a_rho on the reference cone.
    RatVec u(dd, Rat(0));
    for (std::size_t i = 0; i < dd; ++i)
        for (std::size_t j = 0; j < dd; ++j) u[i] -= ref_dual_[i][j] * d.coeffs[ref[j]];
    RatVec cls;
    for (auto rho : classes_.class_rays) cls.push_back(d.coeffs[rho] + dot(fan_.rays[rho], u));
    return cls;
}

TDivisor ToricVariety::divisor_of_class(const RatVec& cls) const {
    if (cls.size() != classes_.dim_pic) throw ToricError(fan_.name + ": class has wrong length");
    TDivisor d{RatVec(fan_.rays.size(), Rat(0))};
    for (std::size_t i = 0; i < cls.size(); ++i) d.coeffs[classes_.class_rays[i]] = cls[i];
    return d;
}

TDivisor ToricVariety::ray_divisor(std::size_t ray) const {
    TDivisor d{RatVec(fan_.rays.size(), Rat(0))};
    d.coeffs.at(ray) = 1;
    return d;
}

bool ToricVariety::is_nef(const RatVec& cls) const {
    return std::all_of(classes_.nef_inequalities.begin(), classes_.nef_inequalities.end(),
                       [&](const RatVec& f) { return dot(f, cls) >= 0; });
}

bool ToricVariety::is_ample(const RatVec& cls) const {
    return std::all_of(classes_.nef_inequalities.begin(), classes_.nef_inequalities.end(),
                       [&](const RatVec& f) { return dot(f, cls) > 0; });
}

bool ToricVariety::is_big(const RatVec& cls) const {
    return std::all_of(classes_.eff_inequalities.begin(), classes_.eff_inequalities.end(),
                       [&](const RatVec& f) { return dot(f, cls) > 0; });
}

bool ToricVariety::is_pseudoeffective(const RatVec& cls) const {
    return std::all_of(classes_.eff_inequalities.begin(), classes_.eff_inequalities.end(),
                       [&](const RatVec& f) { return dot(f, cls) >= 0; });
}

Rat ToricVariety::curve_degree(const Wall& w, const TDivisor& d) const {
    validate(d);
    return dot(w.curve, d.coeffs);
}

ConePosition boundary_membership(const ToricVariety& x, const RatVec& cls) {
    if (cls.size() != x.picard_rank()) throw ToricError(x.name() + ": class has wrong length");
    bool on_face = false;
    for (const auto& f : x.classes().eff_inequalities) {
        Rat v = dot(f, cls);
        if (v < 0) return ConePosition::outside;
        if (v == 0) on_face = true;
    }
    return on_face ? ConePosition::boundary : ConePosition::interior;
}

Rat mu(const ToricVariety& x, const RatVec& m_class, const RatVec& e_class) {
    if (!x.is_big(m_class)) throw PreconditionError("mu: M is not big");
    std::optional<Rat> best;
    for (const auto& f : x.classes().eff_inequalities) {
        Rat fe = dot(f, e_class);
        if (fe <= 0) continue;
        Rat s = dot(f, m_class) / fe;
        if (!best || s < *best) best = s;
    }
    if (!best) throw PreconditionError("mu: E is not a nonzero effective class");
    return *best;
}

Correspondence flag_corresponds(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& l) {
    x.validate(flag);
    x.validate(l);
    Correspondence out;
    const std::size_t d = x.dim();
    for (std::size_t i = 0; i + 2 <= d; ++i) {
        std::vector<std::size_t> chain(flag.rays.begin(), flag.rays.begin() + static_cast<std::ptrdiff_t>(i));
        const TDivisor next = x.ray_divisor(flag.rays[i]);
        std::optional<Rat> r;
        std::vector<std::pair<Rat, Rat>> pairs;
        for (const auto& w : x.walls()) {
            if (!is_subset(chain, w.rays)) continue;
            pairs.emplace_back(x.curve_degree(w, next), x.curve_degree(w, l));
        }
        for (const auto& [a, b] : pairs)
            if (a != 0) {
                r = b / a;
                break;
            }
        if (!r) r = Rat(0);
        for (const auto& [a, b] : pairs)
            if (*r * a != b) return Correspondence{};
        out.ratios.push_back(*r);
    }
    out.holds = true;
    return out;
}

}  // namespace oklab::toric
