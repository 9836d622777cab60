#pragma once

// Newton-Okounkov bodies of torus-invariant divisors: hulls of normalized
// valuation vectors of sections, restricted bodies on Y_1, slices, and the
// endpoint of the first coordinate.

#include "oklab/toric.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>

namespace oklab::okounkov {

using exactgeom::Polytope;
using toric::AdmissibleFlag;
using toric::TDivisor;
using toric::ToricVariety;

/// Valuation images Gamma_m of the sections of mD, m >= 1.
struct GradedValuationFamily {
    std::string testbed;
    AdmissibleFlag flag;
    RatVec cls;
    std::size_t dim = 0;
    bool big = false;
    std::function<std::vector<IntVec>(std::int64_t)> level;
    /// D^d when the backend can certify it (nef classes).
    std::function<std::optional<Rat>()> top_degree;
};

/// Family of an integral divisor: Gamma_m is the flag map of m P_D.
GradedValuationFamily toric_family(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& d);
/// Family of an integral degree on a curve.
GradedValuationFamily curve_family(std::int64_t degree);

struct NOBody {
    Polytope body;
    AdmissibleFlag flag;
    RatVec cls;
    std::int64_t m_used = 0;
    bool exact = false;
};

/// Hull of the union of Gamma_m / m over m <= m_max. Exact when the hull is
/// unchanged from m = 1 to m = 3 and d! vol equals D^d.
NOBody no_body(const GradedValuationFamily& fam, std::int64_t m_max);
/// Delta(D) = (1/p) Delta(pD) with p clearing the denominators of D.
NOBody no_body_rational(const ToricVariety& x, const TDivisor& d, const AdmissibleFlag& flag, std::int64_t m_max);

/// The flag map image of P_D, for any effective D.
Polytope toric_body(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& d);

/// Body of N|_{Y_1} with the induced flag, for ample N.
Polytope restricted_body(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& n, std::int64_t m_max = 3);
/// restricted_body of N - t Y_1.
Polytope restricted_body(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& n, const Rat& t,
                         std::int64_t m_max = 3);

struct SliceCheck {
    bool ok = false;
    Polytope slice;
    Polytope restricted;
    std::optional<RatVec> witness;
};

/// Delta(M) at nu_1 = t against {t} x restricted body of M - t Y_1.
SliceCheck slice_formula_check(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& m, const Rat& t,
                               std::int64_t m_max = 3);

struct EndpointCheck {
    bool ok = false;
    Rat mu;
    Rat endpoint;
};

/// mu(M; Y_1) from the effective cone against max nu_1 over Delta(M).
EndpointCheck mu_endpoint_check(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& m,
                                std::int64_t m_max = 3);

/// A vertex of a outside b, or of b outside a.
std::optional<RatVec> symmetric_difference_witness(const Polytope& a, const Polytope& b);

/// Bodies keyed by (testbed, flag, class, m_max). Bodies depend only on the
/// numerical class, so divisors of equal class share an entry.
class BodyCache {
public:
    NOBody get(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& d, std::int64_t m_max);
    std::size_t size() const;
    void clear();

private:
    using Key = std::tuple<std::string, std::string, RatVec, std::int64_t>;
    mutable std::mutex mu_;
    std::map<Key, NOBody> entries_;
};

BodyCache& default_cache();

}  // namespace oklab::okounkov
