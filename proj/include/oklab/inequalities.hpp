#pragma once

// The linear map from a plane of classes into formal differences of bodies,
// its compatibility with intersection products, and the mixed-volume
// inequalities built on it.

#include "oklab/additivity.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace oklab::inequalities {

using exactgeom::FormalBody;
using exactgeom::Polytope;
using okounkov::BodyCache;
using toric::AdmissibleFlag;
using toric::ToricVariety;

/// Certified body of a big class, or the dictionary image of P_D for a nef
/// class that is not big.
Polytope class_body(const ToricVariety& x, const AdmissibleFlag& flag, const RatVec& cls, std::int64_t m_max,
                    BodyCache& cache = okounkov::default_cache());

/// lambda L + mu M -> lambda Delta(L) + mu Delta(M).
struct DeltaMap {
    const ToricVariety* variety = nullptr;
    AdmissibleFlag flag;
    RatVec l, m;
    Polytope body_l, body_m;
    /// False only on Picard rank one, where U is the whole line N^1.
    bool independent = true;
};

/// L and M must be nef with a body; they must be independent unless rho = 1.
DeltaMap make_delta_map(const ToricVariety& x, const AdmissibleFlag& flag, const RatVec& l, const RatVec& m,
                        std::int64_t m_max, BodyCache& cache = okounkov::default_cache());

/// Coordinates (lambda, mu) of N in the basis; PreconditionError outside U.
std::pair<Rat, Rat> coordinates(const DeltaMap& map, const RatVec& n);

FormalBody delta_map_apply(const DeltaMap& map, const RatVec& n);

struct Cor13Check {
    bool ok = false;
    /// (1/d!) M_1 ... M_d by expansion in L^k M^(d-k), and directly when
    /// every M_i is nef.
    Rat intersection_side;
    std::optional<Rat> intersection_direct;
    /// V(Delta(M_1), ..., Delta(M_d)) by expansion in V(Delta(L)^k, Delta(M)^(d-k)),
    /// and directly on the image bodies when every coefficient is nonnegative.
    Rat volume_side;
    std::optional<Rat> volume_direct;
    /// Index k: (1/d!) L^k M^(d-k) and V(Delta(L)^k, Delta(M)^(d-k)).
    std::vector<Rat> basis_intersections;
    std::vector<Rat> basis_volumes;
};

Cor13Check check_cor13(const DeltaMap& map, const std::vector<RatVec>& classes);

struct Injectivity {
    bool ok = false;
    Rat self_sum;             // (L+M)^d
    Rat self_l, self_m;       // L^d, M^d
    Rat root_lo, root_hi;     // bracket of (L^d)^(1/d) + (M^d)^(1/d)
    Rat vol_sum, vol_l, vol_m;
    bool volumes_strict = false;
};

/// Decides (S)^(1/d) != a^(1/d) + b^(1/d) by exact comparison of d-th powers
/// against a rational bracket, on intersection numbers and on body volumes.
Injectivity injectivity_check(const DeltaMap& map);

/// Rational lo <= v^(1/d) <= hi; lo == hi when the root is rational.
std::pair<Rat, Rat> root_bracket(const Rat& v, unsigned d, const Rat& width);

struct InequalityRecord {
    std::string name;
    Rat lhs, rhs, slack;
    std::vector<std::string> inputs;
    std::uint64_t seed = 0;
    bool pass() const { return slack >= 0; }
};

InequalityRecord make_record(std::string name, const Rat& lhs, const Rat& rhs, std::vector<std::string> inputs,
                             std::uint64_t seed = 0);

struct Lemma61 {
    InequalityRecord record;
    bool corresponding = false;
    bool ok = false;
};

/// V(Delta(L), Delta(M)^(d-1)) <= (1/d!) L.M^(d-1), with equality required
/// when the flag corresponds to L or M.
Lemma61 lemma61_check(const ToricVariety& x, const RatVec& l, const RatVec& m, const AdmissibleFlag& flag,
                      std::int64_t m_max, BodyCache& cache = okounkov::default_cache());

/// vol(L) V(K^k, M^(d-k)) <= C(d,k) V(K^k, L^(d-k)) V(L^k, M^(d-k)).
InequalityRecord lehmann_xiao_check(const Polytope& k_body, const Polytope& l_body, const Polytope& m_body,
                                    unsigned k);

struct Cor15 {
    InequalityRecord direct;
    /// Same inequality on bodies for a flag, carried back to intersection
    /// numbers by the restricted mixed-volume bound.
    InequalityRecord body;
    AdmissibleFlag flag;
    bool flag_corresponds_to_m = false;
    bool lemma_steps = false;
    bool ok = false;
};

/// L^d (M.N^(d-1)) <= d (M.L^(d-1)) (L.N^(d-1)) for nef L, M, N.
Cor15 cor15_check(const ToricVariety& x, const RatVec& l, const RatVec& m, const RatVec& n, std::int64_t m_max,
                  BodyCache& cache = okounkov::default_cache());

/// A flag corresponding to the class, if a torus-invariant one exists.
std::optional<AdmissibleFlag> corresponding_flag(const ToricVariety& x, const RatVec& cls);

struct Derivative {
    bool ok = false;
    Rat linear_coefficient;
    Rat mixed;  // V(K, L^(d-1))
    std::vector<Rat> samples;
};

/// Fits t -> vol(tK + L) from t = 0..d and compares its linear coefficient
/// with d V(K, L^(d-1)).
Derivative mixed_volume_derivative_check(const Polytope& k_body, const Polytope& l_body);
Derivative mixed_volume_derivative_check(const ToricVariety& x, const RatVec& l, const RatVec& m,
                                         const AdmissibleFlag& flag, std::int64_t m_max,
                                         BodyCache& cache = okounkov::default_cache());

/// Coefficients of prod_i (lambda_i a + mu_i b); entry k multiplies a^k b^(d-k).
std::vector<Rat> expand_products(const std::vector<std::pair<Rat, Rat>>& factors);

}  // namespace oklab::inequalities
