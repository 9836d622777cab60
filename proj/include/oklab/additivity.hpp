#pragma once

// Additivity of Newton-Okounkov bodies on cones C_L(M), the slice-by-slice
// replay of its proof, the strict-inclusion search, and the necessary
// condition on mu.

#include "oklab/okounkov.hpp"

#include <optional>
#include <string>
#include <vector>

namespace oklab::additivity {

using exactgeom::Halfspace;
using exactgeom::Polytope;
using okounkov::BodyCache;
using toric::AdmissibleFlag;
using toric::ToricVariety;

/// {lambda L + mu M : mu >= 0} intersected with the ample cone.
struct ConeCLM {
    RatVec l;
    RatVec m;
};

struct Membership {
    bool member = false;
    Rat lambda;
    Rat mu;
};

/// Solves N = lambda L + mu M. When L and M are dependent, lambda = 0.
/// Throws PreconditionError when N is outside span{L, M}.
Membership in_cone(const ToricVariety& x, const RatVec& n, const ConeCLM& cone);

enum class Status { equal, strict };
std::string to_string(Status s);

struct AdditivityVerdict {
    Status status = Status::equal;
    /// Vertex of Delta(N1 + N2) outside the Minkowski sum, and the violated
    /// inequality of the sum.
    std::optional<RatVec> witness;
    std::optional<Halfspace> violated;
    Rat vol1, vol2, vol_sum;
    Polytope minkowski;
    Polytope combined;
};

/// Delta(N1 + N2) against Delta(N1) + Delta(N2). Throws InclusionViolation if
/// the sum is not contained in Delta(N1 + N2).
AdditivityVerdict check_additivity(const ToricVariety& x, const RatVec& n1, const RatVec& n2,
                                   const AdmissibleFlag& flag, std::int64_t m_max,
                                   BodyCache& cache = okounkov::default_cache());

struct ReplayStep {
    std::string name;
    Polytope body;
    bool holds = false;
};

struct Replay {
    bool ok = false;
    bool late = false;  // t >= t0
    Rat r, t0, t;
    Rat lambda1, mu1, lambda2, mu2;
    bool swapped = false;
    std::vector<ReplayStep> trace;
};

/// Recomputes every intermediate body of the slice computation at nu_1 = t.
/// Throws PreconditionError when the data is outside the proof's hypotheses
/// or a restricted body would be needed for a non-ample class.
Replay slice_decomposition_replay(const ToricVariety& x, const AdmissibleFlag& flag, const ConeCLM& cone,
                                  const RatVec& n1, const RatVec& n2, const Rat& t, std::int64_t m_max,
                                  BodyCache& cache = okounkov::default_cache());

struct NecessaryCondition {
    bool ok = false;
    bool vacuous = false;
    Rat mu_l, mu_m, mu_sum;
    RatVec l0, m0;
    std::size_t grid_points = 0;
    std::optional<RatVec> off_boundary;
};

/// For an additive pair: mu(L + M) = mu(L) + mu(M) and the segment
/// [L - mu_L Y_1, M - mu_M Y_1] lies in the boundary of the effective cone.
NecessaryCondition necessary_condition_check(const ToricVariety& x, const RatVec& l, const RatVec& m,
                                             const AdmissibleFlag& flag, Status verdict, std::int64_t grid_den);

// Sweeps ---------------------------------------------------------------------

/// A flag, the class it corresponds to, and a companion class.
struct SweepSetup {
    AdmissibleFlag flag;
    RatVec l;
    RatVec m;
    Rat r;
};

/// One setup per maximal cone (listed order) whose flag corresponds to
/// L = [D_{v_1}]; the companion is the sum of the nef generators.
std::vector<SweepSetup> sweep_setups(const ToricVariety& x, std::size_t max_flags = 0);

/// Distinct ample classes lambda L + mu M with lambda in -grid, 0, grid and
/// mu in grid.
std::vector<RatVec> cone_grid(const ToricVariety& x, const SweepSetup& s, const std::vector<Rat>& grid);

std::vector<Rat> default_coefficient_grid();

struct StrictSearch {
    bool found = false;
    std::size_t pairs_checked = 0;
    std::size_t pairs_in_theorem_cones = 0;
    std::size_t classes = 0;
    std::int64_t max_coeff = 0;
    RatVec n1, n2;
    AdditivityVerdict verdict;
};

/// Sweeps pairs of ample classes sum c_i g_i (g_i nef generators,
/// 0 <= c_i <= max_coeff) in order and stops at the first strict pair.
StrictSearch search_strict(const ToricVariety& x, const AdmissibleFlag& flag, std::int64_t max_coeff,
                           std::int64_t m_max, BodyCache& cache = okounkov::default_cache());

/// Whether N1, N2 lie in a common C_{O(Y_1)}(M) for some M.
bool in_some_theorem_cone(const ToricVariety& x, const AdmissibleFlag& flag, const RatVec& n1, const RatVec& n2);

}  // namespace oklab::additivity
