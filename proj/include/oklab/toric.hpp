#pragma once

// Smooth projective toric varieties: fans, torus-invariant Q-divisors,
// numerical classes, positivity cones, torus-invariant flags, and the
// polytope dictionary used to build graded section data.

#include "oklab/errors.hpp"
#include "oklab/exactgeom.hpp"
#include "oklab/rational.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oklab::toric {

using exactgeom::Polytope;

struct Fan {
    std::string name;
    std::size_t dim = 0;
    std::vector<IntVec> rays;
    /// Each maximal cone lists d ray indices.
    std::vector<std::vector<std::size_t>> max_cones;
};

/// Q-divisor sum a_rho D_rho, one coefficient per ray.
struct TDivisor {
    RatVec coeffs;
    friend bool operator==(const TDivisor&, const TDivisor&) = default;
};

/// A codimension-one cone shared by two maximal cones, with the
/// intersection numbers D_rho . C of its invariant curve C.
struct Wall {
    std::vector<std::size_t> rays;
    std::size_t p = 0, q = 0;
    RatVec curve;
};

/// N^1(X) in coordinates: a class is the vector of coefficients, on the rays
/// outside the reference cone, of the representative vanishing on the
/// reference cone (the first maximal cone).
struct NumClassSpace {
    std::size_t dim_pic = 0;
    std::size_t reference_cone = 0;
    std::vector<std::size_t> class_rays;
    /// Wall curves as functionals on class coordinates (deduplicated, primitive).
    std::vector<RatVec> nef_inequalities;
    std::vector<RatVec> nef_generators;
    /// Classes of the ray divisors.
    std::vector<RatVec> eff_generators;
    std::vector<RatVec> eff_inequalities;
};

enum class ConePosition { interior, boundary, outside };
std::string to_string(ConePosition p);

/// Ordered rays (v_1, ..., v_d) of a maximal cone; Y_i is the intersection
/// of the divisors of v_1, ..., v_i.
struct AdmissibleFlag {
    std::vector<std::size_t> rays;
    std::optional<std::vector<Rat>> ratios;
};

/// "cone:i,j,..." or "i,j,...".
AdmissibleFlag parse_flag(const std::string& text);
std::string to_string(const AdmissibleFlag& flag);

class ToricVariety {
public:
    /// Validates primitivity, smoothness and completeness, then derives walls
    /// and cone data. Throws ToricError.
    explicit ToricVariety(Fan fan);

    const Fan& fan() const { return fan_; }
    const std::string& name() const { return fan_.name; }
    std::size_t dim() const { return fan_.dim; }
    std::size_t ray_count() const { return fan_.rays.size(); }
    std::size_t picard_rank() const { return classes_.dim_pic; }
    const std::vector<Wall>& walls() const { return walls_; }
    const NumClassSpace& classes() const { return classes_; }

    /// The flag along the first maximal cone in listed order.
    AdmissibleFlag default_flag() const;
    /// Throws ToricError unless the rays form a maximal cone.
    void validate(const AdmissibleFlag& flag) const;
    void validate(const TDivisor& d) const;

    RatVec class_of(const TDivisor& d) const;
    /// The representative vanishing on the reference cone.
    TDivisor divisor_of_class(const RatVec& cls) const;
    TDivisor ray_divisor(std::size_t ray) const;

    bool is_nef(const RatVec& cls) const;
    bool is_ample(const RatVec& cls) const;
    bool is_big(const RatVec& cls) const;
    bool is_pseudoeffective(const RatVec& cls) const;

    /// D . C for the invariant curve of a wall.
    Rat curve_degree(const Wall& w, const TDivisor& d) const;

private:
    void check_fan();
    void derive_walls();
    void derive_classes();

    Fan fan_;
    std::vector<Wall> walls_;
    NumClassSpace classes_;
    RatMatrix ref_dual_;  // rows: dual basis of the reference cone
};

/// P_D = {u : <u, v_rho> >= -a_rho}. Empty when D is not effective up to
/// linear equivalence.
Polytope polytope_of_divisor(const ToricVariety& x, const TDivisor& d);

/// Lattice points of m * P_D.
std::vector<IntVec> section_lattice(const ToricVariety& x, const TDivisor& d, std::int64_t m);

/// The adapted affine map u -> (<u, v_i> + a_{v_i})_i in flag order.
RatVec flag_valuation(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& d, const IntVec& u);
/// The same map applied to an arbitrary rational point (no membership test).
RatVec flag_map(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& d, const RatVec& u);

/// d! V(P_{D_1}, ..., P_{D_d}); every input must be nef.
Rat intersection_number(const ToricVariety& x, const std::vector<TDivisor>& divisors);
/// L^k . M^(d-k) for nef L, M.
Rat intersection_number(const ToricVariety& x, const TDivisor& l, unsigned k, const TDivisor& m);

struct Correspondence {
    bool holds = false;
    /// r_0, ..., r_{d-2} when holds.
    std::vector<Rat> ratios;
};

/// Whether r_i O_{Y_i}(Y_{i+1}) is numerically L|_{Y_i} for i = 0..d-2,
/// tested on the invariant curves of each Y_i.
Correspondence flag_corresponds(const ToricVariety& x, const AdmissibleFlag& flag, const TDivisor& l);

/// sup{s > 0 : M - s E big}; M must be big, E a nonzero effective class.
Rat mu(const ToricVariety& x, const RatVec& m_class, const RatVec& e_class);

ConePosition boundary_membership(const ToricVariety& x, const RatVec& cls);

/// The toric model of Y_1 = D_{v_1}: its star fan in N / Z v_1, the induced
/// flag (v_2, ..., v_d) and the ray correspondence.
struct StarModel {
    ToricVariety variety;
    AdmissibleFlag flag;
    /// Ray index in X of each ray of the star fan.
    std::vector<std::size_t> parent_rays;
};

StarModel star_of_first(const ToricVariety& x, const AdmissibleFlag& flag);
/// D|_{Y_1}, after moving D by a principal divisor so that a_{v_1} = 0.
TDivisor restrict_to_first(const ToricVariety& x, const AdmissibleFlag& flag, const StarModel& star,
                           const TDivisor& d);

/// Curves: a divisor is its degree; the body of a big divisor is [0, deg].
struct CurveModel {
    static Polytope body(const Rat& degree);
};

// Catalog -------------------------------------------------------------------

std::vector<std::string> builtin_testbed_names();
const ToricVariety& builtin_testbed(const std::string& name);

/// {"name", "rays", "max_cones"}.
Fan fan_from_json_text(const std::string& text);
/// Every *.json file in dir, keyed by name.
std::map<std::string, Fan> load_catalog(const std::filesystem::path& dir);

/// Built-in testbeds plus the optional catalog directory.
class Catalog {
public:
    explicit Catalog(std::optional<std::filesystem::path> dir = std::nullopt);
    std::vector<std::string> names() const;
    const ToricVariety& get(const std::string& name) const;

private:
    std::map<std::string, ToricVariety> extra_;
};

}  // namespace oklab::toric
