#pragma once

// Exact scalars and vectors shared by every module.
//
// Rat is a GMP-backed rational with expression templates disabled, so it
// behaves like an ordinary value type (auto deduction is safe). It is always
// kept in lowest terms with a positive denominator.

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace oklab {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

using RatVec = std::vector<Rat>;
using RatMatrix = std::vector<RatVec>;
/// Lattice vector (rays, characters, lattice points).
using IntVec = std::vector<std::int64_t>;

inline BigInt numerator(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Parses "3", "-2", "3/4", "-7/12". Throws std::invalid_argument.
Rat parse_rat(std::string_view text);
/// Parses a separated list such as "1,0,1/2".
RatVec parse_ratvec(std::string_view text, char sep = ',');
/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rat& r);
std::string to_string(const RatVec& v);

RatVec to_ratvec(const IntVec& v);

Rat dot(const RatVec& a, const RatVec& b);
Rat dot(const IntVec& a, const RatVec& b);

RatVec operator+(const RatVec& a, const RatVec& b);
RatVec operator-(const RatVec& a, const RatVec& b);
RatVec operator*(const Rat& c, const RatVec& v);

bool is_zero(const RatVec& v);

/// Least common multiple of all denominators (1 for an empty vector).
BigInt common_denominator(const RatVec& v);

/// Scales v to the primitive integer vector on the same ray (v != 0).
RatVec primitive_direction(const RatVec& v);

BigInt binomial(unsigned n, unsigned k);
BigInt factorial(unsigned n);

/// Fits in int64 (used by the JSON encoder and lattice fast paths).
bool fits_int64(const BigInt& z);

}  // namespace oklab
