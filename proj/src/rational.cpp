#include "oklab/rational.hpp"

#include <limits>
#include <stdexcept>

namespace oklab {

namespace {

BigInt parse_int(std::string_view text, std::string_view whole) {
    if (text.empty()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    std::size_t i = 0;
    if (text[0] == '-' || text[0] == '+') i = 1;
    if (i == text.size()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    for (std::size_t k = i; k < text.size(); ++k) {
        if (text[k] < '0' || text[k] > '9')
            throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    std::string digits(text[0] == '+' ? text.substr(1) : text);
    return BigInt(digits);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

Rat parse_rat(std::string_view text) {
    text = trim(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rat(parse_int(text, text));
    BigInt p = parse_int(text.substr(0, slash), text);
    BigInt q = parse_int(text.substr(slash + 1), text);
    if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rat(p, q);
}

RatVec parse_ratvec(std::string_view text, char sep) {
    RatVec out;
    text = trim(text);
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        out.push_back(parse_rat(text.substr(start, pos == std::string_view::npos ? text.npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_string(const RatVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += to_string(v[i]);
    }
    return s + ")";
}

RatVec to_ratvec(const IntVec& v) {
    RatVec out;
    out.reserve(v.size());
    for (auto x : v) out.emplace_back(x);
    return out;
}

Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const IntVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
    return s;
}

RatVec operator+(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector sum: length mismatch");
    RatVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

RatVec operator-(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector difference: length mismatch");
    RatVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

RatVec operator*(const Rat& c, const RatVec& v) {
    RatVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
    return out;
}

bool is_zero(const RatVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

BigInt common_denominator(const RatVec& v) {
    BigInt l = 1;
    for (const auto& x : v) l = boost::multiprecision::lcm(l, denominator(x));
    return l;
}

RatVec primitive_direction(const RatVec& v) {
    BigInt l = common_denominator(v);
    BigInt g = 0;
    for (const auto& x : v) g = boost::multiprecision::gcd(g, BigInt(abs(numerator(x) * (l / denominator(x)))));
    if (g == 0) throw std::invalid_argument("primitive_direction: zero vector");
    RatVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(numerator(v[i]) * (l / denominator(v[i])) / g);
    return out;
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

bool fits_int64(const BigInt& z) {
    return z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace oklab
