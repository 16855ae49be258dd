#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace belldepth {

/// Exact rational scalar. Always kept in lowest terms with positive denominator.
using Rational = mpq_class;

/// Dense point / coefficient vector over Rational.
using RatVec = std::vector<Rational>;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "-p" or "p/q". Throws on malformed input or zero denominator.
inline Rational rat_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

/// Formats as "p" or "p/q".
inline std::string rat_str(const Rational& q) { return q.get_str(); }

inline double rat_double(const Rational& q) { return q.get_d(); }

/// Scales a vector by the unique positive factor making all entries coprime
/// integers. The zero vector stays zero.
inline RatVec primitive(const RatVec& v) {
    mpz_class den_lcm = 1;
    for (const auto& q : v) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
    mpz_class num_gcd = 0;
    std::vector<mpz_class> nums(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        nums[i] = v[i].get_num() * (den_lcm / v[i].get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), nums[i].get_mpz_t());
    }
    RatVec out(v.size(), Rational(0));
    if (num_gcd == 0) return out;
    for (size_t i = 0; i < v.size(); ++i) {
        out[i] = Rational(nums[i] / num_gcd);
    }
    return out;
}

inline int compare(const Rational& a, const Rational& b) { return cmp(a, b); }

inline bool lex_less(const RatVec& a, const RatVec& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

inline bool lex_eq(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

struct RatVecLess {
    bool operator()(const RatVec& a, const RatVec& b) const { return lex_less(a, b); }
};

inline Rational dot(const RatVec& a, const RatVec& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace belldepth
