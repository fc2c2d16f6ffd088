#ifndef QFIB_RATIONAL_HPP
#define QFIB_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <optional>
#include <string>

#include "qfib/errors.hpp"

namespace qfib {

/// Exact rational scalar. GMP-backed, always canonical (lowest terms,
/// positive denominator).
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Canonical "p/q" string (q > 0, lowest terms).
inline std::string rational_to_string(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

/// Parses "p/q" or a bare integer "p". Whitespace is not accepted.
inline Rational rational_from_string(const std::string& s) {
    if (s.empty()) raise(errc::parse_error, "empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) raise(errc::parse_error, "zero denominator in '" + s + "'");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw;
    } catch (const std::exception&) {
        raise(errc::parse_error, "bad rational literal '" + s + "'");
    }
}

/// Value in [0,1) congruent to q mod 1.
inline Rational mod_one(const Rational& q) {
    Integer n = numerator(q), d = denominator(q);
    Integer r = n % d;
    if (r < 0) r += d;
    return Rational(r, d);
}

/// Exact k-th root of a nonnegative rational, if one exists.
inline std::optional<Rational> rational_kth_root(const Rational& q, unsigned k) {
    if (q < 0) return std::nullopt;
    if (q == 0) return Rational(0);
    Integer n = numerator(q), d = denominator(q);
    Integer rn, rd;
    if (!mpz_root(rn.backend().data(), n.backend().data(), k)) return std::nullopt;
    if (!mpz_root(rd.backend().data(), d.backend().data(), k)) return std::nullopt;
    return Rational(rn, rd);
}

inline long gcd_long(long a, long b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline long lcm_long(long a, long b) { return a / gcd_long(a, b) * b; }

}  // namespace qfib

#endif
