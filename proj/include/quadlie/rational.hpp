#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace quadlie {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Serialization convention used everywhere (JSON fixtures, CLI output):
// "p" when the denominator is 1, otherwise "p/q" with the sign on the
// numerator and gcd(p,q)=1.  boost keeps cpp_rational canonical, so
// formatting is direct.
inline std::string format_rational(const Rat& r) {
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat parse_rational(const std::string& s) {
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

// Exact integer square root test; used for square-class decisions.
inline bool is_perfect_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = sqrt(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

// gamma and delta lie in the same square class of Q* iff their ratio is
// a square, iff num*den of the reduced ratio is a perfect square.
inline bool same_square_class(const Rat& gamma, const Rat& delta) {
    if (gamma == 0 || delta == 0)
        throw std::domain_error("square class undefined for 0");
    Rat q = delta / gamma;
    return q > 0 && is_perfect_square(numerator(q) * denominator(q));
}

// Rational square root when it exists (numerator and denominator both
// perfect squares); returns false otherwise.
inline bool rational_sqrt(const Rat& r, Rat& out) {
    if (r < 0) return false;
    Int rn, rd;
    if (!is_perfect_square(numerator(r), &rn)) return false;
    if (!is_perfect_square(denominator(r), &rd)) return false;
    out = Rat(rn, rd);
    return true;
}

} // namespace quadlie
