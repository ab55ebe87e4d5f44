#pragma once

#include <gmpxx.h>

#include <string>

namespace planwidth {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// "p/q" or "p" when integral.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Parses "p", "p/q", with optional sign. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

/// 2^k as an exact rational.
inline Rational pow2(unsigned k) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, k);
    return Rational(p);
}

inline int sign(const Rational& r) { return sgn(r); }

}  // namespace planwidth
