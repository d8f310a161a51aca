#pragma once

#include <gmpxx.h>

#include <string>

#include "mcl/errors.hpp"

namespace mcl {

// Exact arithmetic scalars. mpq_class keeps values in lowest terms with a
// positive denominator, which is exactly the Rational invariant we need.
using BigInt = mpz_class;
using Rational = mpq_class;

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline std::string to_string(const BigInt& z) { return z.get_str(); }

// Canonical "num/den" form, denominator always present.
inline std::string rational_to_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    Rational r;
    if (slash == std::string::npos) {
        r = Rational(s);
    } else {
        r = Rational(s.substr(0, slash)) / Rational(s.substr(slash + 1));
    }
    r.canonicalize();
    return r;
}

inline Rational pow_rational(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0) {
        if (e < 0) throw DivisionByZero();
        return Rational(0);
    }
    const Rational b = e > 0 ? base : Rational(1) / base;
    const auto n = static_cast<unsigned long>(e > 0 ? e : -e);
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), b.get_num_mpz_t(), n);
    mpz_pow_ui(out.get_den_mpz_t(), b.get_den_mpz_t(), n);
    return out; // b is canonical, so its powers are too
}

} // namespace mcl
