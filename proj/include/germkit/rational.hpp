#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace germkit {

/// Exact rational number, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline double to_double(const Rational &r) { return r.get_d(); }

std::string to_string(const Rational &r);

/// Exact k-th root of a nonnegative rational when it exists.
std::optional<Rational> exact_root(const Rational &r, unsigned long k);

/// Best rational approximation with denominator at most `max_den`.
Rational rational_approximation(double v, long max_den);

Integer lcm(const Integer &a, const Integer &b);

} // namespace germkit
