#include "germkit/rational.hpp"

#include <cmath>

namespace germkit {

std::string to_string(const Rational &r) { return r.get_str(); }

std::optional<Rational> exact_root(const Rational &r, unsigned long k) {
    if (r < 0) return std::nullopt;
    if (k == 1) return r;
    Integer num, den;
    Integer n = r.get_num(), d = r.get_den();
    if (mpz_root(num.get_mpz_t(), n.get_mpz_t(), k) == 0) return std::nullopt;
    if (mpz_root(den.get_mpz_t(), d.get_mpz_t(), k) == 0) return std::nullopt;
    Rational out(num, den);
    out.canonicalize();
    return out;
}

Rational rational_approximation(double v, long max_den) {
    // continued fraction convergents
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double x = v;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(x);
        if (std::abs(a) > 1e15) break;
        long ai = static_cast<long>(a);
        long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        double frac = x - a;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    if (k1 == 0) return make_rational(static_cast<long>(std::round(v)));
    return make_rational(h1, k1);
}

Integer lcm(const Integer &a, const Integer &b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

} // namespace germkit
