#pragma once

#include "germkit/expr.hpp"
#include "germkit/rational_matrix.hpp"

#include <random>

namespace germkit::testing {

inline Rational random_rational(std::mt19937 &rng, int span = 5, int max_den = 4) {
    std::uniform_int_distribution<int> num(-span, span), den(1, max_den);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

inline Rational random_nonzero(std::mt19937 &rng, int span = 5, int max_den = 4) {
    for (;;) {
        Rational r = random_rational(rng, span, max_den);
        if (r != 0) return r;
    }
}

inline Poly2 random_poly(std::mt19937 &rng, int max_degree, int max_terms, bool vanish_at_origin = false) {
    std::uniform_int_distribution<int> deg(0, max_degree), count(0, max_terms);
    Poly2 p;
    int n = count(rng);
    for (int k = 0; k < n; ++k) {
        int d = deg(rng);
        if (vanish_at_origin && d == 0) d = 1;
        std::uniform_int_distribution<int> split(0, d);
        int i = split(rng);
        p.add_term({i, d - i}, random_rational(rng));
    }
    return p;
}

inline RationalMatrix random_invertible(std::mt19937 &rng, std::size_t n) {
    for (;;) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = random_rational(rng, 3, 3);
        if (m.rank() == n) return m;
    }
}

/// x -> B F(A x)
inline MapGerm change_coordinates(const MapGerm &m, const RationalMatrix &a, const RationalMatrix &b) {
    Poly2 nx = Poly2::variable(0) * a(0, 0) + Poly2::variable(1) * a(0, 1);
    Poly2 ny = Poly2::variable(0) * a(1, 0) + Poly2::variable(1) * a(1, 1);
    std::array<Poly2, 4> pulled, out;
    for (std::size_t i = 0; i < 4; ++i) pulled[i] = m[i].compose<2>({nx, ny});
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) out[i] += pulled[k] * b(i, k);
    return MapGerm(out);
}

} // namespace germkit::testing
