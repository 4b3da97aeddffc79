#pragma once

#include "germkit/polynomial.hpp"

#include <optional>
#include <vector>

namespace germkit {

/// A real root; `exact` is set when the root is rational and verified by exact evaluation.
struct RealRoot {
    double value = 0;
    std::optional<Rational> exact;
    int multiplicity = 1;
};

struct RootCount {
    std::vector<RealRoot> real; // ascending
    int nonreal = 0;            // with multiplicity
};

/// Real roots of a nonzero univariate polynomial over Q, multiplicities from the
/// exact squarefree decomposition.
RootCount real_roots(const Poly1 &p);

/// Real roots of a float polynomial (coefficients low to high). Roots whose imaginary
/// part is below imag_tol * (1 + |root|) count as real.
std::vector<double> real_roots_numeric(const std::vector<double> &coeffs, double imag_tol = 1e-7);

} // namespace germkit
