#pragma once

#include "germkit/expr.hpp"
#include "germkit/rational_matrix.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace germkit {

/// Left-right orbit of the 2-jet of a corank-1 germ R^2 -> R^4.
enum class JetOrbit {
    Crosscap,   // (x, y^2, xy, 0)
    Parabolic,  // (x, y^2, 0, 0)
    Shear,      // (x, xy, 0, 0)
    Degenerate, // (x, 0, 0, 0)
    NotCorank1,
};

std::string_view to_string(JetOrbit orbit);

/// 2 - rank of the differential at the origin.
int corank(const MapGerm &m);
RationalMatrix linear_part(const MapGerm &m);

JetOrbit classify_2jet(const MapGerm &m);

// Coordinate changes recorded by prenormalize. Each acts on the current map.

/// F(x, y) <- F(a x + b y, c x + d y), matrix {a, b, c, d}.
struct SourceLinear {
    RationalMatrix matrix;
};
/// F <- T F.
struct TargetLinear {
    RationalMatrix matrix;
    std::string reason;
};
/// F(x, y) <- F(x_of(x, y), y).
struct SourceSubstitution {
    Poly2 x_of;
};
/// F_i <- F_i - g_i(F_1) for i = 2..4 (g_1 is unused). Each g_i has no linear term.
struct TargetShift {
    std::array<Poly1, 4> g;
};

using CoordinateChange = std::variant<SourceLinear, TargetLinear, SourceSubstitution, TargetShift>;

std::string describe(const CoordinateChange &change);

std::array<Poly2, 4> apply_change(const CoordinateChange &change, const std::array<Poly2, 4> &f, int degree);
std::array<Poly2, 4> replay(const MapGerm &m, const std::vector<CoordinateChange> &changes, int degree);

/// Corank-1 germ in the shape (x, F2, F3, F4) with F_i(x, 0) = 0 and
/// ord_y F2(0,y) < ord_y F3(0,y) <= ord_y F4(0,y), modulo terms of degree > degree.
struct PrenormalForm {
    std::array<Poly2, 4> series;
    int degree = 0;
    std::vector<CoordinateChange> changes;
    /// (p, q, r): y-orders of slots 2, 3, 4 on the y-axis.
    std::array<AxisOrder, 3> orders;
    JetOrbit orbit = JetOrbit::NotCorank1;
    /// Slot index (1..3) carrying the xy term in the SHEAR orbit.
    std::optional<std::size_t> shear_slot;
    std::vector<std::string> notices;

    int p() const { return orders[0].value; }
    /// Coefficient of y^order in the given slot restricted to x = 0.
    Rational leading_y_coeff(std::size_t slot) const;
    /// Composite linear part of all target changes (original -> normal coordinates).
    RationalMatrix target_linear() const;
};

inline constexpr int kDefaultDegree = 12;

/// Throws PreconditionError unless corank is 1, DegenerateError when F(0,y)
/// vanishes through `degree`, TruncationError when p cannot be certified < degree.
PrenormalForm prenormalize(const MapGerm &m, int degree = kDefaultDegree);

} // namespace germkit
