#pragma once

#include "germkit/polynomial.hpp"

#include <array>
#include <limits>
#include <string>
#include <string_view>

namespace germkit {

enum class Axis { X, Y };

/// Order of vanishing along a coordinate axis; `infinite` when the restriction is zero.
struct AxisOrder {
    int value = 0;
    bool infinite = true;

    static AxisOrder finite(int v) { return {v, false}; }
    static AxisOrder infinity() { return {0, true}; }

    bool operator==(const AxisOrder &o) const { return infinite == o.infinite && (infinite || value == o.value); }
    /// Finite orders sort before infinite ones.
    bool operator<(const AxisOrder &o) const {
        if (infinite) return false;
        if (o.infinite) return true;
        return value < o.value;
    }
    bool operator<=(const AxisOrder &o) const { return *this < o || *this == o; }
    std::string to_string() const { return infinite ? "inf" : std::to_string(value); }
};

AxisOrder order_along_axis(const Poly2 &p, Axis axis);

/// The input germ F: four polynomials in (x, y), each vanishing at the origin.
class MapGerm {
  public:
    MapGerm() = default;
    /// Throws ShapeError when a component has a nonzero constant term.
    explicit MapGerm(std::array<Poly2, 4> components);

    const std::array<Poly2, 4> &components() const noexcept { return components_; }
    const Poly2 &operator[](std::size_t i) const { return components_.at(i); }

    int degree() const;
    std::array<double, 4> eval(double x, double y) const;
    /// 4x2 Jacobian evaluated in double precision, row-major.
    std::array<double, 8> jacobian(double x, double y) const;

    /// `c1, c2, c3, c4` in canonical form.
    std::string to_string() const;

    bool operator==(const MapGerm &o) const { return components_ == o.components_; }

  private:
    std::array<Poly2, 4> components_;
};

Poly2 parse_poly(std::string_view text);
MapGerm parse_map(std::string_view text);

/// Germ file: `map: <c1>, <c2>, <c3>, <c4>` plus optional `# comment` lines.
MapGerm parse_germ_file_text(std::string_view text);
MapGerm read_germ_file(const std::string &path);
std::string format_germ_file(const MapGerm &m, std::string_view comment = {});

Poly2 partial_derivative(const Poly2 &p, Axis axis);

/// Univariate series in t known exactly for exponents <= order.
class TruncatedSeries {
  public:
    TruncatedSeries() = default;
    TruncatedSeries(Poly1 poly, int order, bool may_be_incomplete = true);

    const Poly1 &poly() const noexcept { return poly_; }
    int order() const noexcept { return order_; }
    bool may_be_incomplete() const noexcept { return incomplete_; }

    /// Lowest exponent with nonzero coefficient. Throws TruncationError when the
    /// series vanishes through `order` and may continue beyond it.
    int valuation() const;
    Rational coeff(int k) const;

    static TruncatedSeries variable(int order) { return {Poly1::variable(0), order, false}; }

  private:
    Poly1 poly_;
    int order_ = 0;
    bool incomplete_ = true;
};

/// p(sx(t), sy(t)) modulo t^(n+1). Inputs must vanish at t = 0.
TruncatedSeries compose_truncated(const Poly2 &p, const TruncatedSeries &sx, const TruncatedSeries &sy, int n);

} // namespace germkit
