#pragma once

#include "germkit/polynomial.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace germkit {

/// A series coefficient: exact rational when known exactly, otherwise a double.
class Coeff {
  public:
    Coeff() : exact_(Rational(0)) {}
    Coeff(const Rational &r) : exact_(r), value_(r.get_d()) {}
    Coeff(long v) : Coeff(Rational(v)) {}
    static Coeff approx(double v) {
        Coeff c;
        c.exact_.reset();
        c.value_ = v;
        return c;
    }

    bool is_exact() const noexcept { return exact_.has_value(); }
    const Rational &rational() const { return *exact_; }
    double value() const noexcept { return value_; }
    /// Exact zero, or a float that is exactly 0.0.
    bool is_zero() const { return exact_ ? *exact_ == 0 : value_ == 0; }

    Coeff operator-() const { return exact_ ? Coeff(-*exact_) : approx(-value_); }
    friend Coeff operator+(const Coeff &a, const Coeff &b) {
        return a.exact_ && b.exact_ ? Coeff(*a.exact_ + *b.exact_) : approx(a.value_ + b.value_);
    }
    friend Coeff operator-(const Coeff &a, const Coeff &b) { return a + (-b); }
    friend Coeff operator*(const Coeff &a, const Coeff &b) {
        return a.exact_ && b.exact_ ? Coeff(*a.exact_ * *b.exact_) : approx(a.value_ * b.value_);
    }
    friend Coeff operator/(const Coeff &a, const Coeff &b) {
        return a.exact_ && b.exact_ ? Coeff(*a.exact_ / *b.exact_) : approx(a.value_ / b.value_);
    }
    Coeff &operator+=(const Coeff &o) { return *this = *this + o; }
    Coeff &operator-=(const Coeff &o) { return *this = *this - o; }
    Coeff &operator*=(const Coeff &o) { return *this = *this * o; }

    std::string to_string() const;

  private:
    std::optional<Rational> exact_;
    double value_ = 0;
};

/// Exact k-th root of a positive coefficient when it exists, else a float root.
Coeff coeff_root(const Coeff &c, unsigned k);

struct PuiseuxTerm {
    Rational exponent;
    Coeff coeff;
};

/// sum c_e t^e + O(t^order). Exponents strictly ascending and below `order`; no zero coefficients.
/// An absent order means the sum is exact.
class PuiseuxSeries {
  public:
    PuiseuxSeries() = default;
    explicit PuiseuxSeries(std::optional<Rational> order) : order_(std::move(order)) {}
    static PuiseuxSeries monomial(const Coeff &c, const Rational &e);
    /// Integer-exponent series from a polynomial in t, known below `order` (absent: exact).
    static PuiseuxSeries from_poly(const Poly1 &p, std::optional<Rational> order = std::nullopt);

    const std::vector<PuiseuxTerm> &terms() const noexcept { return terms_; }
    const std::optional<Rational> &order() const noexcept { return order_; }
    bool is_exact_sum() const noexcept { return !order_.has_value(); }
    /// True when every coefficient is exact.
    bool exact_coefficients() const;

    void add_term(const Rational &e, const Coeff &c);
    void set_order(std::optional<Rational> order);

    /// Leading exponent; absent when no term is known.
    std::optional<Rational> leading_exponent() const;
    /// Leading exponent if present, else the truncation order (a lower bound for the valuation).
    std::optional<Rational> valuation_bound() const;
    Coeff coeff(const Rational &e) const;
    /// Least common denominator of the exponents.
    Integer ramification() const;

    double eval(double t) const;

    PuiseuxSeries operator-() const;
    friend PuiseuxSeries operator+(const PuiseuxSeries &a, const PuiseuxSeries &b);
    friend PuiseuxSeries operator-(const PuiseuxSeries &a, const PuiseuxSeries &b) { return a + (-b); }
    friend PuiseuxSeries operator*(const PuiseuxSeries &a, const PuiseuxSeries &b);
    friend PuiseuxSeries operator*(const Coeff &c, const PuiseuxSeries &a);
    PuiseuxSeries pow(unsigned n) const;
    /// t -> -t for integer exponents.
    PuiseuxSeries reflected() const;

    std::string to_string(std::string_view var = "t") const;

  private:
    std::vector<PuiseuxTerm> terms_;
    std::optional<Rational> order_;
};

/// Substitute series for x and y in a polynomial.
PuiseuxSeries compose(const Poly2 &p, const PuiseuxSeries &x, const PuiseuxSeries &y);

/// Arc germ t >= 0 -> R^4.
struct ArcGerm {
    std::array<PuiseuxSeries, 4> coords;
    /// |gamma(t)| = t + higher order.
    bool normalized = false;

    std::array<double, 4> eval(double t) const;
    std::string to_string() const;
};

enum class Orientation {
    XOfY, // x expanded in y: y = sigma t^K
    YOfX, // y expanded in x: x = sigma t^K
};

/// A branch of p(x, y) = 0 through the origin, parametrized by t in R with integer exponents.
struct PuiseuxBranch {
    Orientation orientation = Orientation::XOfY;
    PuiseuxSeries x, y;
    int ramification = 1;
    int sigma = 1;
    int multiplicity = 1;
    bool real = true;
    /// The expansion terminated exactly (the branch is x = polynomial in t).
    bool closed = false;
    /// Some coefficients are floats (an irrational leading coefficient was met).
    bool precision_loss = false;
    /// For nonreal branches only: exponent of the first nonreal term, in the base variable.
    Rational nonreal_exponent;

    std::string to_string() const;
};

/// Branches of p = 0 at the origin, the dependent variable expanded up to exponent `order`
/// in the base variable. Real branches come first; nonreal ones carry only leading data.
std::vector<PuiseuxBranch> newton_puiseux(const Poly2 &p, int order = 12, Orientation orientation = Orientation::XOfY);

/// The two half-branches of a real branch: t >= 0 and t -> -t, as (x, y) series in t >= 0.
std::array<std::array<PuiseuxSeries, 2>, 2> half_branches(const PuiseuxBranch &b);

ArcGerm reparametrize_by_distance(const ArcGerm &a);

/// Contact order; infinite for coincident exact arcs.
struct ContactOrder {
    Rational value;
    bool infinite = false;
};

/// Leading exponent of |a(t) - b(t)| for normalized arcs. Float coefficients below
/// `zero_tol` count as zero. Throws TruncationError when the arcs agree through truncation.
ContactOrder outer_contact_order(const ArcGerm &a, const ArcGerm &b, double zero_tol = 1e-9);

} // namespace germkit
