#include "germkit/germ.hpp"

#include <algorithm>
#include <numeric>

namespace germkit {

std::string_view to_string(JetOrbit orbit) {
    switch (orbit) {
    case JetOrbit::Crosscap: return "CROSSCAP";
    case JetOrbit::Parabolic: return "PARABOLIC";
    case JetOrbit::Shear: return "SHEAR";
    case JetOrbit::Degenerate: return "DEGENERATE";
    case JetOrbit::NotCorank1: return "NOT_CORANK1";
    }
    return "?";
}

RationalMatrix linear_part(const MapGerm &m) {
    RationalMatrix j(4, 2);
    for (std::size_t i = 0; i < 4; ++i) {
        j(i, 0) = m[i].coeff({1, 0});
        j(i, 1) = m[i].coeff({0, 1});
    }
    return j;
}

int corank(const MapGerm &m) { return 2 - static_cast<int>(linear_part(m).rank()); }

namespace {

std::string matrix_string(const RationalMatrix &a) {
    std::string s = "[";
    for (std::size_t r = 0; r < a.rows(); ++r) {
        if (r) s += "; ";
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (c) s += " ";
            s += to_string(a(r, c));
        }
    }
    return s + "]";
}

Poly1 axis_restriction(const Poly2 &p) {
    // p(z, 0) as a polynomial in one variable
    Poly1 g;
    for (const auto &[e, c] : p.terms())
        if (e[1] == 0) g.add_term({e[0]}, c);
    return g;
}

} // namespace

std::string describe(const CoordinateChange &change) {
    return std::visit(
        [](const auto &ch) -> std::string {
            using T = std::decay_t<decltype(ch)>;
            if constexpr (std::is_same_v<T, SourceLinear>) {
                return "source linear " + matrix_string(ch.matrix);
            } else if constexpr (std::is_same_v<T, TargetLinear>) {
                return "target linear (" + ch.reason + ") " + matrix_string(ch.matrix);
            } else if constexpr (std::is_same_v<T, SourceSubstitution>) {
                return "source x <- " + ch.x_of.to_string(kNamesXY);
            } else {
                std::string s = "target shift";
                for (std::size_t i = 1; i < 4; ++i)
                    if (!ch.g[i].is_zero()) s += " z" + std::to_string(i + 1) + " -= " + ch.g[i].to_string(std::array<std::string_view, 1>{"z1"});
                return s;
            }
        },
        change);
}

std::array<Poly2, 4> apply_change(const CoordinateChange &change, const std::array<Poly2, 4> &f, int degree) {
    std::array<Poly2, 4> out;
    std::visit(
        [&](const auto &ch) {
            using T = std::decay_t<decltype(ch)>;
            if constexpr (std::is_same_v<T, SourceLinear>) {
                const auto &a = ch.matrix;
                Poly2 nx = Poly2::variable(0) * a(0, 0) + Poly2::variable(1) * a(0, 1);
                Poly2 ny = Poly2::variable(0) * a(1, 0) + Poly2::variable(1) * a(1, 1);
                for (std::size_t i = 0; i < 4; ++i) out[i] = f[i].compose<2>({nx, ny}, degree);
            } else if constexpr (std::is_same_v<T, TargetLinear>) {
                for (std::size_t i = 0; i < 4; ++i)
                    for (std::size_t k = 0; k < 4; ++k)
                        if (ch.matrix(i, k) != 0) out[i] += f[k] * ch.matrix(i, k);
            } else if constexpr (std::is_same_v<T, SourceSubstitution>) {
                for (std::size_t i = 0; i < 4; ++i) out[i] = f[i].compose<2>({ch.x_of, Poly2::variable(1)}, degree);
            } else {
                out[0] = f[0];
                for (std::size_t i = 1; i < 4; ++i) out[i] = f[i] - ch.g[i].template compose<2>({f[0]}, degree);
            }
        },
        change);
    for (auto &c : out) c = c.truncated(degree);
    return out;
}

std::array<Poly2, 4> replay(const MapGerm &m, const std::vector<CoordinateChange> &changes, int degree) {
    std::array<Poly2, 4> f;
    for (std::size_t i = 0; i < 4; ++i) f[i] = m[i].truncated(degree);
    for (const auto &ch : changes) f = apply_change(ch, f, degree);
    return f;
}

Rational PrenormalForm::leading_y_coeff(std::size_t slot) const {
    const AxisOrder &o = orders.at(slot - 1);
    if (o.infinite) return 0;
    return series.at(slot).coeff({0, o.value});
}

RationalMatrix PrenormalForm::target_linear() const {
    RationalMatrix total = RationalMatrix::identity(4);
    for (const auto &ch : changes)
        if (const auto *t = std::get_if<TargetLinear>(&ch)) total = t->matrix * total;
    return total;
}

namespace {

/// Linear normalization, slot-1 straightening and x-axis clearing.
/// Returns the working map and appends the changes used.
std::array<Poly2, 4> normalize_low_order(const MapGerm &m, int degree, std::vector<CoordinateChange> &changes) {
    std::array<Poly2, 4> f;
    for (std::size_t i = 0; i < 4; ++i) f[i] = m[i].truncated(degree);
    auto push = [&](CoordinateChange ch) {
        f = apply_change(ch, f, degree);
        changes.push_back(std::move(ch));
    };

    RationalMatrix j = linear_part(m);
    if (j.rank() != 1) throw PreconditionError("germ is not of corank 1");

    // kernel direction k and a complementary direction v
    std::size_t row = 0;
    while (j(row, 0) == 0 && j(row, 1) == 0) ++row;
    const Rational &a = j(row, 0), &b = j(row, 1);
    Rational k0 = 0, k1 = 1, v0 = 1, v1 = 0;
    if (a == 0) {
        k0 = 1;
        k1 = 0;
        v0 = 0;
        v1 = 1;
    } else if (b != 0) {
        k0 = -b / a;
    }
    if (!(v0 == 1 && v1 == 0 && k0 == 0 && k1 == 1)) {
        RationalMatrix s(2, 2);
        s(0, 0) = v0;
        s(0, 1) = k0;
        s(1, 0) = v1;
        s(1, 1) = k1;
        push(SourceLinear{s});
    }

    // target: send the image direction w of the differential to e1
    std::array<Rational, 4> w;
    for (std::size_t i = 0; i < 4; ++i) w[i] = f[i].coeff({1, 0});
    std::size_t piv = 0;
    while (w[piv] == 0) ++piv;
    bool is_e1 = piv == 0 && w[0] == 1 && w[1] == 0 && w[2] == 0 && w[3] == 0;
    if (!is_e1) {
        RationalMatrix basis(4, 4);
        for (std::size_t i = 0; i < 4; ++i) basis(i, 0) = w[i];
        std::size_t col = 1;
        for (std::size_t i = 0; i < 4; ++i) {
            if (i == piv) continue;
            basis(i, col++) = 1;
        }
        push(TargetLinear{basis.inverse(), "image of the differential to e1"});
    }

    // slot 1 == x: solve F1(phi(x, y), y) = x by fixed-point iteration
    if (!(f[0] == Poly2::variable(0))) {
        Poly2 x = Poly2::variable(0);
        Poly2 phi = x;
        for (int it = 0; it <= degree + 1; ++it) {
            Poly2 err = f[0].compose<2>({phi, Poly2::variable(1)}, degree) - x;
            if (err.is_zero()) break;
            phi = (phi - err).truncated(degree);
        }
        push(SourceSubstitution{phi});
    }

    // clear the x-axis restrictions of slots 2..4
    TargetShift shift;
    bool any = false;
    for (std::size_t i = 1; i < 4; ++i) {
        shift.g[i] = axis_restriction(f[i]);
        any = any || !shift.g[i].is_zero();
    }
    if (any) push(shift);
    return f;
}

JetOrbit orbit_from_quadratics(const std::array<Poly2, 4> &f) {
    RationalMatrix w(3, 2);
    for (std::size_t i = 1; i < 4; ++i) {
        w(i - 1, 0) = f[i].coeff({1, 1});
        w(i - 1, 1) = f[i].coeff({0, 2});
    }
    switch (w.rank()) {
    case 2: return JetOrbit::Crosscap;
    case 1:
        for (std::size_t r = 0; r < 3; ++r)
            if (w(r, 1) != 0) return JetOrbit::Parabolic;
        return JetOrbit::Shear;
    default: return JetOrbit::Degenerate;
    }
}

} // namespace

JetOrbit classify_2jet(const MapGerm &m) {
    if (corank(m) != 1) return JetOrbit::NotCorank1;
    std::vector<CoordinateChange> changes;
    return orbit_from_quadratics(normalize_low_order(m, 2, changes));
}

PrenormalForm prenormalize(const MapGerm &m, int degree) {
    if (degree < 2) throw PreconditionError("truncation degree must be >= 2");
    PrenormalForm out;
    out.degree = degree;
    std::array<Poly2, 4> f = normalize_low_order(m, degree, out.changes);
    out.orbit = orbit_from_quadratics(f);
    auto push = [&](CoordinateChange ch) {
        f = apply_change(ch, f, degree);
        out.changes.push_back(std::move(ch));
    };

    if (out.orbit == JetOrbit::Shear) {
        std::size_t piv = 1;
        while (f[piv].coeff({1, 1}) == 0) ++piv;
        Rational c = f[piv].coeff({1, 1});
        RationalMatrix t = RationalMatrix::identity(4);
        t(piv, piv) = Rational(1) / c;
        for (std::size_t i = 1; i < 4; ++i) {
            if (i == piv) continue;
            t(i, piv) = -f[i].coeff({1, 1}) / c;
        }
        if (!(t == RationalMatrix::identity(4))) push(TargetLinear{t, "isolate the xy slot"});
        out.shear_slot = piv;
    }

    auto orders_of = [&] {
        std::array<AxisOrder, 3> o;
        for (std::size_t i = 1; i < 4; ++i) o[i - 1] = order_along_axis(f[i], Axis::Y);
        return o;
    };

    // Separate ties in the minimal y-order by exact elimination of leading terms.
    for (int round = 0; round < 4 * degree; ++round) {
        auto o = orders_of();
        AxisOrder lowest = *std::min_element(o.begin(), o.end());
        if (lowest.infinite) break;
        std::vector<std::size_t> tied;
        for (std::size_t i = 1; i < 4; ++i)
            if (o[i - 1] == lowest) tied.push_back(i);
        if (tied.size() < 2) break;
        std::size_t pivot = tied.front();
        for (std::size_t s : tied)
            if (!out.shear_slot || s != *out.shear_slot) {
                pivot = s;
                break;
            }
        Rational lead = f[pivot].coeff({0, lowest.value});
        RationalMatrix t = RationalMatrix::identity(4);
        for (std::size_t s : tied)
            if (s != pivot) t(s, pivot) = -f[s].coeff({0, lowest.value}) / lead;
        push(TargetLinear{t, "separate tied y-orders"});
        out.notices.push_back("tied y-order " + std::to_string(lowest.value) + " separated by eliminating leading terms");
    }

    // sort slots 2..4 by order; ties keep the original slot order
    auto o = orders_of();
    std::array<std::size_t, 3> perm{1, 2, 3};
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return o[a - 1] < o[b - 1]; });
    if (perm != std::array<std::size_t, 3>{1, 2, 3}) {
        RationalMatrix t(4, 4);
        t(0, 0) = 1;
        for (std::size_t k = 0; k < 3; ++k) t(k + 1, perm[k]) = 1;
        push(TargetLinear{t, "sort slots by y-order"});
        if (out.shear_slot) {
            for (std::size_t k = 0; k < 3; ++k)
                if (perm[k] == *out.shear_slot) {
                    out.shear_slot = k + 1;
                    break;
                }
        }
    }

    out.series = f;
    out.orders = orders_of();
    if (out.orders[0].infinite)
        throw DegenerateError("F(0, y) vanishes through degree " + std::to_string(degree));
    if (out.orders[0].value >= degree)
        throw TruncationError("ord_y F(0, y) = " + std::to_string(out.orders[0].value) +
                              " cannot be certified below truncation degree " + std::to_string(degree));
    return out;
}

} // namespace germkit
