#include "germkit/polar.hpp"
#include "germkit/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace germkit {

std::string_view to_string(HeightWidthStatus s) {
    switch (s) {
    case HeightWidthStatus::Pass: return "PASS";
    case HeightWidthStatus::Fail: return "FAIL";
    case HeightWidthStatus::NotApplicable: return "NOT_APPLICABLE";
    }
    return "?";
}

std::vector<PuiseuxBranch> polar_curve(const PrenormalForm &f) {
    if (f.p() % 2 == 0) throw PreconditionError("polar curve needs a plane tangent cone (odd p)");
    std::vector<PuiseuxBranch> out;
    for (auto &b : newton_puiseux(partial_derivative(f.series[1], Axis::Y), f.degree))
        if (b.real) out.push_back(std::move(b));
    return out;
}

std::vector<ArcGerm> discriminant_raw(const PrenormalForm &f, const std::vector<PuiseuxBranch> &sigma) {
    std::vector<ArcGerm> out;
    for (const auto &b : sigma)
        for (const auto &half : half_branches(b)) {
            ArcGerm a;
            a.coords[0] = compose(f.series[0], half[0], half[1]);
            a.coords[1] = compose(f.series[1], half[0], half[1]);
            out.push_back(std::move(a));
        }
    return out;
}

namespace {

bool same_arc(const ArcGerm &a, const ArcGerm &b) {
    try {
        return outer_contact_order(a, b).infinite;
    } catch (const TruncationError &) {
        return true;
    }
}

double leading_angle(const ArcGerm &a) {
    std::optional<Rational> e;
    for (std::size_t i = 0; i < 2; ++i)
        if (auto l = a.coords[i].leading_exponent()) e = e ? std::min(*e, *l) : *l;
    if (!e) throw TruncationError("discriminant arc has no known leading term");
    double th = std::atan2(a.coords[1].coeff(*e).value(), a.coords[0].coeff(*e).value());
    return th < 0 ? th + 2 * std::numbers::pi : th;
}

/// Sign of the leading coefficient of a x b (positive: b lies counterclockwise of a).
int cross_sign(const ArcGerm &a, const ArcGerm &b) {
    PuiseuxSeries c = a.coords[0] * b.coords[1] - a.coords[1] * b.coords[0];
    for (const auto &t : c.terms())
        if (t.coeff.is_exact() || std::abs(t.coeff.value()) > 1e-12) return t.coeff.value() > 0 ? 1 : -1;
    return 0;
}

/// Real y with slot2(v1, y) = v2 and |y| below the local scale.
std::vector<double> fiber_ys(const PrenormalForm &f, double v1, double v2) {
    std::vector<double> coeffs(static_cast<std::size_t>(std::max(f.series[1].degree_in(1), 0)) + 1, 0.0);
    for (const auto &[e, c] : f.series[1].terms()) coeffs[static_cast<std::size_t>(e[1])] += c.get_d() * std::pow(v1, e[0]);
    coeffs[0] -= v2;
    const double scale = std::hypot(v1, v2);
    const double bound = 10 * std::pow(scale, 1.0 / f.p());
    std::vector<double> ys;
    for (double y : real_roots_numeric(coeffs))
        if (std::abs(y) < bound) ys.push_back(y);
    for (std::size_t i = 1; i < ys.size(); ++i)
        if (std::abs(ys[i] - ys[i - 1]) < 1e-9 * bound) throw NumericError("ambiguous fiber count: preimages closer than the resolution");
    return ys;
}

std::array<double, 2> test_point(const PolarTriangle &t, double r) {
    if (t.midpoint_test_arc) {
        auto a = t.boundary[0].eval(r), b = t.boundary[1].eval(r);
        return {(a[0] + b[0]) / 2, (a[1] + b[1]) / 2};
    }
    return {r * std::cos(t.test_angle), r * std::sin(t.test_angle)};
}

} // namespace

std::vector<ArcGerm> discriminant(const PrenormalForm &f, const std::vector<PuiseuxBranch> &sigma) {
    std::vector<ArcGerm> out;
    for (const auto &raw : discriminant_raw(f, sigma)) {
        ArcGerm a = reparametrize_by_distance(raw);
        if (std::none_of(out.begin(), out.end(), [&](const ArcGerm &b) { return same_arc(a, b); })) out.push_back(std::move(a));
    }
    return out;
}

int fiber_count(const PrenormalForm &f, double v1, double v2) { return static_cast<int>(fiber_ys(f, v1, v2).size()); }

std::vector<PolarTriangle> build_triangles(const PrenormalForm &f, const std::vector<ArcGerm> &delta_in,
                                           std::vector<std::string> *notices) {
    std::vector<PolarTriangle> out;
    if (delta_in.empty()) return out;
    std::vector<std::size_t> idx(delta_in.size());
    std::vector<double> angle(delta_in.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        idx[i] = i;
        angle[i] = leading_angle(delta_in[i]);
    }
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (std::abs(angle[a] - angle[b]) > 1e-12) return angle[a] < angle[b];
        return cross_sign(delta_in[a], delta_in[b]) > 0;
    });
    const double radii[] = {1e-2, 1e-3, 1e-4};
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const bool wrap = k + 1 == idx.size();
        const std::size_t i = idx[k], j = idx[wrap ? 0 : k + 1];
        double span = angle[j] - angle[i] + (wrap ? 2 * std::numbers::pi : 0);
        PolarTriangle t;
        t.boundary = {delta_in[i], delta_in[j]};
        t.boundary_index = {i, j};
        if (!wrap && span < 1e-12) {
            t.midpoint_test_arc = true;
        } else {
            t.test_angle = angle[i] + span / 2;
        }
        int count = -1;
        for (double r : radii) {
            auto v = test_point(t, r);
            int c = fiber_count(f, v[0], v[1]);
            if (count >= 0 && c != count) throw NumericError("ambiguous fiber count across radii in a discriminant sector");
            count = c;
        }
        t.fiber_count = count;
        if (count <= 1) continue;
        ContactOrder w;
        try {
            w = outer_contact_order(t.boundary[0], t.boundary[1]);
        } catch (const TruncationError &) {
            w.infinite = true;
        }
        if (w.infinite) {
            if (notices) notices->push_back("dropped a degenerate polar triangle with coincident boundary arcs");
            continue;
        }
        t.width = w.value;
        out.push_back(std::move(t));
    }
    return out;
}

Rational height_lower_bound(const PrenormalForm &f, const PolarTriangle &) {
    if (f.series[1].coeff({1, 1}) == 0) throw ShapeError("height bound needs slot 2 of the form x*y + P1(x, y)");
    const long n = f.p();
    const AxisOrder q = f.orders[1];
    Rational best = 3; // arcs not tangent to the y-axis
    for (long a = 1; a <= n - 1; ++a) {
        Rational b = std::min(make_rational(2 * a + 1, a), make_rational(2 + a, a));
        if (!q.infinite) b = std::min(b, make_rational(q.value, a));
        best = std::min(best, b);
    }
    return best;
}

double height_numeric(const PrenormalForm &f, const PolarTriangle &t, std::span<const double> radii) {
    if (radii.size() < 2) throw PreconditionError("height_numeric needs at least two radii");
    std::vector<double> lx, ly;
    for (double r : radii) {
        auto v = test_point(t, r);
        auto ys = fiber_ys(f, v[0], v[1]);
        if (ys.size() < 2) throw NumericError("insufficient fiber separation: fewer than two preimages at radius " + std::to_string(r));
        double best = INFINITY;
        for (std::size_t a = 0; a < ys.size(); ++a)
            for (std::size_t b = a + 1; b < ys.size(); ++b) {
                double d2 = 0;
                for (std::size_t s = 0; s < 4; ++s) {
                    double diff = f.series[s].eval<double>({v[0], ys[a]}) - f.series[s].eval<double>({v[0], ys[b]});
                    d2 += diff * diff;
                }
                best = std::min(best, std::sqrt(d2));
            }
        if (!(best > 0)) throw NumericError("insufficient fiber separation at radius " + std::to_string(r));
        lx.push_back(std::log(r));
        ly.push_back(std::log(best));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= lx.size();
    my /= ly.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxy / sxx;
}

HeightWidthResult height_width_test(const PolarData &data) {
    if (data.triangles.empty()) return {};
    for (std::size_t i = 0; i < data.triangles.size(); ++i) {
        const auto &t = data.triangles[i];
        if (t.height_lower_bound && *t.height_lower_bound > t.width) return {HeightWidthStatus::Fail, i};
    }
    return {HeightWidthStatus::Pass, std::nullopt};
}

PolarData analyze_polar(const PrenormalForm &f, std::span<const double> height_radii) {
    PolarData d;
    d.sigma = polar_curve(f);
    d.delta = discriminant(f, d.sigma);
    d.triangles = build_triangles(f, d.delta, &d.notices);
    for (auto &t : d.triangles) {
        try {
            t.height_lower_bound = height_lower_bound(f, t);
        } catch (const ShapeError &e) {
            d.notices.push_back(std::string("height bound unavailable: ") + e.what());
        }
        try {
            t.height_numeric = height_numeric(f, t, height_radii);
        } catch (const NumericError &e) {
            d.notices.push_back(std::string("numeric height unavailable: ") + e.what());
        }
    }
    return d;
}

} // namespace germkit
