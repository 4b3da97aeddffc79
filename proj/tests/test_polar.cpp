#include "germkit/polar.hpp"
#include "germkit/roots.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace germkit;

namespace {

PrenormalForm shear(int n) {
    return prenormalize(parse_map("x, x*y + y^" + std::to_string(n) + ", y^" + std::to_string(n + 2) + ", 0"));
}

/// Distance from v to the nearest point of the arc, by dense sampling plus golden-section refinement.
double distance_to_arc(const ArcGerm &a, double v0, double v1, double r_guess) {
    auto dist = [&](double r) {
        auto z = a.eval(r);
        return std::hypot(z[0] - v0, z[1] - v1);
    };
    double best_r = r_guess, best = dist(r_guess);
    for (int k = 0; k <= 400; ++k) {
        double r = r_guess * (0.5 + k / 400.0);
        if (double d = dist(r); d < best) {
            best = d;
            best_r = r;
        }
    }
    double lo = best_r * 0.99, hi = best_r * 1.01;
    for (int it = 0; it < 100; ++it) {
        double m1 = lo + (hi - lo) * 0.382, m2 = lo + (hi - lo) * 0.618;
        (dist(m1) < dist(m2) ? hi : lo) = dist(m1) < dist(m2) ? m2 : m1;
    }
    return std::min(best, dist(0.5 * (lo + hi)));
}

} // namespace

TEST_SUITE("polar") {

TEST_CASE("polar curve of G5") {
    PrenormalForm f = prenormalize(parse_map("x, x*y + y^3, y^5, 0"));
    auto sigma = polar_curve(f);
    REQUIRE(sigma.size() == 1);
    CHECK(sigma[0].x.to_string() == "-3*t^2");
    CHECK(sigma[0].y.to_string() == "t");
}

TEST_CASE("polar curve of (x, xy, y^3, 0) is the doubled x-axis") {
    PrenormalForm f = prenormalize(parse_map("x, x*y, y^3, 0"));
    CHECK(f.series[1] == parse_poly("y^3"));
    auto sigma = polar_curve(f);
    REQUIRE(sigma.size() == 1);
    CHECK(sigma[0].orientation == Orientation::YOfX);
    CHECK(sigma[0].multiplicity == 2);
    auto delta = discriminant(f, sigma);
    REQUIRE(delta.size() == 2);
    CHECK(delta[0].coords[0].to_string() == "t");
    CHECK(delta[1].coords[0].to_string() == "-t");
    CHECK(delta[0].coords[1].to_string() == "0");
    CHECK(build_triangles(f, delta).empty());
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(prenormalize(parse_map("x, y, 0, 0")), PreconditionError);
    CHECK_THROWS_AS(polar_curve(prenormalize(parse_map("x, y^2, x*y, 0"))), PreconditionError);
    CHECK(discriminant(prenormalize(parse_map("x, x*y, y^3, 0")), {}).empty());
}

TEST_CASE("G5 discriminant is the cusp (-3t^2, -2t^3)") {
    PrenormalForm f = prenormalize(parse_map("x, x*y + y^3, y^5, 0"));
    auto raw = discriminant_raw(f, polar_curve(f));
    REQUIRE(raw.size() == 2);
    CHECK(raw[0].coords[0].to_string() == "-3*t^2");
    CHECK(raw[0].coords[1].to_string() == "-2*t^3");
    CHECK(raw[1].coords[1].to_string() == "2*t^3");
    auto delta = discriminant(f, polar_curve(f));
    REQUIRE(delta.size() == 2);
    CHECK(outer_contact_order(delta[0], delta[1]).value == Rational(3, 2));
}

TEST_CASE("G5 has one polar triangle of width 3/2 and height bound 2") {
    PrenormalForm f = prenormalize(parse_map("x, x*y + y^3, y^5, 0"));
    std::vector<double> radii{1e-1, 1e-2, 1e-3};
    PolarData d = analyze_polar(f, radii);
    REQUIRE(d.triangles.size() == 1);
    const auto &t = d.triangles[0];
    CHECK(t.width == Rational(3, 2));
    CHECK(t.fiber_count == 3);
    CHECK(t.midpoint_test_arc);
    CHECK(*t.height_lower_bound == 2);
    auto hw = height_width_test(d);
    CHECK(hw.status == HeightWidthStatus::Fail);
    CHECK(*hw.triangle == 0);
    REQUIRE(t.height_numeric);
    CHECK(*t.height_numeric >= 2 - 0.15);
}

TEST_CASE("numeric height of G5 against explicit fiber solving") {
    // oracle: fibers of (x, xy + y^3) over (-s, 0) are y = 0, +-sqrt(s); images differ by y^5 in slot 3
    std::vector<double> lx, ly;
    for (double s : {1e-1, 1e-2, 1e-3}) {
        double y = std::sqrt(s);
        lx.push_back(std::log(s));
        ly.push_back(std::log(std::pow(y, 5)));
    }
    double oracle = (ly[2] - ly[0]) / (lx[2] - lx[0]);
    CHECK(oracle == doctest::Approx(2.5));
    PrenormalForm f = prenormalize(parse_map("x, x*y + y^3, y^5, 0"));
    std::vector<double> radii{1e-1, 1e-2, 1e-3};
    PolarData d = analyze_polar(f, radii);
    CHECK(*d.triangles[0].height_numeric == doctest::Approx(oracle).epsilon(0.05));
}

TEST_CASE("height_lower_bound formula") {
    PolarTriangle t;
    CHECK(height_lower_bound(prenormalize(parse_map("x, x*y + y^5, y^7, 0")), t) == Rational(3, 2));
    CHECK(height_lower_bound(prenormalize(parse_map("x, x*y + y^3, 0, 0"), 12), t) == 2);
    CHECK_THROWS_AS(height_lower_bound(prenormalize(parse_map("x, y^3, x*y, 0")), t), ShapeError);
    for (int n = 2; n <= 9; ++n)
        for (int q = n + 1; q <= 11; ++q)
            CHECK(height_lower_bound(prenormalize(parse_map("x, x*y + y^" + std::to_string(n) + ", y^" + std::to_string(q) + ", 0")), t) >= 1);
}

TEST_CASE("height_width_test outcomes") {
    PolarData pass;
    PolarTriangle t;
    t.width = 2;
    t.height_lower_bound = Rational(3, 2);
    pass.triangles.push_back(t);
    CHECK(height_width_test(pass).status == HeightWidthStatus::Pass);
    CHECK(height_width_test(PolarData{}).status == HeightWidthStatus::NotApplicable);
}

TEST_CASE("cusp width is n/(n-1) for odd n") {
    for (int n = 3; n <= 9; n += 2) {
        PrenormalForm f = shear(n);
        auto raw = discriminant_raw(f, polar_curve(f));
        REQUIRE(raw.size() == 2);
        CHECK(*raw[0].coords[0].leading_exponent() == n - 1);
        CHECK(*raw[0].coords[1].leading_exponent() == n);
        auto tris = build_triangles(f, discriminant(f, polar_curve(f)));
        REQUIRE(tris.size() == 1);
        CHECK(tris[0].width == make_rational(n, n - 1));
    }
}

TEST_CASE("sampled polar points land on the symbolic discriminant") {
    const char *germs[] = {"x, x*y + y^3, y^5, 0", "x, x*y + y^5 + x^2*y^2, y^7, x*y^6", "x, x*y - 2*y^3 + y^4, y^6, 0"};
    std::mt19937 rng(17);
    for (const char *text : germs) {
        PrenormalForm f = prenormalize(parse_map(text));
        auto delta = discriminant(f, polar_curve(f));
        Poly2 dy = partial_derivative(f.series[1], Axis::Y);
        std::uniform_real_distribution<double> ydist(-1, 1);
        int hits = 0;
        for (int k = 0; k < 200; ++k) {
            // pick y, solve dP/dy(x, y) = 0 for x near 0, then rescale until |image| ~ 1e-2
            double y = ydist(rng) * 0.3;
            double v0 = 0, v1 = 0;
            bool found = false;
            for (int shrink = 0; shrink < 60 && !found; ++shrink) {
                std::vector<double> cx(static_cast<std::size_t>(std::max(dy.degree_in(0), 0)) + 1, 0.0);
                for (const auto &[e, c] : dy.terms()) cx[static_cast<std::size_t>(e[0])] += c.get_d() * std::pow(y, e[1]);
                double xbest = NAN;
                for (double x : real_roots_numeric(cx))
                    if (std::abs(x) < 0.5 && (std::isnan(xbest) || std::abs(x) < std::abs(xbest))) xbest = x;
                if (std::isnan(xbest)) break;
                v0 = f.series[0].eval<double>({xbest, y});
                v1 = f.series[1].eval<double>({xbest, y});
                if (std::hypot(v0, v1) <= 1e-2) found = true;
                else y *= 0.9;
            }
            if (!found) continue;
            double r = std::hypot(v0, v1);
            double best = INFINITY;
            for (const auto &a : delta) best = std::min(best, distance_to_arc(a, v0, v1, r));
            CHECK(best < 1e-6);
            ++hits;
        }
        CHECK(hits > 100);
    }
}

}
