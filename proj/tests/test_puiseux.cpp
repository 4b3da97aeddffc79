#include "germkit/puiseux.hpp"
#include "germkit/roots.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace germkit;

namespace {

std::vector<PuiseuxBranch> real_only(const std::vector<PuiseuxBranch> &bs) {
    std::vector<PuiseuxBranch> out;
    for (const auto &b : bs)
        if (b.real) out.push_back(b);
    return out;
}

PuiseuxSeries ser(std::initializer_list<std::pair<Rational, Rational>> terms, std::optional<Rational> order = std::nullopt) {
    PuiseuxSeries s(order);
    for (const auto &[e, c] : terms) s.add_term(e, c);
    return s;
}

ArcGerm arc(PuiseuxSeries a, PuiseuxSeries b, PuiseuxSeries c, PuiseuxSeries d, bool normalized = false) {
    return ArcGerm{{a, b, c, d}, normalized};
}

double norm(const std::array<double, 4> &z) { return std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3]); }

} // namespace

TEST_SUITE("puiseux") {

TEST_CASE("real_roots with multiplicities") {
    RootCount r = real_roots(parse_poly("(x - 1)^2*(x + 2)*(x^2 + 1)").compose<1>({Poly1::variable(0), Poly1()}));
    REQUIRE(r.real.size() == 2);
    CHECK(*r.real[0].exact == -2);
    CHECK(r.real[0].multiplicity == 1);
    CHECK(*r.real[1].exact == 1);
    CHECK(r.real[1].multiplicity == 2);
    CHECK(r.nonreal == 2);
    RootCount s = real_roots(parse_poly("x^2 - 2").compose<1>({Poly1::variable(0), Poly1()}));
    REQUIRE(s.real.size() == 2);
    CHECK(!s.real[0].exact);
    CHECK(s.real[1].value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("x + 3y^2 has the single branch x = -3y^2") {
    auto bs = real_only(newton_puiseux(parse_poly("x + 3*y^2")));
    REQUIRE(bs.size() == 1);
    CHECK(bs[0].closed);
    CHECK(bs[0].ramification == 1);
    CHECK(bs[0].x.to_string() == "-3*t^2");
    CHECK(bs[0].y.to_string() == "t");
}

TEST_CASE("cusp x^2 - y^3 has ramification 2") {
    auto all = newton_puiseux(parse_poly("x^2 - y^3"));
    auto bs = real_only(all);
    REQUIRE(bs.size() == 1);
    CHECK(bs[0].ramification == 2);
    CHECK(bs[0].y.to_string() == "t^2");
    CHECK(bs[0].x.to_string() == "t^3");
    CHECK(bs[0].closed);
    // y < 0 side: x^2 = -t^6 has no real solutions
    CHECK(all.size() == 2);
    CHECK(!all[1].real);
    auto halves = half_branches(bs[0]);
    CHECK(halves[1][0].to_string() == "-t^3");
    CHECK(halves[1][1].to_string() == "t^2");
}

TEST_CASE("y^2 gives the double branch y = 0") {
    auto bs = newton_puiseux(parse_poly("y^2"));
    REQUIRE(bs.size() == 1);
    CHECK(bs[0].orientation == Orientation::YOfX);
    CHECK(bs[0].multiplicity == 2);
    CHECK(bs[0].y.to_string() == "0");
    CHECK(bs[0].x.to_string() == "t");
}

TEST_CASE("orientation y in x") {
    auto bs = real_only(newton_puiseux(parse_poly("y - x^2 - x^3"), 12, Orientation::YOfX));
    REQUIRE(bs.size() == 1);
    CHECK(bs[0].x.to_string() == "t");
    CHECK(bs[0].y.to_string() == "t^2 + t^3");
}

TEST_CASE("irrational leading coefficient switches to floats") {
    auto bs = real_only(newton_puiseux(parse_poly("x^2 - 2*y^2 - x*y^3"), 8));
    REQUIRE(bs.size() == 2);
    for (const auto &b : bs) {
        CHECK(b.precision_loss);
        CHECK(!b.closed);
        CHECK(std::abs(b.x.terms().front().coeff.value()) == doctest::Approx(std::sqrt(2.0)));
        // residual of the float branch is tiny at small y
        for (double t : {1e-2, -1e-2}) {
            double x = b.x.eval(t), y = b.y.eval(t);
            CHECK(std::abs(x * x - 2 * y * y - x * y * y * y) < 1e-15);
        }
    }
}

TEST_CASE("branches substituted back vanish below the expansion order") {
    std::mt19937 rng(11);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Poly2 p = testing::random_poly(rng, 5, 4, true);
        if (p.is_zero()) continue;
        const int order = 6;
        for (const auto &b : newton_puiseux(p, order)) {
            if (!b.real || b.precision_loss) continue;
            PuiseuxSeries r = compose(p, b.x, b.y);
            CHECK_MESSAGE(r.terms().empty(), p.to_string(kNamesXY), " via ", b.to_string(), " -> ", r.to_string());
            if (b.closed) {
                CHECK(!r.order());
            } else {
                REQUIRE(r.order());
                CHECK(*r.order() > order * b.ramification);
            }
            ++checked;
        }
    }
    CHECK(checked > 30);
}

TEST_CASE("reparametrize_by_distance") {
    ArcGerm g = arc(ser({{2, 1}}), {}, ser({{3, 1}}), {});
    ArcGerm s = reparametrize_by_distance(g);
    CHECK(s.normalized);
    CHECK(s.coords[0].terms().front().exponent == 1);
    CHECK(s.coords[0].terms().front().coeff.rational() == 1);
    CHECK(s.coords[2].terms().front().exponent == Rational(3, 2));
    CHECK(s.coords[2].terms().front().coeff.rational() == 1);
    CHECK(s.coords[1].to_string() == "0");
    // oracle: |gamma(s)| = s
    for (double r : {1e-1, 1e-2, 1e-3}) CHECK(std::abs(norm(s.eval(r)) - r) < 1e-5 * r);

    ArcGerm lin = reparametrize_by_distance(arc(ser({{1, 1}}), {}, {}, {}));
    CHECK(lin.coords[0].to_string() == "t");
    CHECK(!lin.coords[0].order());
    ArcGerm lin2 = reparametrize_by_distance(arc(ser({{1, 2}}), {}, {}, {}));
    CHECK(lin2.coords[0].to_string() == "t");
    CHECK_THROWS_AS(reparametrize_by_distance(arc({}, {}, {}, {})), PreconditionError);
}

TEST_CASE("reparametrize handles irrational norms and fractional exponents") {
    ArcGerm g = arc(ser({{Rational(1, 2), 1}}), ser({{Rational(1, 2), 1}, {1, 3}}), {}, {});
    ArcGerm s = reparametrize_by_distance(g);
    for (double r : {1e-2, 1e-3, 1e-4}) CHECK(std::abs(norm(s.eval(r)) - r) < 1e-4 * r);
}

TEST_CASE("contact orders") {
    ArcGerm a = arc(ser({{1, 1}}), {}, ser({{Rational(3, 2), 1}}), {}, true);
    ArcGerm b = arc(ser({{1, 1}}), {}, ser({{Rational(3, 2), -1}}), {}, true);
    CHECK(outer_contact_order(a, b).value == Rational(3, 2));
    CHECK(outer_contact_order(reparametrize_by_distance(a), reparametrize_by_distance(b)).value == Rational(3, 2));
    ArcGerm u = arc(ser({{1, 1}}), {}, {}, {}, true), v = arc({}, ser({{1, 1}}), {}, {}, true);
    CHECK(outer_contact_order(u, v).value == 1);
    CHECK(outer_contact_order(u, u).infinite);
    ArcGerm w = arc(ser({{1, 1}}, Rational(3)), {}, {}, {}, true);
    CHECK_THROWS_AS(outer_contact_order(u, w), TruncationError);
    CHECK_THROWS_AS(outer_contact_order(arc(ser({{1, 1}}), {}, {}, {}), u), PreconditionError);
}

TEST_CASE("contact order is symmetric and isosceles on random triples") {
    std::mt19937 rng(99);
    const Rational levels[] = {Rational(3, 2), 2, Rational(5, 2), 3, Rational(7, 2)};
    std::uniform_int_distribution<int> level(0, 4), coord(1, 3);
    for (int trial = 0; trial < 100; ++trial) {
        std::array<PuiseuxSeries, 4> base{ser({{1, 1}}), {}, {}, {}};
        for (std::size_t i = 1; i < 4; ++i) base[i].add_term(levels[level(rng)], testing::random_rational(rng));
        std::array<ArcGerm, 3> arcs;
        for (auto &g : arcs) {
            g.coords = base;
            g.coords[static_cast<std::size_t>(coord(rng))].add_term(levels[level(rng)], testing::random_nonzero(rng));
        }
        auto same = [](const ArcGerm &x, const ArcGerm &y) {
            for (std::size_t i = 0; i < 4; ++i)
                if (x.coords[i].to_string() != y.coords[i].to_string()) return false;
            return true;
        };
        if (same(arcs[0], arcs[1]) || same(arcs[1], arcs[2]) || same(arcs[0], arcs[2])) {
            --trial;
            continue;
        }
        for (auto &g : arcs) g = reparametrize_by_distance(g);
        std::array<Rational, 3> c;
        for (int i = 0; i < 3; ++i) {
            const ArcGerm &x = arcs[static_cast<std::size_t>(i)], &y = arcs[static_cast<std::size_t>((i + 1) % 3)];
            ContactOrder xy = outer_contact_order(x, y), yx = outer_contact_order(y, x);
            REQUIRE(!xy.infinite);
            CHECK(xy.value == yx.value);
            c[static_cast<std::size_t>(i)] = xy.value;
        }
        std::sort(c.begin(), c.end());
        CHECK(c[0] == c[1]);
    }
}

TEST_CASE("reparametrization preserves contact orders") {
    ArcGerm a = arc(ser({{1, 1}}), {}, ser({{2, 1}}), {}, true);
    ArcGerm b = arc(ser({{1, 1}}), {}, ser({{2, 1}, {3, 1}}), {}, true);
    CHECK(outer_contact_order(a, b).value == 3);
    CHECK(outer_contact_order(reparametrize_by_distance(a), reparametrize_by_distance(b)).value == 3);
}

}
