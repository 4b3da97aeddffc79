#include "germkit/germ.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace germkit;

TEST_SUITE("germ") {

TEST_CASE("corank") {
    CHECK(corank(parse_map("x, y, 0, 0")) == 0);
    CHECK(corank(parse_map("x, y^2, x*y, 0")) == 1);
    // complex cusp t -> (t^2, t^3) written in real coordinates
    CHECK(corank(parse_map("x^2 - y^2, 2*x*y, x^3 - 3*x*y^2, 3*x^2*y - y^3")) == 2);
    CHECK(corank(parse_map("x + y, 2*x + 2*y, x*y, 0")) == 1);
}

TEST_CASE("classify_2jet on the orbit representatives") {
    CHECK(classify_2jet(parse_map("x, y^2, x*y, 0")) == JetOrbit::Crosscap);
    CHECK(classify_2jet(parse_map("x, y^2, 0, 0")) == JetOrbit::Parabolic);
    CHECK(classify_2jet(parse_map("x, x*y, 0, 0")) == JetOrbit::Shear);
    CHECK(classify_2jet(parse_map("x, 0, 0, 0")) == JetOrbit::Degenerate);
    CHECK(classify_2jet(parse_map("x, y, 0, 0")) == JetOrbit::NotCorank1);
    CHECK(classify_2jet(parse_map("x, x*y + y^3, y^5, 0")) == JetOrbit::Shear);
    CHECK(classify_2jet(parse_map("x + y^2, 3*y^2 + x*y, 0, 0")) == JetOrbit::Parabolic);
    CHECK(classify_2jet(parse_map("x, x^2 + y^3, x*y^2, 0")) == JetOrbit::Degenerate);
}

TEST_CASE("parabolic example reduces by the explicit shear") {
    // y <- y + x/6 then target clean-up sends (x + y^2, 3y^2 + xy) to (x, y^2) on 2-jets
    MapGerm m = parse_map("x + y^2, 3*y^2 + x*y, 0, 0");
    RationalMatrix a = RationalMatrix::identity(2);
    a(1, 0) = Rational(-1, 6);
    MapGerm sheared = testing::change_coordinates(m, a, RationalMatrix::identity(4));
    Poly2 q = sheared[1].homogeneous_part(2);
    CHECK(q.coeff({1, 1}) == 0);
    CHECK(q.coeff({0, 2}) == 3);
}

TEST_CASE("classify_2jet is invariant under linear coordinate changes") {
    std::mt19937 rng(2024);
    const char *reps[] = {"x, y^2, x*y, 0", "x, y^2, 0, 0", "x, x*y, 0, 0", "x, 0, 0, 0", "x, x*y + y^3, y^5, x^2*y"};
    for (const char *text : reps) {
        MapGerm m = parse_map(text);
        JetOrbit expected = classify_2jet(m);
        for (int k = 0; k < 20; ++k) {
            MapGerm changed = testing::change_coordinates(m, testing::random_invertible(rng, 2), testing::random_invertible(rng, 4));
            CHECK(classify_2jet(changed) == expected);
        }
    }
}

TEST_CASE("prenormalize moves the lowest y-order into slot 2") {
    PrenormalForm f = prenormalize(parse_map("x, x*y, y^3, 0"), 8);
    CHECK(f.orders[0] == AxisOrder::finite(3));
    CHECK(f.orders[1].infinite);
    CHECK(f.orders[2].infinite);
    CHECK(f.series[1] == parse_poly("y^3"));
    CHECK(f.series[2] == parse_poly("x*y"));
    REQUIRE(f.shear_slot.has_value());
    CHECK(*f.shear_slot == 2);
}

TEST_CASE("prenormalize keeps the cross-cap") {
    PrenormalForm f = prenormalize(parse_map("x, y^2, x*y, 0"), 8);
    CHECK(f.orders[0] == AxisOrder::finite(2));
    CHECK(f.orders[1].infinite);
    CHECK(f.orders[2].infinite);
    CHECK(f.orbit == JetOrbit::Crosscap);
    CHECK(f.changes.empty());
}

TEST_CASE("prenormalize straightens slot 1") {
    PrenormalForm f = prenormalize(parse_map("x + x^2, y^2, 0, 0"), 8);
    CHECK(f.series[0] == Poly2::variable(0));
    CHECK(f.orders[0] == AxisOrder::finite(2));
    for (std::size_t i = 1; i < 4; ++i) CHECK(order_along_axis(f.series[i], Axis::X).infinite);
}

TEST_CASE("prenormalize separates tied orders exactly") {
    PrenormalForm f = prenormalize(parse_map("x, x*y + y^3, 2*y^3 + y^4, 0"), 10);
    CHECK(f.orders[0] == AxisOrder::finite(3));
    CHECK(f.orders[0] < f.orders[1]);
    REQUIRE(f.shear_slot.has_value());
    // the xy slot was the one reduced, so slot 2 is the pure y^3 slot
    CHECK(*f.shear_slot != 1);
    CHECK_FALSE(f.notices.empty());
}

TEST_CASE("prenormalize errors") {
    CHECK_THROWS_AS(prenormalize(parse_map("x, y, 0, 0")), PreconditionError);
    CHECK_THROWS_AS(prenormalize(parse_map("x, x^2, x^3, 0")), DegenerateError);
    CHECK_THROWS_AS(prenormalize(parse_map("x, x*y + y^7, 0, 0"), 7), TruncationError);
    CHECK_THROWS_AS(prenormalize(parse_map("x, x*y + y^9, 0, 0"), 8), DegenerateError);
}

TEST_CASE("prenormal invariants and replay on random corank-1 germs") {
    std::mt19937 rng(99);
    const int degree = 7;
    for (int trial = 0; trial < 40; ++trial) {
        std::array<Poly2, 4> comps;
        comps[0] = parse_poly("x");
        comps[1] = Poly2::monomial({0, 2 + trial % 3}, testing::random_nonzero(rng));
        for (std::size_t i = 1; i < 4; ++i) {
            Poly2 extra = testing::random_poly(rng, 5, 4, true);
            comps[i] += extra - extra.homogeneous_part(1);
        }
        comps[0] += testing::random_poly(rng, 4, 2, true).truncated(4) - testing::random_poly(rng, 1, 1, true);
        MapGerm base(comps);
        if (corank(base) != 1) continue;
        MapGerm m = testing::change_coordinates(base, testing::random_invertible(rng, 2), testing::random_invertible(rng, 4));
        PrenormalForm f;
        try {
            f = prenormalize(m, degree);
        } catch (const DegenerateError &) {
            continue;
        } catch (const TruncationError &) {
            continue;
        }
        CHECK(f.series[0] == Poly2::variable(0));
        for (std::size_t i = 1; i < 4; ++i) CHECK(order_along_axis(f.series[i], Axis::X).infinite);
        CHECK(f.orders[0] < f.orders[1]);
        CHECK(f.orders[1] <= f.orders[2]);
        CHECK(replay(m, f.changes, degree) == f.series);

        // p is the minimal y-order after the linear normalization alone
        std::vector<CoordinateChange> linear;
        for (const auto &ch : f.changes)
            if (std::holds_alternative<SourceLinear>(ch)) linear.push_back(ch);
        auto lin = replay(m, linear, degree);
        RationalMatrix t = f.target_linear();
        std::array<Poly2, 4> mixed;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t k = 0; k < 4; ++k) mixed[i] += lin[k] * t(i, k);
        AxisOrder direct = AxisOrder::infinity();
        for (std::size_t i = 1; i < 4; ++i) direct = std::min(direct, order_along_axis(mixed[i], Axis::Y));
        CHECK(direct == f.orders[0]);
    }
}

}
