#include "germkit/report.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace germkit;
using germkit::testing::change_coordinates;
using germkit::testing::random_poly;
using germkit::testing::random_rational;

namespace {

const StageRecord &stage(const AnalysisReport &r, std::string_view name) {
    for (const auto &s : r.stages)
        if (s.name == name) return s;
    FAIL("missing stage " << name);
    throw 0;
}

/// Rational orthogonal matrix (I - S)(I + S)^-1 from a random skew-symmetric S.
RationalMatrix cayley_rotation(std::mt19937 &rng, std::size_t n) {
    RationalMatrix minus = RationalMatrix::identity(n), plus = RationalMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Rational s = random_rational(rng, 2, 3);
            minus(i, j) -= s;
            minus(j, i) += s;
            plus(i, j) += s;
            plus(j, i) -= s;
        }
    return minus * plus.inverse();
}

AnalysisConfig quick() {
    AnalysisConfig c;
    c.link_resolution = 256;
    return c;
}

} // namespace

TEST_SUITE("verdict") {

TEST_CASE("log spacing") {
    auto r = log_spaced(1e-1, 1e-3, 5);
    REQUIRE(r.size() == 5);
    CHECK(r.front() == doctest::Approx(1e-1));
    CHECK(r[2] == doctest::Approx(1e-2));
    CHECK(r.back() == doctest::Approx(1e-3));
    CHECK_THROWS_AS(log_spaced(0, 1, 3), PreconditionError);
    CHECK_THROWS_AS(log_spaced(1, 0.1, 1), PreconditionError);
}

TEST_CASE("crosscap is not normally embedded by the half-plane cone, knot attached") {
    auto r = analyze(parse_map("x, y^2, x*y, 0"), quick());
    CHECK(r.verdict.status == EmbeddingStatus::NotNe);
    REQUIRE(r.verdict.certificate);
    CHECK(*r.verdict.certificate == Certificate::HalfPlane);
    CHECK(r.verdict.details["p"] == 2);
    CHECK(r.orbit == JetOrbit::Crosscap);
    CHECK(r.knot.has_value());
    CHECK(stage(r, "orbit").status == StageStatus::Skipped);
    CHECK(stage(r, "numeric").status == StageStatus::Skipped);
    CHECK(stage(r, "knot").status == StageStatus::Done);
    CHECK(!r.arc);
}

TEST_CASE("parabolic jet is caught by the cone first") {
    auto r = analyze(parse_map("x, y^2, y^3, 0"), quick());
    CHECK(r.orbit == JetOrbit::Parabolic);
    CHECK(r.verdict.status == EmbeddingStatus::NotNe);
    CHECK(*r.verdict.certificate == Certificate::HalfPlane);
}

TEST_CASE("G5 violates the order claim, with height/width evidence") {
    auto r = analyze(parse_map("x, x*y + y^3, y^5, 0"), quick());
    CHECK(r.verdict.status == EmbeddingStatus::NotNe);
    REQUIRE(r.verdict.certificate);
    CHECK(*r.verdict.certificate == Certificate::Claim1Order);
    CHECK(r.verdict.details["p_order"] == 3);
    CHECK(r.verdict.details["q_order"] == 5);
    REQUIRE(r.verdict.details.contains("height_width"));
    CHECK(r.verdict.details["height_width"]["height_lower_bound"] == "2");
    CHECK(r.verdict.details["height_width"]["width"] == "3/2");
    CHECK(stage(r, "polar").status == StageStatus::Done);
    CHECK(stage(r, "numeric").status == StageStatus::Skipped);
}

TEST_CASE("(x, xy, y^3, 0) is likely normally embedded with a certified trivial knot") {
    auto r = analyze(parse_map("x, x*y, y^3, 0"), quick());
    CHECK(r.verdict.status == EmbeddingStatus::LikelyNe);
    REQUIRE(r.verdict.certificate);
    CHECK(*r.verdict.certificate == Certificate::Numeric);
    double g = r.verdict.details["growth_exponent"].get<double>();
    CHECK(g > -0.1);
    CHECK(g < 0.1);
    REQUIRE(r.knot);
    CHECK(r.knot->verdict == KnotVerdict::TrivialCertified);
    CHECK(r.verdict.details.contains("knot_implication"));
    CHECK(r.warnings.empty());
    CHECK(!r.assumptions.empty());
}

TEST_CASE("smooth germ and rotations of it are never NOT_NE") {
    std::mt19937 rng(23);
    const MapGerm smooth = parse_map("x, y, 0, 0");
    for (int trial = 0; trial < 4; ++trial) {
        MapGerm m = trial == 0 ? smooth : change_coordinates(smooth, cayley_rotation(rng, 2), cayley_rotation(rng, 4));
        auto r = analyze(m, quick());
        CHECK(r.corank == 0);
        CHECK(r.verdict.status != EmbeddingStatus::NotNe);
        CHECK(stage(r, "cone").status == StageStatus::Done);
        CHECK(stage(r, "claim1").status == StageStatus::NotApplicable);
    }
}

TEST_CASE("even p always short-circuits to NOT_NE") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 8; ++trial) {
        int p = 2 * (1 + trial % 3);
        Poly2 y = Poly2::variable(1), x = Poly2::variable(0);
        Poly2 f2 = y.pow(p) * random_rational(rng, 3, 2) + y.pow(p) + x * y * Rational(trial % 2);
        if (f2.coeff({0, p}) == 0) f2 += y.pow(p);
        Poly2 f3 = y.pow(p + 1) + random_poly(rng, 4, 3, true) * x * x;
        Poly2 f4 = y.pow(p + 3) * random_rational(rng, 3, 2);
        MapGerm m({x, f2, f3, f4});
        auto r = analyze(change_coordinates(m, cayley_rotation(rng, 2), cayley_rotation(rng, 4)), quick());
        CAPTURE(m.to_string());
        CHECK(r.verdict.status == EmbeddingStatus::NotNe);
        REQUIRE(r.verdict.certificate);
        CHECK(*r.verdict.certificate == Certificate::HalfPlane);
    }
}

TEST_CASE("corank 2 goes through numerics and the knot") {
    auto r = analyze(parse_map("x^2 - y^2, 2*x*y, x^3 - 3*x*y^2, 3*x^2*y - y^3"), quick());
    CHECK(r.corank == 2);
    CHECK(stage(r, "cone").status == StageStatus::NotApplicable);
    CHECK(stage(r, "numeric").status == StageStatus::Done);
    CHECK(r.verdict.status == EmbeddingStatus::Inconclusive);
    REQUIRE(r.knot);
    CHECK(r.knot->verdict == KnotVerdict::Nontrivial);
}

TEST_CASE("a failed stage skips the dependent ones") {
    auto r = analyze(parse_map("x, x*y, 0, 0"), quick());
    CHECK(stage(r, "jet").status == StageStatus::Failed);
    for (auto name : {"cone", "orbit", "claim1", "polar", "numeric"}) CHECK(stage(r, name).status == StageStatus::Skipped);
    CHECK(r.verdict.status == EmbeddingStatus::Inconclusive);
    CHECK(!r.verdict.certificate);
}

TEST_CASE("NOT_NE never carries a numeric certificate") {
    for (auto text : {"x, y^2, x*y, 0", "x, x*y + y^3, y^5, 0", "x, x*y, y^3, 0", "x, y, 0, 0"}) {
        auto r = analyze(parse_map(text), quick());
        if (r.verdict.status == EmbeddingStatus::NotNe) {
            REQUIRE(r.verdict.certificate);
            CHECK(*r.verdict.certificate != Certificate::Numeric);
        }
    }
}

TEST_CASE("report is deterministic for a fixed seed") {
    auto m = parse_map("x, x*y, y^3, 0");
    std::string a = to_json(analyze(m, quick())).dump(2);
    std::string b = to_json(analyze(m, quick())).dump(2);
    CHECK(a == b);
    auto j = Json::parse(a);
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["verdict"]["status"] == "LIKELY_NE");
    CHECK(j["knot"]["verdict"] == "TRIVIAL_CERTIFIED");
    CHECK(j["jet"]["orbit"] == "SHEAR");
}

}
