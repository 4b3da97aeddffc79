#include "germkit/metric.hpp"
#include "germkit/polar.hpp"

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <queue>
#include <random>

using namespace germkit;

namespace {

MapGerm smooth() { return parse_map("x, y, x*y, 0"); }
MapGerm crosscap() { return parse_map("x, y^2, x*y, 0"); }
MapGerm g6() { return parse_map("x^2 - y^2, 2*x*y, x^3 - 3*x*y^2, 3*x^2*y - y^3"); }

bool connected(const SurfaceMesh &mesh) {
    std::vector<bool> seen(mesh.vertices.size(), false);
    std::queue<std::size_t> q;
    q.push(mesh.origin);
    seen[mesh.origin] = true;
    std::size_t count = 1;
    while (!q.empty()) {
        auto v = q.front();
        q.pop();
        for (auto [w, len] : mesh.adjacency[v])
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                q.push(w);
            }
    }
    return count == mesh.vertices.size();
}

PuiseuxSeries mono(const Rational &c, const Rational &e) { return PuiseuxSeries::monomial(Coeff(c), e); }

SourceArc source_arc(PuiseuxSeries x, PuiseuxSeries y) { return {std::move(x), std::move(y)}; }

/// Length of t -> (t^2, t^3) on [0, a].
double cusp_length(double a) { return (std::pow(4 + 9 * a * a, 1.5) - 8) / 27; }

const std::vector<double> kRadii{1e-1, 3e-2, 1e-2, 3e-3, 1e-3};

} // namespace

TEST_SUITE("metric") {

TEST_CASE("smooth mesh is connected with short edges") {
    auto mesh = sample_mesh(smooth(), 0.1, 64);
    CHECK(connected(mesh));
    CHECK(mesh.warnings.empty());
    double longest = 0;
    for (const auto &e : mesh.edges) {
        CHECK(e.a != e.b);
        CHECK(std::abs(e.length - (mesh.vertices[e.a].image - mesh.vertices[e.b].image).norm()) < 1e-12);
        longest = std::max(longest, e.length);
    }
    CHECK(longest < 0.02);
    std::size_t total = 0;
    for (const auto &b : mesh.radius_bands) total += b.size();
    CHECK(total == mesh.vertices.size());
}

TEST_CASE("cross-cap double points collide") {
    auto mesh = sample_mesh(crosscap(), 0.1, 64);
    REQUIRE(!mesh.warnings.empty());
    CHECK(mesh.warnings[0].find("non-injectivity") != std::string::npos);
    // (0, y) and (0, -y) share their image
    CHECK(mesh.snap(0, 0.05) == mesh.snap(0, -0.05));
    CHECK(mesh.snap(0.05, 0) != mesh.snap(-0.05, 0));
    CHECK(connected(mesh));
}

TEST_CASE("complex cusp mesh has a single conical point") {
    auto mesh = sample_mesh(g6(), 0.1, 64);
    CHECK(connected(mesh));
    std::size_t at_zero = 0;
    for (const auto &v : mesh.vertices)
        if (v.image.norm() == 0) ++at_zero;
    CHECK(at_zero == 1);
    CHECK(mesh.vertices[mesh.origin].image.norm() == 0);
}

TEST_CASE("resolution below 16 is rejected") { CHECK_THROWS_AS(sample_mesh(smooth(), 0.1, 8), PreconditionError); }

TEST_CASE("inner distance basics") {
    auto mesh = sample_mesh(smooth(), 0.1, 32);
    const auto &e = mesh.edges[mesh.edges.size() / 2];
    CHECK(inner_distance(mesh, e.a, e.b) == doctest::Approx(e.length).epsilon(1e-12));
    CHECK(inner_distance(mesh, e.a, e.a) == 0);
    CHECK_THROWS_AS(inner_distance(mesh, mesh.vertices.size(), 0), PreconditionError);
}

TEST_CASE("cusp arcs t and -t meet through the conical point") {
    auto mesh = sample_mesh(g6(), 0.2, 64, 1e-5);
    for (double a : {0.3, 0.1, 0.03}) {
        auto u = mesh.snap(a, 0), v = mesh.snap(-a, 0);
        double s = mesh.vertices[u].source[0];
        REQUIRE(mesh.vertices[v].source[0] == doctest::Approx(-s));
        double inner = inner_distance(mesh, u, v);
        // chords of the inscribed polygon undercut the arc length slightly
        CHECK(inner == doctest::Approx(2 * cusp_length(s)).epsilon(1e-3));
        CHECK(inner <= 2 * cusp_length(s));
        double outer = (mesh.vertices[u].image - mesh.vertices[v].image).norm();
        CHECK(outer == doctest::Approx(2 * s * s * s).epsilon(1e-9));
    }
}

TEST_CASE("inner distance dominates outer distance on random queries") {
    std::mt19937_64 rng(7);
    for (const auto &m : {smooth(), crosscap(), g6(), parse_map("x, x*y + y^3, y^5, 0")}) {
        auto mesh = sample_mesh(m, 0.1, 32);
        std::uniform_int_distribution<std::size_t> pick(0, mesh.vertices.size() - 1);
        for (int k = 0; k < 25; ++k) {
            auto a = pick(rng), b = pick(rng);
            double inner = inner_distance(mesh, a, b);
            CHECK(inner >= (mesh.vertices[a].image - mesh.vertices[b].image).norm() - 1e-9);
        }
    }
}

TEST_CASE("doubling the resolution moves inner distances by under 5%") {
    for (const auto &m : {smooth(), crosscap(), g6()}) {
        auto coarse = sample_mesh(m, 0.1, 32), fine = sample_mesh(m, 0.1, 64);
        for (int k = 0; k < 8; ++k) {
            // coarse grid points are fine grid points
            int ring = 3 + 2 * k, j1 = k, j2 = k + 11;
            auto a = coarse.vertex_at(ring, j1), b = coarse.vertex_at(ring + 4, j2);
            const auto &sa = coarse.vertices[a].source, &sb = coarse.vertices[b].source;
            auto fa = fine.snap(sa[0], sa[1]), fb = fine.snap(sb[0], sb[1]);
            REQUIRE((fine.vertices[fa].image - coarse.vertices[a].image).norm() < 1e-12);
            REQUIRE((fine.vertices[fb].image - coarse.vertices[b].image).norm() < 1e-12);
            double dc = inner_distance(coarse, a, b), df = inner_distance(fine, fa, fb);
            CHECK(std::abs(dc - df) / df < 0.05);
        }
    }
}

TEST_CASE("mesh dump format") {
    auto mesh = sample_mesh(smooth(), 0.1, 16);
    std::ostringstream out;
    write_mesh(mesh, out);
    std::istringstream in(out.str());
    std::string line;
    std::size_t v = 0, e = 0;
    while (std::getline(in, line)) {
        if (line.rfind("v ", 0) == 0) ++v;
        else if (line.rfind("e ", 0) == 0) ++e;
        else FAIL("unexpected line " << line);
    }
    CHECK(v == mesh.vertices.size());
    CHECK(e == mesh.edges.size());
}

TEST_CASE("arc criterion: smooth germ is bounded") {
    auto t0 = std::chrono::steady_clock::now();
    auto r = arc_criterion_estimate(smooth(), std::nullopt, kRadii, {64, 3, 64});
    CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(30));
    CHECK(r.growth_exponent > -0.1);
    CHECK(r.growth_exponent < 0.1);
    CHECK(r.k_estimate >= 1.0);
    CHECK(r.k_estimate < 2.0);
    CHECK(r.series.size() == 64);
}

TEST_CASE("arc criterion: complex cusp arcs +-t diverge like s^-1/2") {
    ArcPair pair{source_arc(mono(1, 1), PuiseuxSeries()), source_arc(mono(-1, 1), PuiseuxSeries())};
    auto t0 = std::chrono::steady_clock::now();
    auto r = arc_criterion_estimate(g6(), std::vector<ArcPair>{pair}, kRadii);
    CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(30));
    CHECK(r.growth_exponent == doctest::Approx(0.5).epsilon(0.1));
    for (const auto &s : r.series[0].samples) CHECK(s.inner >= s.outer - 1e-9);
}

TEST_CASE("arc criterion: cross-cap fiber arcs over a transverse line diverge") {
    // fibers of (x, y^2) over the ray (s, s): x = t^2, y = +-t
    ArcPair pair{source_arc(mono(1, 2), mono(1, 1)), source_arc(mono(1, 2), mono(-1, 1))};
    auto r = arc_criterion_estimate(crosscap(), std::vector<ArcPair>{pair}, kRadii);
    CHECK(r.growth_exponent > 0.2);
}

TEST_CASE("arc criterion: G5 fibers over the negative x-axis diverge") {
    // (x, xy + y^3) has three preimages of (-t^2, 0): y = 0, +-t
    ArcPair pair{source_arc(mono(-1, 2), mono(1, 1)), source_arc(mono(-1, 2), mono(-1, 1))};
    auto r = arc_criterion_estimate(parse_map("x, x*y + y^3, y^5, 0"), std::vector<ArcPair>{pair}, kRadii);
    CHECK(r.growth_exponent > 0.2);
}

TEST_CASE("arc criterion preconditions") {
    std::vector<double> few{1e-1, 1e-2, 1e-3};
    CHECK_THROWS_AS(arc_criterion_estimate(smooth(), std::nullopt, few), PreconditionError);
    std::vector<double> narrow{1e-1, 8e-2, 5e-2, 2e-2};
    CHECK_THROWS_AS(arc_criterion_estimate(smooth(), std::nullopt, narrow), PreconditionError);
}

TEST_CASE("RANDOM mode is deterministic in the seed") {
    auto a = arc_criterion_estimate(crosscap(), std::nullopt, kRadii, {32, 11, 16});
    auto b = arc_criterion_estimate(crosscap(), std::nullopt, kRadii, {32, 11, 16});
    CHECK(a.growth_exponent == b.growth_exponent);
    CHECK(a.k_estimate == b.k_estimate);
}

TEST_CASE("numeric outer contact slope matches the symbolic contact order") {
    std::vector<std::pair<ArcGerm, ArcGerm>> pairs;
    auto arc = [](PuiseuxSeries a, PuiseuxSeries b, PuiseuxSeries c, PuiseuxSeries d) {
        return reparametrize_by_distance(ArcGerm{{std::move(a), std::move(b), std::move(c), std::move(d)}, false});
    };
    pairs.push_back({arc(mono(1, 1), {}, mono(1, 2), {}), arc(mono(1, 1), {}, mono(-1, 2), {})});
    pairs.push_back({arc(mono(1, 1), {}, mono(1, 3), {}), arc(mono(1, 1), mono(1, 2), {}, {})});
    pairs.push_back({arc(mono(1, 2), {}, mono(1, 3), {}), arc(mono(1, 2), {}, mono(-1, 3), {})});
    auto f = prenormalize(parse_map("x, x*y + y^3, y^5, 0"));
    auto delta = discriminant(f, polar_curve(f));
    for (std::size_t i = 0; i < delta.size(); ++i)
        for (std::size_t j = i + 1; j < delta.size(); ++j) pairs.push_back({delta[i], delta[j]});
    REQUIRE(pairs.size() >= 4);
    std::vector<double> radii{1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
    for (const auto &[a, b] : pairs) {
        auto symbolic = outer_contact_order(a, b);
        REQUIRE(!symbolic.infinite);
        CHECK(outer_contact_slope(a, b, radii) == doctest::Approx(symbolic.value.get_d()).epsilon(0.1 / symbolic.value.get_d()));
    }
}

TEST_CASE("log-log slope of a power law") {
    std::vector<double> x{1, 2, 4, 8}, y{3, 3 * std::pow(2, 1.5), 3 * std::pow(4, 1.5), 3 * std::pow(8, 1.5)};
    CHECK(log_log_slope(x, y) == doctest::Approx(1.5));
}

}
