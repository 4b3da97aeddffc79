#pragma once

#include "germkit/germ.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace germkit {

/// Kernel of a projection R^4 -> R^3. Candidates lie in span{e3, e4} of the prenormal
/// coordinates, which is complementary to the tangent plane span{e1, e2}.
struct ProjectionChoice {
    /// Unit kernel vector in the germ's own target coordinates.
    Eigen::Vector4d direction = Eigen::Vector4d::Zero();
    /// Kernel in prenormal coordinates: c3 e3 + c4 e4, exact.
    std::array<Rational, 2> normal_direction;
    /// Angle between the kernel and the tangent plane, radians.
    double transversality = 0;
    /// Least sine of the angle between sheets at detected double points; absent if none were found.
    std::optional<double> stability_evidence;
    bool zero_component = false;
    int trials = 0;
};

/// pre: tangent cone is a plane. Throws NumericError when every trial fails.
ProjectionChoice choose_stable_projection(const PrenormalForm &f, int trials = 16, std::uint64_t seed = 1);

/// Exact divided difference (P(x, u) - P(x, y)) / (u - y) in (x, y, u).
Poly3 divided_difference(const Poly2 &p);

struct DoublePointSystem {
    /// (x, P, Q): projected map; P carries the xy term when one exists.
    std::array<Poly2, 3> projected;
    Poly3 dp, dq;
    AxisOrder p, q;
    /// q - 1 (or -1 when q is infinite)
    int initial_form_degree = -1;
};

DoublePointSystem double_point_system(const Poly2 &P, const Poly2 &Q);
DoublePointSystem double_point_system(const PrenormalForm &f, const ProjectionChoice &proj);

/// H_{k}(y, u) = y^k + y^(k-1) u + ... + u^k.
Poly2 complete_homogeneous(int k);

/// Lower bound for |h| on the unit circle when h is homogeneous of one sign there: 1024
/// samples padded by the Lipschitz constant. Absent when definiteness is not established.
std::optional<double> definite_on_circle(const Poly2 &homogeneous);

struct NoDoublePointCertificate {
    bool certified = false;
    /// Solutions of the system with |(y, u)| < radius satisfy y = u = 0.
    double radius = 0;
    /// Reduced equation after eliminating x, and the degree and bound of its initial form.
    Poly2 reduced;
    int initial_form_degree = -1;
    double initial_form_min = 0;
    std::string reason;
};

/// Eliminates x from dp = 0 and bounds the reduced equation against its initial form.
/// The tail bound uses the terms through the series degree used for elimination.
NoDoublePointCertificate certify_no_double_points(const DoublePointSystem &sys);

struct DoublePointSearch {
    std::vector<std::array<double, 3>> points;
    int starts = 0;
    int nonconverged = 0;
};

/// Damped Newton from dense starts on the spheres |(x, y, u)| = ball, ball/2, ball/4.
/// Keeps y != u, one representative per swap class (y > u).
DoublePointSearch find_double_points(const DoublePointSystem &sys, double ball, std::uint64_t seed = 1);

/// Sine of the angle between the two sheets of (x, P, Q) meeting at a double point.
double transversality_margin(const DoublePointSystem &sys, const std::array<double, 3> &point);

struct Link {
    std::vector<Eigen::Vector4d> points;
    std::vector<std::array<double, 2>> source;
    double epsilon = 0;
    /// Largest number of sphere crossings met along one source ray.
    int components = 1;
    double max_sphere_error = 0;
    std::vector<std::string> warnings;
};

/// Traces {|F| = epsilon} by radial bisection in the source. Throws PreconditionError when
/// the Jacobian drops rank on the sampled curve.
Link extract_link(const MapGerm &m, double epsilon, int resolution);

/// Laurent polynomial in A with integer coefficients; zero coefficients are not stored.
struct Laurent {
    std::map<int, long long> terms;

    static Laurent monomial(int e, long long c = 1);
    Laurent &operator+=(const Laurent &o);
    friend Laurent operator+(Laurent a, const Laurent &b) { return a += b; }
    friend Laurent operator*(const Laurent &a, const Laurent &b);
    bool operator==(const Laurent &o) const = default;
    /// Descending exponents, e.g. "-A^-16 + A^-12 + A^-4".
    std::string to_string() const;
};

/// Signed Gauss code: +k for passing over crossing k, -k for under (k = 1..n).
struct GaussCode {
    std::vector<int> sequence;
    /// signs[k - 1] in {+1, -1}
    std::vector<int> signs;

    int crossings() const { return static_cast<int>(signs.size()); }
    int writhe() const;
};

/// Kauffman bracket <D> by state sum; throws PreconditionError above 16 crossings.
Laurent kauffman_bracket(const GaussCode &code);
/// (-A^3)^(-writhe) <D>; the unknot gives 1.
Laurent normalized_bracket(const GaussCode &code);

GaussCode add_r1(const GaussCode &code, std::size_t position, bool over_first, int sign);
/// Inserts crossings a, b: "a b" at position i over, and "a b" (or "b a") at position j under.
GaussCode add_r2(const GaussCode &code, std::size_t i, std::size_t j, bool reversed, int sign_a);
std::optional<GaussCode> remove_r1(const GaussCode &code);
std::optional<GaussCode> remove_r2(const GaussCode &code);
/// Applies removals until none applies.
GaussCode reduce(GaussCode code);

struct DiagramCrossing {
    Eigen::Vector2d point;
    std::size_t over_segment = 0, under_segment = 0;
    int sign = 1;
};

struct KnotDiagram {
    /// Closed planar polyline (stereographic image of the radially projected link).
    std::vector<Eigen::Vector2d> plane;
    std::vector<DiagramCrossing> crossings;
    GaussCode code;
    Eigen::Vector4d direction = Eigen::Vector4d::Zero();
};

/// Projects along `direction` onto S^2 (height = component along it), then stereographically
/// to the plane. Retries with a jittered projection up to 8 times on non-generic crossings.
KnotDiagram link_diagram(const Link &link, const Eigen::Vector4d &direction, std::uint64_t seed = 1);

void write_svg(const KnotDiagram &diagram, std::ostream &out);

enum class KnotVerdict { TrivialCertified, TrivialNumeric, Nontrivial, Unknown };
std::string_view to_string(KnotVerdict v);

struct KnotReport {
    KnotVerdict verdict = KnotVerdict::Unknown;
    std::optional<ProjectionChoice> projection;
    std::optional<NoDoublePointCertificate> certificate;
    std::vector<std::array<double, 3>> double_points;
    /// Present when the diagram path ran.
    std::optional<KnotDiagram> diagram;
    GaussCode reduced;
    std::optional<Laurent> bracket;
    std::optional<KnotVerdict> numeric_verdict;
    std::vector<std::string> warnings;
};

/// Verdict of the diagram path alone.
KnotVerdict diagram_verdict(const GaussCode &reduced, const std::optional<Laurent> &bracket);

/// Reduces, evaluates and judges a diagram.
KnotReport diagram_and_invariant(const KnotDiagram &diagram);

struct KnotOptions {
    double epsilon = 0.1;
    int resolution = 512;
    std::uint64_t seed = 1;
    bool force_numeric = false;
    int degree = kDefaultDegree;
    double ball = 0.05;
    /// Projections tried on the diagram path; the fewest reduced crossings wins.
    int directions = 8;
};

/// Certified route for corank 1 germs, diagram route otherwise or when forced.
KnotReport knot_report(const MapGerm &m, const KnotOptions &options = {});

} // namespace germkit
