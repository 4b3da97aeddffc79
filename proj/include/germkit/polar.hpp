#pragma once

#include "germkit/germ.hpp"
#include "germkit/puiseux.hpp"

#include <optional>
#include <span>
#include <vector>

namespace germkit {

/// Region between two consecutive discriminant arcs with more than one preimage.
struct PolarTriangle {
    std::array<ArcGerm, 2> boundary;
    std::array<std::size_t, 2> boundary_index{}; // into PolarData::delta
    Rational width;                              // outer contact order of the boundary arcs
    std::optional<Rational> height_lower_bound;
    std::optional<double> height_numeric;
    int fiber_count = 0;
    /// Test arc inside the triangle: a ray at this angle, or the midpoint of the boundary arcs.
    bool midpoint_test_arc = false;
    double test_angle = 0;
};

struct PolarData {
    std::vector<PuiseuxBranch> sigma;
    std::vector<ArcGerm> delta;
    std::vector<PolarTriangle> triangles;
    std::vector<std::string> notices;
};

/// Real branches of d(slot 2)/dy = 0 in prenormal source coordinates. Needs odd p.
std::vector<PuiseuxBranch> polar_curve(const PrenormalForm &f);

/// Images (x, slot 2) of the half-branches of sigma, in their own parameter (not normalized).
std::vector<ArcGerm> discriminant_raw(const PrenormalForm &f, const std::vector<PuiseuxBranch> &sigma);
/// Distance-parametrized discriminant arcs, duplicates removed.
std::vector<ArcGerm> discriminant(const PrenormalForm &f, const std::vector<PuiseuxBranch> &sigma);

/// Sectors between angularly sorted delta arcs whose fibers have more than one point.
/// Throws NumericError when the fiber count differs across the sampled radii.
std::vector<PolarTriangle> build_triangles(const PrenormalForm &f, const std::vector<ArcGerm> &delta,
                                           std::vector<std::string> *notices = nullptr);

/// Number of real preimages of v under (x, slot 2) near the origin.
int fiber_count(const PrenormalForm &f, double v1, double v2);

/// Lower bound for the height from the shape (x, xy + P1, Q, R). Throws ShapeError otherwise.
Rational height_lower_bound(const PrenormalForm &f, const PolarTriangle &t);

/// Log-log slope of the smallest distance between fiber points over the triangle's test arc,
/// measured in prenormal coordinates.
double height_numeric(const PrenormalForm &f, const PolarTriangle &t, std::span<const double> radii);

enum class HeightWidthStatus { Pass, Fail, NotApplicable };

struct HeightWidthResult {
    HeightWidthStatus status = HeightWidthStatus::NotApplicable;
    std::optional<std::size_t> triangle; // set on Fail
};

std::string_view to_string(HeightWidthStatus s);

/// FAIL iff some triangle has height_lower_bound > width.
HeightWidthResult height_width_test(const PolarData &data);

/// Sigma, delta, triangles and both height estimates (absent with a notice when inapplicable).
PolarData analyze_polar(const PrenormalForm &f, std::span<const double> height_radii);

} // namespace germkit
