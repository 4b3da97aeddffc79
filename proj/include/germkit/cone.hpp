#pragma once

#include "germkit/germ.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace germkit {

enum class ConeKind { Plane, HalfPlane };

std::string_view to_string(ConeKind kind);

/// Tangent cone of the image germ, in the caller's target coordinates.
struct ConeType {
    ConeKind kind = ConeKind::Plane;
    /// Orthonormal basis of the carrier plane; basis[0] spans the image of the x-axis.
    std::array<Eigen::Vector4d, 2> basis;
    /// Present iff HalfPlane: the boundary line direction.
    std::optional<Eigen::Vector4d> boundary_direction;
    /// Present iff HalfPlane: unit vector in the carrier, orthogonal to the boundary, pointing inside.
    std::optional<Eigen::Vector4d> interior_direction;

    /// Angle (radians) between a unit vector and the nearest direction of the cone.
    double angular_distance(const Eigen::Vector4d &unit) const;
};

ConeType tangent_cone(const PrenormalForm &f);
/// Corank 0 short-circuits to the tangent plane; corank 1 goes through prenormalize.
ConeType tangent_cone(const MapGerm &m, int degree = kDefaultDegree);

/// Source sampling curves s -> (s^a cos(theta), s^b sin(theta)) for each weight (a, b).
using SourceWeights = std::vector<std::pair<int, int>>;

/// Unit secant directions F(p)/|F(p)| over sampled source points with |F(p)| equal to each
/// radius. Sorted lexicographically.
std::vector<Eigen::Vector4d> secant_directions(const MapGerm &m, std::span<const double> radii, int samples_per_radius,
                                               const SourceWeights &weights = {{1, 1}});

} // namespace germkit
