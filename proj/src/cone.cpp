#include "germkit/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace germkit {

std::string_view to_string(ConeKind kind) { return kind == ConeKind::Plane ? "PLANE" : "HALF_PLANE"; }

double ConeType::angular_distance(const Eigen::Vector4d &unit) const {
    const double c0 = unit.dot(basis[0]), c1 = unit.dot(basis[1]);
    const double in_plane = std::min(1.0, std::hypot(c0, c1));
    const double to_plane = std::acos(in_plane);
    if (kind == ConeKind::Plane || unit.dot(*interior_direction) >= 0) return to_plane;
    return std::acos(std::min(1.0, std::abs(c0)));
}

namespace {

Eigen::Vector4d column_of_inverse(const RationalMatrix &inverse, std::size_t col) {
    Eigen::Vector4d v;
    for (std::size_t i = 0; i < 4; ++i) v[static_cast<Eigen::Index>(i)] = inverse(i, col).get_d();
    return v;
}

std::array<Eigen::Vector4d, 2> orthonormalize(const Eigen::Vector4d &u1, const Eigen::Vector4d &u2) {
    Eigen::Vector4d b0 = u1.normalized();
    Eigen::Vector4d b1 = (u2 - u2.dot(b0) * b0).normalized();
    return {b0, b1};
}

} // namespace

ConeType tangent_cone(const PrenormalForm &f) {
    const RationalMatrix inv = f.target_linear().inverse();
    ConeType cone;
    cone.basis = orthonormalize(column_of_inverse(inv, 0), column_of_inverse(inv, 1));
    if (f.p() % 2 == 0) {
        cone.kind = ConeKind::HalfPlane;
        cone.boundary_direction = cone.basis[0];
        // tangent vectors (b, a) with y^p > 0: the inside is the sign of the leading y^p coefficient
        const int sign = f.leading_y_coeff(1) > 0 ? 1 : -1;
        cone.interior_direction = sign * cone.basis[1];
    }
    return cone;
}

ConeType tangent_cone(const MapGerm &m, int degree) {
    const int cr = corank(m);
    if (cr == 0) {
        RationalMatrix j = linear_part(m);
        Eigen::Vector4d c0, c1;
        for (std::size_t i = 0; i < 4; ++i) {
            c0[static_cast<Eigen::Index>(i)] = j(i, 0).get_d();
            c1[static_cast<Eigen::Index>(i)] = j(i, 1).get_d();
        }
        ConeType cone;
        cone.basis = orthonormalize(c0, c1);
        return cone;
    }
    if (cr == 2) throw PreconditionError("tangent cone of a corank-2 germ is not supported");
    return tangent_cone(prenormalize(m, degree));
}

std::vector<Eigen::Vector4d> secant_directions(const MapGerm &m, std::span<const double> radii, int samples_per_radius,
                                               const SourceWeights &weights) {
    std::vector<Eigen::Vector4d> out;
    auto image = [&](double x, double y) {
        auto z = m.eval(x, y);
        return Eigen::Vector4d(z[0], z[1], z[2], z[3]);
    };
    for (double rho : radii) {
        for (const auto &[a, b] : weights) {
            for (int k = 0; k < samples_per_radius; ++k) {
                const double theta = 2 * std::numbers::pi * (k + 0.5) / samples_per_radius;
                const double c = std::cos(theta), s = std::sin(theta);
                auto point = [&](double t) { return image(std::pow(t, a) * c, std::pow(t, b) * s); };
                // bracket the first crossing of |F| = rho along the curve
                double lo = 0, hi = 1e-12;
                while (point(hi).norm() < rho && hi < 16) {
                    lo = hi;
                    hi *= 1.25;
                }
                if (point(hi).norm() < rho) continue;
                for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
                    double mid = 0.5 * (lo + hi);
                    (point(mid).norm() < rho ? lo : hi) = mid;
                }
                Eigen::Vector4d z = point(hi);
                if (z.norm() > 0) out.push_back(z.normalized());
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Eigen::Vector4d &u, const Eigen::Vector4d &v) {
        return std::lexicographical_compare(u.data(), u.data() + 4, v.data(), v.data() + 4);
    });
    return out;
}

} // namespace germkit
