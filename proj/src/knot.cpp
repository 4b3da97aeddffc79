#include "germkit/knot.hpp"

#include "germkit/cone.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace germkit {

Poly3 divided_difference(const Poly2 &p) {
    Poly3 out;
    for (const auto &[e, c] : p.terms())
        for (int i = 0; i < e[1]; ++i) out.add_term({e[0], i, e[1] - 1 - i}, c);
    // (u - y) * out == p(x, u) - p(x, y)
    Poly3 x = Poly3::variable(0), y = Poly3::variable(1), u = Poly3::variable(2);
    if (!((u - y) * out == p.compose<3>({x, u}) - p.compose<3>({x, y})))
        throw Error("divided difference is not exact");
    return out;
}

Poly2 complete_homogeneous(int k) {
    Poly2 h;
    for (int i = 0; i <= k; ++i) h.add_term({i, k - i}, 1);
    return h;
}

DoublePointSystem double_point_system(const Poly2 &P, const Poly2 &Q) {
    DoublePointSystem sys;
    sys.projected = {Poly2::variable(0), P, Q};
    sys.dp = divided_difference(P);
    sys.dq = divided_difference(Q);
    sys.p = order_along_axis(P, Axis::Y);
    sys.q = order_along_axis(Q, Axis::Y);
    sys.initial_form_degree = sys.q.infinite ? -1 : sys.q.value - 1;
    return sys;
}

DoublePointSystem double_point_system(const PrenormalForm &f, const ProjectionChoice &proj) {
    const auto &[c3, c4] = proj.normal_direction;
    // the coordinate c4 z3 - c3 z4 vanishes on the kernel
    Poly2 w = f.series[2] * c4 - f.series[3] * c3;
    const Poly2 &f1 = f.series[1];
    bool f1_xy = f1.coeff({1, 1}) != 0, w_xy = w.coeff({1, 1}) != 0;
    if (w_xy && !f1_xy) return double_point_system(w, f1);
    return double_point_system(f1, w);
}

std::optional<double> definite_on_circle(const Poly2 &h) {
    if (h.is_zero()) return std::nullopt;
    const int k = h.degree();
    double l1 = 0;
    for (const auto &[e, c] : h.terms()) l1 += std::abs(c.get_d());
    constexpr int samples = 1024;
    const double pad = k * l1 * std::numbers::pi / samples;
    double lo = INFINITY, hi = -INFINITY;
    for (int i = 0; i < samples; ++i) {
        double th = 2 * std::numbers::pi * i / samples;
        double v = h.eval<double>({std::cos(th), std::sin(th)});
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double bound = lo > 0 ? lo - pad : hi < 0 ? -hi - pad : -1;
    if (bound <= 0) return std::nullopt;
    return bound;
}

NoDoublePointCertificate certify_no_double_points(const DoublePointSystem &sys) {
    NoDoublePointCertificate cert;
    const int k = sys.initial_form_degree;
    if (k < 0) {
        cert.reason = "Q vanishes along the y-axis";
        return cert;
    }
    if (k % 2 != 0) {
        cert.reason = "q - 1 = " + std::to_string(k) + " is odd";
        return cert;
    }
    if (!definite_on_circle(complete_homogeneous(k))) {
        cert.reason = "H_" + std::to_string(k) + " not shown definite";
        return cert;
    }
    const Rational pivot = sys.dp.coeff({1, 0, 0});
    if (pivot == 0) {
        cert.reason = "dP has no linear x term";
        return cert;
    }

    // x = phi(y, u) on dP = 0, one degree per sweep
    const int degree = 2 * k + 4;
    Poly3 rest = sys.dp - Poly3::variable(0) * pivot;
    Poly2 y = Poly2::variable(0), u = Poly2::variable(1), phi;
    for (int sweep = 0; sweep <= degree; ++sweep)
        phi = (rest.compose<2>({phi, y, u}, degree) * (Rational(-1) / pivot)).truncated(degree);
    cert.reduced = sys.dq.compose<2>({phi, y, u}, degree);
    if (cert.reduced.is_zero()) {
        cert.reason = "reduced equation vanishes through degree " + std::to_string(degree);
        return cert;
    }
    const int low = cert.reduced.low_degree();
    cert.initial_form_degree = low;
    auto m = definite_on_circle(cert.reduced.homogeneous_part(low));
    if (!m) {
        cert.reason = "initial form of degree " + std::to_string(low) + " is not definite";
        return cert;
    }
    cert.initial_form_min = *m;
    std::vector<double> tail;
    for (int j = low + 1; j <= degree; ++j) {
        double n = 0;
        const Poly2 part = cert.reduced.homogeneous_part(j);
        for (const auto &[e, c] : part.terms()) n += std::abs(c.get_d());
        tail.push_back(n);
    }
    auto tail_at = [&](double rho) {
        double s = 0, pw = 1;
        for (double n : tail) s += n * (pw *= rho);
        return s;
    };
    double lo = 0, hi = 1;
    if (tail_at(1) <= 0.5 * *m) {
        lo = 1;
    } else {
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            (tail_at(mid) <= 0.5 * *m ? lo : hi) = mid;
        }
    }
    if (!(lo > 0)) {
        cert.reason = "no ball radius found";
        return cert;
    }
    cert.radius = lo;
    cert.certified = true;
    return cert;
}

namespace {

struct CompiledPoly3 {
    struct Term {
        double c;
        std::array<int, 3> e;
    };
    std::vector<Term> terms;

    explicit CompiledPoly3(const Poly3 &p) {
        for (const auto &[e, c] : p.terms()) terms.push_back({c.get_d(), e});
    }
    /// Sum of |c| r^deg: the size of the polynomial on the sphere of radius r.
    double scale(double r) const {
        double s = 0;
        for (const auto &t : terms) s += std::abs(t.c) * std::pow(r, t.e[0] + t.e[1] + t.e[2]);
        return s > 0 ? s : 1;
    }
    double value(const Eigen::Vector3d &v, Eigen::Vector3d *grad) const {
        double s = 0;
        if (grad) grad->setZero();
        for (const auto &t : terms) {
            double m = t.c;
            std::array<double, 3> pw{};
            for (int i = 0; i < 3; ++i) {
                pw[static_cast<std::size_t>(i)] = std::pow(v[i], t.e[static_cast<std::size_t>(i)]);
                m *= pw[static_cast<std::size_t>(i)];
            }
            s += m;
            if (grad)
                for (int i = 0; i < 3; ++i) {
                    int ei = t.e[static_cast<std::size_t>(i)];
                    if (ei == 0) continue;
                    double d = t.c * ei * std::pow(v[i], ei - 1);
                    for (int j = 0; j < 3; ++j)
                        if (j != i) d *= pw[static_cast<std::size_t>(j)];
                    (*grad)[i] += d;
                }
        }
        return s;
    }
};

} // namespace

DoublePointSearch find_double_points(const DoublePointSystem &sys, double ball, std::uint64_t seed) {
    if (!(ball > 0)) throw PreconditionError("ball radius must be positive");
    CompiledPoly3 dp(sys.dp), dq(sys.dq);
    DoublePointSearch out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> shift(0, 1);
    constexpr int per_sphere = 400;
    for (double r : {ball, ball / 2, ball / 4}) {
        const double offset = shift(rng);
        const double s1 = dp.scale(r), s2 = dq.scale(r);
        for (int k = 0; k < per_sphere; ++k) {
            // Fibonacci sphere
            double zc = 1 - 2 * (k + 0.5) / per_sphere;
            double rad = std::sqrt(1 - zc * zc);
            double ph = 2 * std::numbers::pi * (k * 0.6180339887498949 + offset);
            Eigen::Vector3d v(r * rad * std::cos(ph), r * rad * std::sin(ph), r * zc);
            ++out.starts;
            auto residual = [&](const Eigen::Vector3d &w, Eigen::Matrix3d *jac) {
                Eigen::Vector3d g1, g2;
                Eigen::Vector3d f(dp.value(w, jac ? &g1 : nullptr) / s1, dq.value(w, jac ? &g2 : nullptr) / s2, (w.squaredNorm() - r * r) / (r * r));
                if (jac) {
                    jac->row(0) = g1.transpose() / s1;
                    jac->row(1) = g2.transpose() / s2;
                    jac->row(2) = 2 * w.transpose() / (r * r);
                }
                return f;
            };
            bool converged = false;
            for (int it = 0; it < 60; ++it) {
                Eigen::Matrix3d j;
                Eigen::Vector3d f = residual(v, &j);
                double fn = f.norm();
                if (fn < 1e-13) {
                    converged = true;
                    break;
                }
                Eigen::Vector3d step = j.colPivHouseholderQr().solve(-f);
                if (!step.allFinite()) break;
                double lambda = 1;
                bool moved = false;
                for (int bt = 0; bt < 30; ++bt, lambda *= 0.5) {
                    Eigen::Vector3d trial = v + lambda * step;
                    if (residual(trial, nullptr).norm() < fn) {
                        v = trial;
                        moved = true;
                        break;
                    }
                }
                if (!moved) break;
            }
            if (!converged) {
                ++out.nonconverged;
                continue;
            }
            if (std::abs(v[1] - v[2]) < 1e-7 * r) continue;
            std::array<double, 3> pt{v[0], std::max(v[1], v[2]), std::min(v[1], v[2])};
            bool dup = false;
            for (const auto &q : out.points)
                if (std::hypot(q[0] - pt[0], q[1] - pt[1], q[2] - pt[2]) < 1e-7 * r) dup = true;
            if (!dup) out.points.push_back(pt);
        }
    }
    return out;
}

double transversality_margin(const DoublePointSystem &sys, const std::array<double, 3> &point) {
    auto normal = [&](double x, double y) {
        Eigen::Vector3d gx(1, 0, 0), gy(0, 0, 0);
        for (std::size_t i = 1; i < 3; ++i) {
            gx[static_cast<int>(i)] = sys.projected[i].derivative(0).eval<double>({x, y});
            gy[static_cast<int>(i)] = sys.projected[i].derivative(1).eval<double>({x, y});
        }
        return gx.cross(gy);
    };
    Eigen::Vector3d n1 = normal(point[0], point[1]), n2 = normal(point[0], point[2]);
    return n1.cross(n2).norm() / (n1.norm() * n2.norm());
}

ProjectionChoice choose_stable_projection(const PrenormalForm &f, int trials, std::uint64_t seed) {
    if (f.p() % 2 == 0) throw PreconditionError("tangent cone is a half-plane");
    if (trials < 1) throw PreconditionError("at least one trial is needed");
    const ConeType cone = tangent_cone(f);
    const RationalMatrix back = f.target_linear().inverse();

    // drop the slot that is neither the xy slot nor the lowest remaining order
    std::size_t drop = 3;
    if (f.shear_slot == 3u) drop = 2;
    std::vector<std::array<Rational, 2>> candidates{drop == 3 ? std::array<Rational, 2>{0, 1} : std::array<Rational, 2>{1, 0}};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> pick(-60, 60);
    while (static_cast<int>(candidates.size()) < trials) {
        Rational t = make_rational(pick(rng), 61);
        Rational den = 1 + t * t;
        candidates.push_back({(1 - t * t) / den, 2 * t / den});
    }

    for (std::size_t trial = 0; trial < candidates.size(); ++trial) {
        ProjectionChoice choice;
        choice.normal_direction = candidates[trial];
        choice.trials = static_cast<int>(trial) + 1;
        Eigen::Vector4d d;
        for (int i = 0; i < 4; ++i)
            d[i] = Rational(back(static_cast<std::size_t>(i), 2) * candidates[trial][0] + back(static_cast<std::size_t>(i), 3) * candidates[trial][1]).get_d();
        choice.direction = d.normalized();
        double in_plane = std::hypot(choice.direction.dot(cone.basis[0]), choice.direction.dot(cone.basis[1]));
        choice.transversality = std::acos(std::min(1.0, in_plane));
        if (choice.transversality <= 1e-3) continue;
        choice.zero_component = trial == 0 && f.series[drop].is_zero();

        auto sys = double_point_system(f, choice);
        auto found = find_double_points(sys, 0.05, seed + trial);
        for (const auto &pt : found.points) {
            double margin = transversality_margin(sys, pt);
            choice.stability_evidence = std::min(choice.stability_evidence.value_or(1.0), margin);
        }
        if (choice.zero_component || choice.stability_evidence.value_or(1.0) > 1e-3) return choice;
    }
    throw NumericError("no stable projection found in " + std::to_string(trials) + " trials");
}

} // namespace germkit
