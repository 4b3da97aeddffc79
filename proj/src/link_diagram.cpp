#include "germkit/knot.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace germkit {

namespace {

Eigen::Vector4d image_of(const MapGerm &m, double x, double y) {
    auto z = m.eval(x, y);
    return {z[0], z[1], z[2], z[3]};
}

} // namespace

Link extract_link(const MapGerm &m, double epsilon, int resolution) {
    if (resolution < 16) throw PreconditionError("link resolution must be at least 16");
    if (!(epsilon > 0)) throw PreconditionError("sphere radius must be positive");
    Link link;
    link.epsilon = epsilon;
    for (int k = 0; k < resolution; ++k) {
        const double th = 2 * std::numbers::pi * k / resolution;
        const double c = std::cos(th), s = std::sin(th);
        auto excess = [&](double r) { return image_of(m, r * c, r * s).norm() - epsilon; };
        // march outward, counting sphere crossings up to three times the first one
        double lo = 0, hi = 1e-9, first = -1;
        int crossings = 0;
        bool inside = true;
        for (double r = 1e-9; r < 16; r *= 1.02) {
            bool now_inside = excess(r) < 0;
            if (now_inside != inside) {
                ++crossings;
                if (first < 0) {
                    first = r;
                    lo = r / 1.02;
                    hi = r;
                }
            }
            inside = now_inside;
            if (first > 0 && r > 3 * first) break;
        }
        if (first < 0) throw PreconditionError("the surface does not reach the sphere along a source ray");
        link.components = std::max(link.components, crossings);
        for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
            double mid = 0.5 * (lo + hi);
            (excess(mid) < 0 ? lo : hi) = mid;
        }
        const double r = hi;
        link.source.push_back({r * c, r * s});
        link.points.push_back(image_of(m, r * c, r * s));
        link.max_sphere_error = std::max(link.max_sphere_error, std::abs(link.points.back().norm() - epsilon));

        auto jac = m.jacobian(r * c, r * s);
        Eigen::Matrix<double, 4, 2> j;
        for (int i = 0; i < 4; ++i) {
            j(i, 0) = jac[static_cast<std::size_t>(2 * i)];
            j(i, 1) = jac[static_cast<std::size_t>(2 * i + 1)];
        }
        Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> svd(j);
        if (svd.singularValues()[1] <= 1e-10 * svd.singularValues()[0])
            throw PreconditionError("Jacobian drops rank on the link; the singularity may not be isolated");
    }
    if (link.components > 1)
        link.warnings.push_back("a source ray meets the sphere " + std::to_string(link.components) + " times; the link may have several components");
    const std::size_t n = link.points.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 2; b < n; ++b) {
            if (a == 0 && b == n - 1) continue;
            if ((link.points[a] - link.points[b]).norm() < 1e-9 * epsilon) {
                link.warnings.push_back("link is not embedded: two source points share an image");
                return link;
            }
        }
    return link;
}

Laurent Laurent::monomial(int e, long long c) {
    Laurent l;
    if (c != 0) l.terms[e] = c;
    return l;
}

Laurent &Laurent::operator+=(const Laurent &o) {
    for (auto [e, c] : o.terms)
        if ((terms[e] += c) == 0) terms.erase(e);
    return *this;
}

Laurent operator*(const Laurent &a, const Laurent &b) {
    Laurent r;
    for (auto [ea, ca] : a.terms)
        for (auto [eb, cb] : b.terms) r += Laurent::monomial(ea + eb, ca * cb);
    return r;
}

std::string Laurent::to_string() const {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        auto [e, c] = *it;
        long long mag = c < 0 ? -c : c;
        out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        first = false;
        if (e == 0) {
            out += std::to_string(mag);
            continue;
        }
        if (mag != 1) out += std::to_string(mag) + "*";
        out += e == 1 ? std::string("A") : "A^" + std::to_string(e);
    }
    return out;
}

int GaussCode::writhe() const { return std::accumulate(signs.begin(), signs.end(), 0); }

namespace {

/// over and under positions of each crossing
std::vector<std::array<std::size_t, 2>> positions(const GaussCode &code) {
    const std::size_t n = code.signs.size();
    if (code.sequence.size() != 2 * n) throw PreconditionError("Gauss code length must be twice the crossing count");
    std::vector<std::array<std::size_t, 2>> pos(n, {SIZE_MAX, SIZE_MAX});
    for (std::size_t i = 0; i < code.sequence.size(); ++i) {
        int v = code.sequence[i];
        std::size_t k = static_cast<std::size_t>(std::abs(v));
        if (k == 0 || k > n) throw PreconditionError("Gauss code label out of range");
        auto &slot = pos[k - 1][v > 0 ? 0 : 1];
        if (slot != SIZE_MAX) throw PreconditionError("crossing passed twice on the same level");
        slot = i;
    }
    for (int s : code.signs)
        if (s != 1 && s != -1) throw PreconditionError("crossing signs must be +-1");
    return pos;
}

/// Relabels crossings 1..n in order of first appearance after dropping `removed` labels.
GaussCode without(const GaussCode &code, const std::vector<int> &removed) {
    GaussCode out;
    std::vector<int> label(code.signs.size() + 1, 0);
    for (int v : code.sequence) {
        int k = std::abs(v);
        if (std::find(removed.begin(), removed.end(), k) != removed.end()) continue;
        if (label[static_cast<std::size_t>(k)] == 0) {
            out.signs.push_back(code.signs[static_cast<std::size_t>(k - 1)]);
            label[static_cast<std::size_t>(k)] = static_cast<int>(out.signs.size());
        }
        out.sequence.push_back(v > 0 ? label[static_cast<std::size_t>(k)] : -label[static_cast<std::size_t>(k)]);
    }
    return out;
}

} // namespace

Laurent kauffman_bracket(const GaussCode &code) {
    auto pos = positions(code);
    const std::size_t n = pos.size();
    if (n == 0) return Laurent::monomial(0);
    if (n > 16) throw PreconditionError("bracket state sum is capped at 16 crossings");
    const std::size_t edges = 2 * n;
    // X[a, b, c, d] counterclockwise from the incoming under edge; edge e leaves position e
    std::vector<std::array<std::size_t, 4>> pd(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t i = pos[k][1], j = pos[k][0];
        std::size_t in_u = (i + edges - 1) % edges, in_o = (j + edges - 1) % edges;
        pd[k] = code.signs[k] > 0 ? std::array<std::size_t, 4>{in_u, j, i, in_o} : std::array<std::size_t, 4>{in_u, in_o, i, j};
    }
    // counts[a_minus_b + n][loops]
    std::vector<std::vector<long long>> counts(2 * n + 1, std::vector<long long>(edges + 1, 0));
    std::vector<std::size_t> parent(edges);
    for (std::uint32_t state = 0; state < (1u << n); ++state) {
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
        int balance = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const auto &x = pd[k];
            if (state & (1u << k)) {
                unite(x[0], x[1]);
                unite(x[2], x[3]);
                ++balance;
            } else {
                unite(x[0], x[3]);
                unite(x[1], x[2]);
                --balance;
            }
        }
        std::size_t loops = 0;
        for (std::size_t e = 0; e < edges; ++e)
            if (find(e) == e) ++loops;
        ++counts[static_cast<std::size_t>(balance + static_cast<int>(n))][loops];
    }
    const Laurent d = Laurent::monomial(2, -1) + Laurent::monomial(-2, -1);
    std::vector<Laurent> dpow{Laurent::monomial(0)};
    for (std::size_t l = 1; l <= edges; ++l) dpow.push_back(dpow.back() * d);
    Laurent out;
    for (std::size_t b = 0; b < counts.size(); ++b)
        for (std::size_t l = 1; l <= edges; ++l)
            if (counts[b][l] != 0) out += Laurent::monomial(static_cast<int>(b) - static_cast<int>(n), counts[b][l]) * dpow[l - 1];
    return out;
}

Laurent normalized_bracket(const GaussCode &code) {
    const int w = code.writhe();
    return Laurent::monomial(-3 * w, w % 2 == 0 ? 1 : -1) * kauffman_bracket(code);
}

GaussCode add_r1(const GaussCode &code, std::size_t position, bool over_first, int sign) {
    positions(code);
    GaussCode out = code;
    int k = code.crossings() + 1;
    position = std::min(position, out.sequence.size());
    out.sequence.insert(out.sequence.begin() + static_cast<long>(position), {over_first ? k : -k, over_first ? -k : k});
    out.signs.push_back(sign);
    return out;
}

GaussCode add_r2(const GaussCode &code, std::size_t i, std::size_t j, bool reversed, int sign_a) {
    positions(code);
    if (i == j) throw PreconditionError("R2 strands must be inserted at distinct positions");
    GaussCode out = code;
    int a = code.crossings() + 1, b = a + 1;
    const std::size_t len = out.sequence.size();
    i = std::min(i, len);
    j = std::min(j, len);
    std::vector<int> over{a, b}, under = reversed ? std::vector<int>{-b, -a} : std::vector<int>{-a, -b};
    // insert the later position first so the earlier index stays valid
    if (i > j) {
        out.sequence.insert(out.sequence.begin() + static_cast<long>(i), over.begin(), over.end());
        out.sequence.insert(out.sequence.begin() + static_cast<long>(j), under.begin(), under.end());
    } else {
        out.sequence.insert(out.sequence.begin() + static_cast<long>(j), under.begin(), under.end());
        out.sequence.insert(out.sequence.begin() + static_cast<long>(i), over.begin(), over.end());
    }
    out.signs.push_back(sign_a);
    out.signs.push_back(-sign_a);
    return out;
}

std::optional<GaussCode> remove_r1(const GaussCode &code) {
    positions(code);
    const std::size_t len = code.sequence.size();
    for (std::size_t i = 0; i < len; ++i)
        if (std::abs(code.sequence[i]) == std::abs(code.sequence[(i + 1) % len])) return without(code, {std::abs(code.sequence[i])});
    return std::nullopt;
}

std::optional<GaussCode> remove_r2(const GaussCode &code) {
    positions(code);
    const std::size_t len = code.sequence.size();
    for (std::size_t i = 0; i < len; ++i) {
        int s = code.sequence[i], t = code.sequence[(i + 1) % len];
        if (s <= 0 || t <= 0 || s == t) continue;
        if (code.signs[static_cast<std::size_t>(s - 1)] != -code.signs[static_cast<std::size_t>(t - 1)]) continue;
        for (std::size_t j = 0; j < len; ++j) {
            int u = code.sequence[j], v = code.sequence[(j + 1) % len];
            if ((u == -s && v == -t) || (u == -t && v == -s)) return without(code, {s, t});
        }
    }
    return std::nullopt;
}

GaussCode reduce(GaussCode code) {
    for (;;) {
        if (auto r = remove_r1(code)) {
            code = std::move(*r);
            continue;
        }
        if (auto r = remove_r2(code)) {
            code = std::move(*r);
            continue;
        }
        return code;
    }
}

namespace {

struct Attempt {
    KnotDiagram diagram;
    std::string failure;
};

Attempt try_diagram(const Link &link, const Eigen::Vector4d &direction, std::uint64_t seed) {
    Attempt out;
    const Eigen::Vector4d d = direction.normalized();
    Eigen::HouseholderQR<Eigen::Vector4d> qr(d);
    Eigen::Matrix4d q = qr.householderQ();
    Eigen::Matrix<double, 4, 3> basis = q.rightCols<3>();
    const std::size_t n = link.points.size();
    std::vector<Eigen::Vector3d> sphere(n);
    std::vector<double> height(n);
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::Vector3d w = basis.transpose() * link.points[i];
        if (w.norm() < 1e-6 * link.points[i].norm()) {
            out.failure = "link passes through the projection pole";
            return out;
        }
        sphere[i] = w.normalized();
        height[i] = d.dot(link.points[i]);
    }

    // stereographic pole: the candidate farthest from the curve
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0, 1);
    const double spin = unit(rng);
    Eigen::Vector3d pole(0, 0, 1);
    double best = -1;
    for (int k = 0; k < 128; ++k) {
        double zc = 1 - 2 * (k + 0.5) / 128;
        double rad = std::sqrt(1 - zc * zc), ph = 2 * std::numbers::pi * (k * 0.6180339887498949 + spin);
        Eigen::Vector3d c(rad * std::cos(ph), rad * std::sin(ph), zc);
        double nearest = INFINITY;
        for (const auto &s : sphere) nearest = std::min(nearest, (s - c).norm());
        if (nearest > best) {
            best = nearest;
            pole = c;
        }
    }
    Eigen::Vector3d e1 = pole.unitOrthogonal(), e2 = pole.cross(e1);
    out.diagram.direction = d;
    out.diagram.plane.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double den = 1 - sphere[i].dot(pole);
        out.diagram.plane[i] = Eigen::Vector2d(sphere[i].dot(e1), sphere[i].dot(e2)) / den;
    }

    const auto &p = out.diagram.plane;
    struct Pass {
        double at;
        std::size_t crossing;
        bool over;
    };
    std::vector<Pass> passes;
    auto cross2 = [](const Eigen::Vector2d &a, const Eigen::Vector2d &b) { return a.x() * b.y() - a.y() * b.x(); };
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector2d a0 = p[i], a1 = p[(i + 1) % n], da = a1 - a0;
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            const Eigen::Vector2d b0 = p[j], b1 = p[(j + 1) % n], db = b1 - b0;
            if (std::max(a0.x(), a1.x()) < std::min(b0.x(), b1.x()) || std::max(b0.x(), b1.x()) < std::min(a0.x(), a1.x()) ||
                std::max(a0.y(), a1.y()) < std::min(b0.y(), b1.y()) || std::max(b0.y(), b1.y()) < std::min(a0.y(), a1.y()))
                continue;
            double den = cross2(da, db);
            if (std::abs(den) < 1e-300) continue;
            double ta = cross2(b0 - a0, db) / den, tb = cross2(b0 - a0, da) / den;
            if (ta < -1e-12 || ta > 1 + 1e-12 || tb < -1e-12 || tb > 1 + 1e-12) continue;
            if (ta < 1e-9 || ta > 1 - 1e-9 || tb < 1e-9 || tb > 1 - 1e-9) {
                out.failure = "crossing at a polyline vertex";
                return out;
            }
            if (std::abs(den) < 1e-3 * da.norm() * db.norm()) {
                out.failure = "tangential crossing";
                return out;
            }
            double ha = height[i] + ta * (height[(i + 1) % n] - height[i]);
            double hb = height[j] + tb * (height[(j + 1) % n] - height[j]);
            if (std::abs(ha - hb) < 1e-9 * link.epsilon) {
                out.failure = "double point of the projected link";
                return out;
            }
            DiagramCrossing c;
            c.point = a0 + ta * da;
            bool a_over = ha > hb;
            c.over_segment = a_over ? i : j;
            c.under_segment = a_over ? j : i;
            c.sign = cross2(a_over ? da : db, a_over ? db : da) > 0 ? 1 : -1;
            const std::size_t id = out.diagram.crossings.size();
            out.diagram.crossings.push_back(c);
            passes.push_back({static_cast<double>(i) + ta, id, a_over});
            passes.push_back({static_cast<double>(j) + tb, id, !a_over});
        }
    }
    std::sort(passes.begin(), passes.end(), [](const Pass &a, const Pass &b) { return a.at < b.at; });
    // number crossings by first appearance
    std::vector<int> label(out.diagram.crossings.size(), 0);
    int next = 0;
    GaussCode code;
    for (const auto &ps : passes) {
        if (label[ps.crossing] == 0) {
            label[ps.crossing] = ++next;
            code.signs.push_back(out.diagram.crossings[ps.crossing].sign);
        }
        code.sequence.push_back(ps.over ? label[ps.crossing] : -label[ps.crossing]);
    }
    std::vector<DiagramCrossing> ordered(out.diagram.crossings.size());
    for (std::size_t k = 0; k < ordered.size(); ++k) ordered[static_cast<std::size_t>(label[k] - 1)] = out.diagram.crossings[k];
    out.diagram.crossings = std::move(ordered);
    out.diagram.code = std::move(code);
    return out;
}

} // namespace

KnotDiagram link_diagram(const Link &link, const Eigen::Vector4d &direction, std::uint64_t seed) {
    if (link.points.size() < 3) throw PreconditionError("link polyline needs at least 3 points");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> jitter(0, 1);
    Eigen::Vector4d d = direction.normalized();
    std::string failure;
    for (int attempt = 0; attempt < 8; ++attempt) {
        auto a = try_diagram(link, d, rng());
        if (a.failure.empty()) return a.diagram;
        failure = a.failure;
        Eigen::Vector4d kick(jitter(rng), jitter(rng), jitter(rng), jitter(rng));
        d = (direction.normalized() + 0.02 * kick).normalized();
    }
    throw NumericError("non-generic projection after 8 attempts: " + failure);
}

void write_svg(const KnotDiagram &diagram, std::ostream &out) {
    Eigen::Vector2d lo(INFINITY, INFINITY), hi(-INFINITY, -INFINITY);
    for (const auto &p : diagram.plane) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    const double size = 600, margin = 20;
    const double scale = (size - 2 * margin) / std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-300});
    auto map = [&](const Eigen::Vector2d &p) {
        return Eigen::Vector2d(margin + (p.x() - lo.x()) * scale, size - margin - (p.y() - lo.y()) * scale);
    };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
    out << "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n<polygon fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
    for (const auto &p : diagram.plane) {
        auto q = map(p);
        out << q.x() << ',' << q.y() << ' ';
    }
    out << "\"/>\n";
    const std::size_t n = diagram.plane.size();
    for (const auto &c : diagram.crossings) {
        auto q = map(c.point);
        Eigen::Vector2d dir = (diagram.plane[(c.over_segment + 1) % n] - diagram.plane[c.over_segment]);
        dir.y() = -dir.y();
        dir.normalize();
        out << "<circle cx=\"" << q.x() << "\" cy=\"" << q.y() << "\" r=\"7\" fill=\"white\"/>\n";
        out << "<line x1=\"" << q.x() - 9 * dir.x() << "\" y1=\"" << q.y() - 9 * dir.y() << "\" x2=\"" << q.x() + 9 * dir.x()
            << "\" y2=\"" << q.y() + 9 * dir.y() << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
    out << "</svg>\n";
}

std::string_view to_string(KnotVerdict v) {
    switch (v) {
    case KnotVerdict::TrivialCertified: return "TRIVIAL_CERTIFIED";
    case KnotVerdict::TrivialNumeric: return "TRIVIAL_NUMERIC";
    case KnotVerdict::Nontrivial: return "NONTRIVIAL";
    case KnotVerdict::Unknown: return "UNKNOWN";
    }
    return "?";
}

KnotVerdict diagram_verdict(const GaussCode &reduced, const std::optional<Laurent> &bracket) {
    if (reduced.crossings() == 0) return KnotVerdict::TrivialNumeric;
    if (!bracket) return KnotVerdict::Unknown;
    return *bracket == Laurent::monomial(0) ? KnotVerdict::TrivialNumeric : KnotVerdict::Nontrivial;
}

KnotReport diagram_and_invariant(const KnotDiagram &diagram) {
    KnotReport r;
    r.diagram = diagram;
    r.reduced = reduce(diagram.code);
    if (r.reduced.crossings() <= 16)
        r.bracket = normalized_bracket(r.reduced);
    else
        r.warnings.push_back("reduced diagram has " + std::to_string(r.reduced.crossings()) + " crossings, above the bracket cap of 16");
    r.verdict = diagram_verdict(r.reduced, r.bracket);
    return r;
}

KnotReport knot_report(const MapGerm &m, const KnotOptions &options) {
    KnotReport r;
    std::optional<Eigen::Vector4d> primary;
    if (corank(m) == 1) {
        try {
            auto f = prenormalize(m, options.degree);
            if (f.p() % 2 == 1) {
                auto proj = choose_stable_projection(f, 16, options.seed);
                r.projection = proj;
                primary = proj.direction;
                auto sys = double_point_system(f, proj);
                r.certificate = certify_no_double_points(sys);
                if (r.certificate->certified) {
                    r.verdict = KnotVerdict::TrivialCertified;
                    if (!options.force_numeric) return r;
                } else {
                    auto search = find_double_points(sys, options.ball, options.seed);
                    r.double_points = search.points;
                }
            } else {
                r.warnings.push_back("tangent cone is a half-plane; only the diagram route applies");
            }
        } catch (const Error &e) {
            r.warnings.push_back(std::string("certificate route failed: ") + e.what());
        }
    }

    try {
        Link link = extract_link(m, options.epsilon, options.resolution);
        r.warnings.insert(r.warnings.end(), link.warnings.begin(), link.warnings.end());
        std::vector<Eigen::Vector4d> directions;
        if (primary) directions.push_back(*primary);
        std::mt19937_64 rng(options.seed);
        std::normal_distribution<double> g(0, 1);
        while (static_cast<int>(directions.size()) < std::max(1, options.directions))
            directions.push_back(Eigen::Vector4d(g(rng), g(rng), g(rng), g(rng)).normalized());
        std::optional<KnotReport> best;
        std::string failure;
        for (std::size_t k = 0; k < directions.size(); ++k) {
            try {
                auto sub = diagram_and_invariant(link_diagram(link, directions[k], options.seed + k));
                if (!best || sub.reduced.crossings() < best->reduced.crossings()) best = std::move(sub);
            } catch (const NumericError &e) {
                failure = e.what();
            }
        }
        if (!best) throw NumericError(failure);
        r.diagram = std::move(best->diagram);
        r.reduced = std::move(best->reduced);
        r.bracket = std::move(best->bracket);
        r.warnings.insert(r.warnings.end(), best->warnings.begin(), best->warnings.end());
        r.numeric_verdict = best->verdict;
        if (r.verdict == KnotVerdict::TrivialCertified) {
            if (best->verdict == KnotVerdict::Nontrivial) r.warnings.push_back("diagram route contradicts the certificate");
        } else {
            r.verdict = best->verdict;
        }
    } catch (const Error &e) {
        r.warnings.push_back(std::string("diagram route failed: ") + e.what());
    }
    return r;
}

} // namespace germkit
