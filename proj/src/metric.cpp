#include "germkit/metric.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <queue>
#include <random>

namespace germkit {

namespace {

Eigen::Vector4d image_of(const MapGerm &m, double x, double y) {
    auto z = m.eval(x, y);
    return {z[0], z[1], z[2], z[3]};
}

MeshVertex on_surface(const MapGerm &m, const SourceArc &arc, double s) {
    double x = arc[0].eval(s), y = arc[1].eval(s);
    return {{x, y}, image_of(m, x, y)};
}

/// Source radius along the ray at angle th where |F| first reaches r.
double ray_radius(const MapGerm &m, double th, double r) {
    const double c = std::cos(th), s = std::sin(th);
    double lo = 0, hi = 1e-12;
    while (image_of(m, hi * c, hi * s).norm() < r && hi < 16) {
        lo = hi;
        hi *= 1.25;
    }
    if (image_of(m, hi * c, hi * s).norm() < r) return hi;
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        (image_of(m, mid * c, mid * s).norm() < r ? lo : hi) = mid;
    }
    return hi;
}

} // namespace

std::size_t SurfaceMesh::vertex_at(int ring, int angle) const {
    angle = ((angle % resolution) + resolution) % resolution;
    return grid[static_cast<std::size_t>(ring) * static_cast<std::size_t>(resolution) + static_cast<std::size_t>(angle)];
}

std::size_t SurfaceMesh::snap(double x, double y) const {
    double rho = std::hypot(x, y);
    if (rho <= 0) return origin;
    int ring = static_cast<int>(std::lround(-std::log(rho) / step)) - first_ring;
    if (ring >= rings) return origin;
    ring = std::max(ring, 0);
    double th = std::atan2(y, x);
    if (th < 0) th += 2 * std::numbers::pi;
    return vertex_at(ring, static_cast<int>(std::lround(th / step)));
}

std::vector<std::size_t> SurfaceMesh::cell(double x, double y) const {
    double rho = std::hypot(x, y);
    if (rho <= 0) return {origin};
    double th = std::atan2(y, x);
    if (th < 0) th += 2 * std::numbers::pi;
    int j = static_cast<int>(std::floor(th / step));
    double pos = -std::log(rho) / step - first_ring;
    int inner_ring = static_cast<int>(std::ceil(pos));
    std::vector<std::size_t> out;
    if (inner_ring >= rings) out.push_back(origin);
    for (int ring : {inner_ring - 1, inner_ring})
        if (ring >= 0 && ring < rings)
            for (int jj : {j, j + 1}) out.push_back(vertex_at(ring, jj));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SurfaceMesh sample_mesh(const MapGerm &m, double outer_radius, int resolution, double inner_radius) {
    if (resolution < 16) throw PreconditionError("mesh resolution must be at least 16");
    if (!(outer_radius > 0)) throw PreconditionError("mesh radius must be positive");
    if (inner_radius <= 0) inner_radius = outer_radius * 1e-4;
    SurfaceMesh mesh;
    mesh.resolution = resolution;
    mesh.step = 2 * std::numbers::pi / resolution;
    double s_out = 0, s_in = INFINITY;
    for (int j = 0; j < resolution; ++j) {
        double th = j * mesh.step;
        s_out = std::max(s_out, ray_radius(m, th, outer_radius));
        s_in = std::min(s_in, ray_radius(m, th, inner_radius));
    }
    mesh.first_ring = static_cast<int>(std::floor(-std::log(s_out) / mesh.step));
    mesh.rings = std::max(2, static_cast<int>(std::ceil(-std::log(s_in) / mesh.step)) - mesh.first_ring + 1);

    // vertices with duplicate merging on a relative hash grid
    std::map<std::array<long long, 4>, std::vector<std::size_t>> buckets;
    auto key = [](const Eigen::Vector4d &z, double cell) {
        std::array<long long, 4> k{};
        for (int i = 0; i < 4; ++i) k[static_cast<std::size_t>(i)] = static_cast<long long>(std::floor(z[i] / cell));
        return k;
    };
    std::size_t collisions = 0;
    mesh.grid.resize(static_cast<std::size_t>(mesh.rings) * static_cast<std::size_t>(resolution));
    for (int i = 0; i < mesh.rings; ++i) {
        const double rho = std::exp(-(mesh.first_ring + i) * mesh.step);
        for (int j = 0; j < resolution; ++j) {
            const double th = j * mesh.step;
            MeshVertex v{{rho * std::cos(th), rho * std::sin(th)}, image_of(m, rho * std::cos(th), rho * std::sin(th))};
            const double tol = 1e-10 * std::max(v.image.norm(), 1e-300);
            const double cell = std::ldexp(1.0, static_cast<int>(std::ceil(std::log2(tol))));
            auto k = key(v.image, cell);
            std::optional<std::size_t> found;
            for (int d = 0; d < 81 && !found; ++d) {
                auto kk = k;
                int code = d;
                for (int c = 0; c < 4; ++c) {
                    kk[static_cast<std::size_t>(c)] += code % 3 - 1;
                    code /= 3;
                }
                auto it = buckets.find(kk);
                if (it == buckets.end()) continue;
                for (std::size_t idx : it->second)
                    if ((mesh.vertices[idx].image - v.image).norm() <= tol) {
                        found = idx;
                        break;
                    }
            }
            std::size_t id;
            if (found) {
                id = *found;
                ++collisions;
            } else {
                id = mesh.vertices.size();
                mesh.vertices.push_back(v);
                buckets[k].push_back(id);
            }
            mesh.grid[static_cast<std::size_t>(i) * static_cast<std::size_t>(resolution) + static_cast<std::size_t>(j)] = id;
        }
    }
    if (collisions > 0)
        mesh.warnings.push_back("non-injectivity: " + std::to_string(collisions) + " source grid points collide in the image");
    mesh.origin = mesh.vertices.size();
    mesh.vertices.push_back(MeshVertex{});

    // edges: king moves in (ring, angle), plus the origin fan
    std::map<std::pair<std::size_t, std::size_t>, double> unique;
    auto add = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        auto k = std::minmax(a, b);
        unique.emplace(std::pair{k.first, k.second}, (mesh.vertices[a].image - mesh.vertices[b].image).norm());
    };
    const int moves[4][2] = {{0, 1}, {1, 0}, {1, 1}, {1, -1}};
    for (int i = 0; i < mesh.rings; ++i)
        for (int j = 0; j < resolution; ++j)
            for (const auto &mv : moves) {
                int ii = i + mv[0];
                if (ii >= mesh.rings) continue;
                add(mesh.vertex_at(i, j), mesh.vertex_at(ii, j + mv[1]));
            }
    for (int j = 0; j < resolution; ++j) add(mesh.origin, mesh.vertex_at(mesh.rings - 1, j));
    mesh.adjacency.resize(mesh.vertices.size());
    for (const auto &[ab, len] : unique) {
        mesh.edges.push_back({ab.first, ab.second, len});
        mesh.adjacency[ab.first].push_back({ab.second, len});
        mesh.adjacency[ab.second].push_back({ab.first, len});
    }

    for (std::size_t v = 0; v < mesh.origin; ++v) {
        double r = mesh.vertices[v].image.norm();
        auto band = r > 0 ? static_cast<std::size_t>(std::max(0.0, std::floor(std::log2(outer_radius / r)))) : 0;
        if (band >= mesh.radius_bands.size()) mesh.radius_bands.resize(band + 1);
        mesh.radius_bands[band].push_back(v);
    }
    mesh.radius_bands.back().push_back(mesh.origin);
    return mesh;
}

namespace {

/// Multi-source shortest path: seeds carry initial distances, targets carry exit costs.
double shortest_path(const SurfaceMesh &mesh, const std::vector<std::pair<std::size_t, double>> &seeds,
                     const std::vector<std::pair<std::size_t, double>> &targets) {
    std::vector<double> dist(mesh.vertices.size(), INFINITY);
    std::vector<double> exit_cost(mesh.vertices.size(), INFINITY);
    for (auto [v, c] : targets) exit_cost[v] = std::min(exit_cost[v], c);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (auto [v, c] : seeds)
        if (c < dist[v]) {
            dist[v] = c;
            queue.push({c, v});
        }
    double best = INFINITY;
    while (!queue.empty()) {
        auto [d, v] = queue.top();
        queue.pop();
        if (d > dist[v]) continue;
        if (d >= best) break;
        best = std::min(best, d + exit_cost[v]);
        for (const auto &[w, len] : mesh.adjacency[v])
            if (d + len < dist[w]) {
                dist[w] = d + len;
                queue.push({dist[w], w});
            }
    }
    if (!std::isfinite(best)) throw NumericError("mesh vertices are disconnected");
    return best;
}

} // namespace

double inner_distance(const SurfaceMesh &mesh, std::size_t a, std::size_t b) {
    if (a >= mesh.vertices.size() || b >= mesh.vertices.size()) throw PreconditionError("vertex outside the mesh");
    if (a == b) return 0;
    double d = shortest_path(mesh, {{a, 0.0}}, {{b, 0.0}});
    if (d < (mesh.vertices[a].image - mesh.vertices[b].image).norm() - 1e-9) throw NumericError("inner distance below the outer distance");
    return d;
}

double inner_distance(const SurfaceMesh &mesh, const MeshVertex &a, const MeshVertex &b) {
    const double outer = (a.image - b.image).norm();
    auto ca = mesh.cell(a.source[0], a.source[1]), cb = mesh.cell(b.source[0], b.source[1]);
    std::vector<std::pair<std::size_t, double>> seeds, targets;
    for (auto v : ca) seeds.push_back({v, (a.image - mesh.vertices[v].image).norm()});
    for (auto v : cb) targets.push_back({v, (b.image - mesh.vertices[v].image).norm()});
    double d = ca == cb ? outer : shortest_path(mesh, seeds, targets);
    if (d < outer - 1e-9) throw NumericError("inner distance below the outer distance");
    return d;
}

void write_mesh(const SurfaceMesh &mesh, std::ostream &out) {
    out.precision(17);
    for (const auto &v : mesh.vertices)
        out << "v " << v.source[0] << ' ' << v.source[1] << ' ' << v.image[0] << ' ' << v.image[1] << ' ' << v.image[2] << ' '
            << v.image[3] << '\n';
    for (const auto &e : mesh.edges) out << "e " << e.a << ' ' << e.b << '\n';
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw PreconditionError("slope needs at least two samples");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
        sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    }
    return sxy / sxx;
}

double outer_contact_slope(const ArcGerm &a, const ArcGerm &b, std::span<const double> radii) {
    if (!a.normalized || !b.normalized) throw PreconditionError("arcs must be parametrized by distance");
    std::vector<double> d;
    for (double t : radii) {
        auto pa = a.eval(t), pb = b.eval(t);
        double s = 0;
        for (std::size_t i = 0; i < 4; ++i) s += (pa[i] - pb[i]) * (pa[i] - pb[i]);
        if (!(s > 0)) throw NumericError("arcs coincide at a sample radius");
        d.push_back(std::sqrt(s));
    }
    return log_log_slope(radii, d);
}

std::optional<double> parameter_at_radius(const MapGerm &m, const SourceArc &arc, double r) {
    auto norm_at = [&](double s) { return image_of(m, arc[0].eval(s), arc[1].eval(s)).norm(); };
    double lo = 0, hi = 1e-12;
    while (norm_at(hi) < r && hi < 16) {
        lo = hi;
        hi *= 1.25;
    }
    if (norm_at(hi) < r) return std::nullopt;
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        (norm_at(mid) < r ? lo : hi) = mid;
    }
    return hi;
}

double segment_length(const MapGerm &m, const std::array<double, 2> &p, const std::array<double, 2> &q, int samples) {
    auto at = [&](double t) {
        auto v = m.eval(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]));
        return Eigen::Vector4d(v[0], v[1], v[2], v[3]);
    };
    double len = 0;
    Eigen::Vector4d prev = at(0);
    for (int i = 1; i <= samples; ++i) {
        Eigen::Vector4d cur = at(static_cast<double>(i) / samples);
        len += (cur - prev).norm();
        prev = cur;
    }
    return len;
}

ArcCriterionResult arc_criterion_estimate(const MapGerm &m, const std::optional<std::vector<ArcPair>> &pairs_in,
                                          std::span<const double> radii_in, const ArcCriterionConfig &config) {
    std::vector<double> radii(radii_in.begin(), radii_in.end());
    std::sort(radii.begin(), radii.end(), std::greater<>());
    if (radii.size() < 4 || radii.front() / radii.back() < 100 * (1 - 1e-9))
        throw PreconditionError("arc criterion needs at least 4 radii spanning 2 decades");

    std::vector<ArcPair> pairs;
    if (pairs_in) {
        pairs = *pairs_in;
    } else {
        std::mt19937_64 rng(config.seed);
        std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi), jitter(-0.5, 0.5);
        for (int k = 0; k < config.random_pairs; ++k) {
            double a = angle(rng), b = a + std::numbers::pi + jitter(rng);
            auto ray = [](double th) {
                return SourceArc{PuiseuxSeries::monomial(Coeff::approx(std::cos(th)), 1), PuiseuxSeries::monomial(Coeff::approx(std::sin(th)), 1)};
            };
            pairs.push_back({ray(a), ray(b)});
        }
    }

    ArcCriterionResult out;
    SurfaceMesh mesh = sample_mesh(m, 2 * radii.front(), config.resolution, radii.back() / 8);
    out.warnings = mesh.warnings;
    std::vector<double> max_ratio(radii.size(), 0.0);
    std::size_t skipped = 0;
    for (const auto &pair : pairs) {
        ScaleSeries series;
        for (std::size_t k = 0; k < radii.size(); ++k) {
            auto s1 = parameter_at_radius(m, pair.first, radii[k]);
            auto s2 = parameter_at_radius(m, pair.second, radii[k]);
            if (!s1 || !s2) {
                ++skipped;
                continue;
            }
            MeshVertex a = on_surface(m, pair.first, *s1), b = on_surface(m, pair.second, *s2);
            double outer = (a.image - b.image).norm();
            if (outer <= 1e-12 * radii[k]) {
                ++skipped;
                continue;
            }
            double inner = std::min(inner_distance(mesh, a, b), segment_length(m, a.source, b.source));
            series.samples.push_back({radii[k], outer, inner});
            max_ratio[k] = std::max(max_ratio[k], inner / outer);
        }
        out.series.push_back(std::move(series));
    }
    if (skipped > 0) out.warnings.push_back(std::to_string(skipped) + " arc samples skipped (coincident images or arc leaves the ball)");
    std::vector<double> rs, ratios;
    for (std::size_t k = 0; k < radii.size(); ++k)
        if (max_ratio[k] > 0) {
            rs.push_back(radii[k]);
            ratios.push_back(max_ratio[k]);
            out.k_estimate = std::max(out.k_estimate, max_ratio[k]);
        }
    if (rs.size() < 2) throw NumericError("arc criterion: no usable samples");
    out.growth_exponent = -log_log_slope(rs, ratios);
    return out;
}

} // namespace germkit
