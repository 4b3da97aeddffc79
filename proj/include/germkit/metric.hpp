#pragma once

#include "germkit/expr.hpp"
#include "germkit/puiseux.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace germkit {

struct MeshVertex {
    std::array<double, 2> source{};
    Eigen::Vector4d image = Eigen::Vector4d::Zero();
};

struct MeshEdge {
    std::size_t a = 0, b = 0;
    double length = 0; // |image(a) - image(b)|
};

/// Graph surrogate of the image surface: log-polar source grid, geometric toward the origin.
struct SurfaceMesh {
    std::vector<MeshVertex> vertices;
    std::vector<MeshEdge> edges;
    std::vector<std::vector<std::pair<std::size_t, double>>> adjacency;
    /// Vertex indices grouped by k = floor(log2(outer_radius / |image|)); the origin is in the last band.
    std::vector<std::vector<std::size_t>> radius_bands;
    std::vector<std::string> warnings;
    std::size_t origin = 0;
    int resolution = 0;
    int rings = 0;
    /// ring i has source radius exp(-(first_ring + i) * step); doubling the resolution nests grids
    int first_ring = 0;
    double step = 0;         // log-radial and angular spacing
    /// grid (ring, angle) -> vertex; merged duplicates share a vertex
    std::vector<std::size_t> grid;

    std::size_t vertex_at(int ring, int angle) const;
    /// Nearest grid vertex to a source point (the origin vertex inside the innermost ring).
    std::size_t snap(double x, double y) const;
    /// Corners of the grid cell containing a source point.
    std::vector<std::size_t> cell(double x, double y) const;
};

/// Image points closer than 1e-10 (relative) are merged, with a warning.
SurfaceMesh sample_mesh(const MapGerm &m, double outer_radius, int resolution, double inner_radius = 0);

/// Shortest-path length between two vertices. Throws NumericError if disconnected or if the
/// result undercuts the Euclidean distance.
double inner_distance(const SurfaceMesh &mesh, std::size_t a, std::size_t b);

/// Same, for arbitrary surface points attached to the corners of their source grid cells.
double inner_distance(const SurfaceMesh &mesh, const MeshVertex &a, const MeshVertex &b);

/// Image length of the straight source segment between two points (polyline, `samples` pieces).
/// An upper bound for the inner distance up to chord error.
double segment_length(const MapGerm &m, const std::array<double, 2> &p, const std::array<double, 2> &q, int samples = 2048);

void write_mesh(const SurfaceMesh &mesh, std::ostream &out);

/// Source arc s >= 0 -> (x(s), y(s)).
using SourceArc = std::array<PuiseuxSeries, 2>;

struct ArcPair {
    SourceArc first, second;
};

struct ScaleSample {
    double radius, outer, inner;
};

/// Samples for one arc pair, radii descending.
struct ScaleSeries {
    std::vector<ScaleSample> samples;
};

struct ArcCriterionConfig {
    int resolution = 64;
    std::uint64_t seed = 1;
    int random_pairs = 64;
};

struct ArcCriterionResult {
    double k_estimate = 0;
    /// -slope of log(max inner/outer) against log(radius). Inner is the shorter of the mesh
    /// path and the source segment path.
    double growth_exponent = 0;
    std::vector<ScaleSeries> series;
    std::vector<std::string> warnings;
};

/// Pairs absent: RANDOM mode, antipodal-ish source rays from the seeded generator.
ArcCriterionResult arc_criterion_estimate(const MapGerm &m, const std::optional<std::vector<ArcPair>> &pairs,
                                          std::span<const double> radii, const ArcCriterionConfig &config = {});

/// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

/// Log-log slope of |a(t) - b(t)| over the given radii; arcs must be normalized.
double outer_contact_slope(const ArcGerm &a, const ArcGerm &b, std::span<const double> radii);

/// Parameter s where |F(arc(s))| first reaches r; absent if it never does for s <= 16.
std::optional<double> parameter_at_radius(const MapGerm &m, const SourceArc &arc, double r);

} // namespace germkit
