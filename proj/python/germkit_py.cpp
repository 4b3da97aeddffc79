#include "germkit/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace germkit;

namespace {

py::object to_python(const Json &j) { return py::module_::import("json").attr("loads")(j.dump()); }

using OptRadii = std::optional<std::vector<double>>;

} // namespace

PYBIND11_MODULE(_germkit, m) {
    m.doc() = "germkit core bindings";
    m.attr("__version__") = std::string(tool_version());
    m.attr("SCHEMA_VERSION") = kSchemaVersion;

    // later registrations are tried first, so subclasses win over the base
    auto base = py::register_exception<Error>(m, "GermkitError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<TruncationError>(m, "TruncationError", base.ptr());
    py::register_exception<DegenerateError>(m, "DegenerateError", base.ptr());
    py::register_exception<ShapeError>(m, "ShapeError", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<NumericError>(m, "NumericError", base.ptr());

    m.def("corank", [](const std::string &germ) { return corank(parse_map(germ)); }, py::arg("germ"));
    m.def(
        "classify_2jet", [](const std::string &germ) { return std::string(to_string(classify_2jet(parse_map(germ)))); }, py::arg("germ"));
    m.def(
        "prenormalize", [](const std::string &germ, int degree) { return to_python(to_json(prenormalize(parse_map(germ), degree))); },
        py::arg("germ"), py::arg("degree") = kDefaultDegree);
    m.def(
        "tangent_cone", [](const std::string &germ, int degree) { return to_python(to_json(tangent_cone(parse_map(germ), degree))); },
        py::arg("germ"), py::arg("degree") = kDefaultDegree);
    m.def(
        "polar",
        [](const std::string &germ, int degree, const OptRadii &radii) {
            PrenormalForm f = prenormalize(parse_map(germ), degree);
            PolarData data = analyze_polar(f, radii ? *radii : AnalysisConfig{}.height_radii);
            return to_python(to_json(data, height_width_test(data)));
        },
        py::arg("germ"), py::arg("degree") = kDefaultDegree, py::arg("radii") = py::none());
    m.def(
        "arc_test",
        [](const std::string &germ, const OptRadii &radii, int resolution, std::uint64_t seed) {
            MapGerm g = parse_map(germ);
            std::vector<double> r = radii ? *radii : AnalysisConfig{}.radii;
            std::optional<ArcCriterionResult> arc;
            {
                py::gil_scoped_release release;
                arc = arc_criterion_estimate(g, std::nullopt, r, {resolution, seed, 64});
            }
            return to_python(to_json(*arc));
        },
        py::arg("germ"), py::arg("radii") = py::none(), py::arg("resolution") = 64, py::arg("seed") = 1);
    m.def(
        "knot",
        [](const std::string &germ, double epsilon, int resolution, std::uint64_t seed, bool force_numeric, int degree) {
            KnotOptions o;
            o.epsilon = epsilon;
            o.resolution = resolution;
            o.seed = seed;
            o.force_numeric = force_numeric;
            o.degree = degree;
            MapGerm g = parse_map(germ);
            std::optional<KnotReport> k;
            {
                py::gil_scoped_release release;
                k = knot_report(g, o);
            }
            return to_python(to_json(*k));
        },
        py::arg("germ"), py::arg("epsilon") = 0.1, py::arg("resolution") = 512, py::arg("seed") = 1, py::arg("force_numeric") = false,
        py::arg("degree") = kDefaultDegree);
    m.def(
        "analyze",
        [](const std::string &germ, int degree, const OptRadii &radii, int resolution, std::uint64_t seed, double epsilon,
           int link_resolution, bool force_numeric_knot) {
            AnalysisConfig c;
            c.degree = degree;
            if (radii) c.radii = c.height_radii = *radii;
            c.resolution = resolution;
            c.seed = seed;
            c.epsilon = epsilon;
            c.link_resolution = link_resolution;
            c.force_numeric_knot = force_numeric_knot;
            MapGerm g = parse_map(germ);
            std::optional<AnalysisReport> r;
            {
                py::gil_scoped_release release;
                r.emplace(analyze(g, c));
            }
            return to_python(to_json(*r));
        },
        py::arg("germ"), py::arg("degree") = kDefaultDegree, py::arg("radii") = py::none(), py::arg("resolution") = 64,
        py::arg("seed") = 1, py::arg("epsilon") = 0.1, py::arg("link_resolution") = 512, py::arg("force_numeric_knot") = false,
        "Full pipeline; returns the report as a dict.");
}
