#include "germkit/report.hpp"

#include <cmath>

namespace germkit {

std::string_view tool_version() { return GERMKIT_VERSION; }

namespace {

// Non-finite doubles become null so the document stays valid JSON.
Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json vec(const Eigen::Vector4d &v) { return Json::array({num(v[0]), num(v[1]), num(v[2]), num(v[3])}); }

Json order(const AxisOrder &o) { return o.infinite ? Json(nullptr) : Json(o.value); }

Json strings(const std::vector<std::string> &v) {
    Json out = Json::array();
    for (const auto &s : v) out.push_back(s);
    return out;
}

Json arc(const ArcGerm &a) {
    Json out = Json::array();
    for (const auto &c : a.coords) out.push_back(c.to_string());
    return out;
}

Json code_json(const GaussCode &c) {
    return {{"sequence", c.sequence}, {"signs", c.signs}, {"crossings", c.crossings()}, {"writhe", c.writhe()}};
}

} // namespace

Json to_json(const AnalysisConfig &c) {
    Json radii = Json::array(), hr = Json::array();
    for (double r : c.radii) radii.push_back(num(r));
    for (double r : c.height_radii) hr.push_back(num(r));
    return {{"degree", c.degree},
            {"radii", radii},
            {"height_radii", hr},
            {"resolution", c.resolution},
            {"seed", c.seed},
            {"epsilon", num(c.epsilon)},
            {"link_resolution", c.link_resolution},
            {"force_numeric_knot", c.force_numeric_knot}};
}

Json to_json(const PrenormalForm &f) {
    Json series = Json::array();
    for (const auto &s : f.series) series.push_back(s.to_string(kNamesXY));
    Json changes = Json::array();
    for (const auto &ch : f.changes) changes.push_back(describe(ch));
    Json out{{"series", series},
             {"degree", f.degree},
             {"orders", Json::array({order(f.orders[0]), order(f.orders[1]), order(f.orders[2])})},
             {"shear_slot", f.shear_slot ? Json(*f.shear_slot) : Json(nullptr)},
             {"changes", changes},
             {"notices", strings(f.notices)}};
    return out;
}

Json to_json(const ConeType &cone) {
    Json out{{"kind", to_string(cone.kind)}, {"basis", Json::array({vec(cone.basis[0]), vec(cone.basis[1])})}};
    if (cone.boundary_direction) out["boundary_direction"] = vec(*cone.boundary_direction);
    if (cone.interior_direction) out["interior_direction"] = vec(*cone.interior_direction);
    return out;
}

Json to_json(const PolarData &polar, const std::optional<HeightWidthResult> &test) {
    Json sigma = Json::array();
    for (const auto &b : polar.sigma) sigma.push_back(b.to_string());
    Json delta = Json::array();
    for (const auto &d : polar.delta) delta.push_back(arc(d));
    Json tris = Json::array();
    for (const auto &t : polar.triangles) {
        Json j{{"boundary", Json::array({t.boundary_index[0], t.boundary_index[1]})},
               {"width", to_string(t.width)},
               {"height_lower_bound", t.height_lower_bound ? Json(to_string(*t.height_lower_bound)) : Json(nullptr)},
               {"height_numeric", t.height_numeric ? num(*t.height_numeric) : Json(nullptr)},
               {"fiber_count", t.fiber_count},
               {"test_arc", t.midpoint_test_arc ? "midpoint" : "ray"}};
        tris.push_back(j);
    }
    Json out{{"sigma", sigma}, {"delta", delta}, {"triangles", tris}, {"notices", strings(polar.notices)}};
    if (test) {
        out["height_width"] = {{"status", to_string(test->status)},
                               {"triangle", test->triangle ? Json(*test->triangle) : Json(nullptr)}};
    }
    return out;
}

Json to_json(const ArcCriterionResult &a) {
    Json series = Json::array();
    for (const auto &s : a.series) {
        Json samples = Json::array();
        for (const auto &x : s.samples)
            samples.push_back({{"radius", num(x.radius)}, {"outer", num(x.outer)}, {"inner", num(x.inner)}});
        series.push_back(samples);
    }
    return {{"growth_exponent", num(a.growth_exponent)},
            {"k_estimate", num(a.k_estimate)},
            {"pairs", a.series.size()},
            {"series", series},
            {"warnings", strings(a.warnings)}};
}

Json to_json(const KnotReport &k) {
    Json out{{"verdict", to_string(k.verdict)}};
    if (k.projection) {
        const auto &p = *k.projection;
        out["projection"] = {{"direction", vec(p.direction)},
                             {"normal_direction", Json::array({to_string(p.normal_direction[0]), to_string(p.normal_direction[1])})},
                             {"transversality", num(p.transversality)},
                             {"stability_evidence", p.stability_evidence ? num(*p.stability_evidence) : Json(nullptr)},
                             {"trials", p.trials}};
    }
    if (k.certificate) {
        const auto &c = *k.certificate;
        out["certificate"] = {{"certified", c.certified},
                              {"radius", num(c.radius)},
                              {"reduced", c.reduced.to_string(std::array<std::string_view, 2>{"y", "u"})},
                              {"initial_form_degree", c.initial_form_degree},
                              {"initial_form_min", num(c.initial_form_min)},
                              {"reason", c.reason}};
    }
    Json dps = Json::array();
    for (const auto &p : k.double_points) dps.push_back(Json::array({num(p[0]), num(p[1]), num(p[2])}));
    out["double_points"] = dps;
    if (k.diagram) {
        out["diagram"] = {{"direction", vec(k.diagram->direction)},
                          {"vertices", k.diagram->plane.size()},
                          {"gauss_code", code_json(k.diagram->code)}};
    }
    out["reduced"] = code_json(k.reduced);
    out["bracket"] = k.bracket ? Json(k.bracket->to_string()) : Json(nullptr);
    out["numeric_verdict"] = k.numeric_verdict ? Json(to_string(*k.numeric_verdict)) : Json(nullptr);
    out["warnings"] = strings(k.warnings);
    return out;
}

Json to_json(const EmbeddingVerdict &v) {
    return {{"status", to_string(v.status)},
            {"certificate", v.certificate ? Json(to_string(*v.certificate)) : Json(nullptr)},
            {"details", v.details}};
}

Json to_json(const AnalysisReport &r) {
    Json stages = Json::array();
    for (const auto &s : r.stages) stages.push_back({{"name", s.name}, {"status", to_string(s.status)}, {"reason", s.reason}, {"limit", s.limit}});
    Json jet{{"corank", r.corank}, {"orbit", to_string(r.orbit)}};
    jet["prenormal"] = r.prenormal ? to_json(*r.prenormal) : Json(nullptr);
    Json out{{"schema_version", kSchemaVersion},
             {"tool", {{"name", "germkit"}, {"version", tool_version()}}},
             {"input", r.input.to_string()},
             {"config", to_json(r.config)},
             {"stages", stages},
             {"jet", jet},
             {"cone", r.cone ? to_json(*r.cone) : Json(nullptr)},
             {"polar", r.polar ? to_json(*r.polar, r.height_width) : Json(nullptr)},
             {"arc_criterion", r.arc ? to_json(*r.arc) : Json(nullptr)},
             {"verdict", to_json(r.verdict)},
             {"knot", r.knot ? to_json(*r.knot) : Json(nullptr)},
             {"warnings", strings(r.warnings)},
             {"assumptions", strings(r.assumptions)}};
    return out;
}

} // namespace germkit
