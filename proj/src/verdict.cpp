#include "germkit/verdict.hpp"

#include <cmath>

namespace germkit {

std::string_view to_string(EmbeddingStatus s) {
    switch (s) {
    case EmbeddingStatus::NotNe: return "NOT_NE";
    case EmbeddingStatus::LikelyNe: return "LIKELY_NE";
    case EmbeddingStatus::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

std::string_view to_string(Certificate c) {
    switch (c) {
    case Certificate::HalfPlane: return "HALF_PLANE";
    case Certificate::JetOrbit: return "JET_ORBIT";
    case Certificate::Claim1Order: return "CLAIM1_ORDER";
    case Certificate::HeightWidth: return "HEIGHT_WIDTH";
    case Certificate::Numeric: return "NUMERIC";
    }
    return "?";
}

std::string_view to_string(StageStatus s) {
    switch (s) {
    case StageStatus::Done: return "DONE";
    case StageStatus::NotApplicable: return "NOT_APPLICABLE";
    case StageStatus::Skipped: return "SKIPPED";
    case StageStatus::Failed: return "FAILED";
    }
    return "?";
}

std::vector<double> log_spaced(double a, double b, int k) {
    if (!(a > 0) || !(b > 0) || k < 2) throw PreconditionError("log spacing needs positive ends and at least 2 points");
    std::vector<double> out;
    for (int i = 0; i < k; ++i) out.push_back(a * std::pow(b / a, static_cast<double>(i) / (k - 1)));
    return out;
}

namespace {

bool is_limit(const Error &e) {
    return dynamic_cast<const TruncationError *>(&e) != nullptr || dynamic_cast<const DegenerateError *>(&e) != nullptr;
}

nlohmann::ordered_json vec(const Eigen::Vector4d &v) { return {v[0], v[1], v[2], v[3]}; }

} // namespace

AnalysisReport analyze(const MapGerm &m, const AnalysisConfig &config) {
    AnalysisReport r(m, config);
    std::string blocked; // set once a stage fails; dependent stages are skipped
    std::string decided_by;
    auto record = [&](std::string name, StageStatus status, std::string reason = {}, bool limit = false) {
        r.stages.push_back({std::move(name), status, std::move(reason), limit});
    };
    auto decide = [&](Certificate c, nlohmann::ordered_json details, const std::string &stage) {
        r.verdict.status = EmbeddingStatus::NotNe;
        r.verdict.certificate = c;
        r.verdict.details = std::move(details);
        decided_by = stage;
    };
    auto gate = [&](const std::string &name) {
        if (!blocked.empty()) {
            record(name, StageStatus::Skipped, blocked);
            return false;
        }
        return true;
    };

    // jet
    r.corank = corank(m);
    r.orbit = classify_2jet(m);
    if (r.corank == 1) {
        try {
            r.prenormal = prenormalize(m, config.degree);
            record("jet", StageStatus::Done);
        } catch (const Error &e) {
            record("jet", StageStatus::Failed, e.what(), is_limit(e));
            blocked = "jet stage failed";
        }
    } else {
        record("jet", StageStatus::Done, "corank " + std::to_string(r.corank));
    }

    // cone
    if (gate("cone")) {
        if (r.corank == 2) {
            record("cone", StageStatus::NotApplicable, "corank 2 germs are handled numerically");
        } else {
            try {
                r.cone = r.prenormal ? tangent_cone(*r.prenormal) : tangent_cone(m, config.degree);
                record("cone", StageStatus::Done);
                if (r.cone->kind == ConeKind::HalfPlane)
                    decide(Certificate::HalfPlane,
                           {{"p", r.prenormal->p()},
                            {"boundary_direction", vec(*r.cone->boundary_direction)},
                            {"interior_direction", vec(*r.cone->interior_direction)}},
                           "cone");
            } catch (const Error &e) {
                record("cone", StageStatus::Failed, e.what(), is_limit(e));
                blocked = "cone stage failed";
            }
        }
    }

    // orbit
    if (gate("orbit")) {
        if (!decided_by.empty()) {
            record("orbit", StageStatus::Skipped, "verdict decided at stage " + decided_by);
        } else if (r.corank != 1) {
            record("orbit", StageStatus::NotApplicable, "corank " + std::to_string(r.corank));
        } else {
            record("orbit", StageStatus::Done);
            if (r.orbit == JetOrbit::Crosscap || r.orbit == JetOrbit::Parabolic)
                decide(Certificate::JetOrbit, {{"orbit", to_string(r.orbit)}}, "orbit");
        }
    }

    // claim 1: the xy slot carries the lowest y-order, strictly below both others
    if (gate("claim1")) {
        if (!decided_by.empty()) {
            record("claim1", StageStatus::Skipped, "verdict decided at stage " + decided_by);
        } else if (r.corank != 1 || r.orbit != JetOrbit::Shear) {
            record("claim1", StageStatus::NotApplicable, "2-jet is not (x, xy, 0, 0)");
        } else {
            const auto &f = *r.prenormal;
            record("claim1", StageStatus::Done);
            if (f.shear_slot == 1u && f.orders[0] < f.orders[1] && f.orders[0] < f.orders[2]) {
                auto order = [](const AxisOrder &o) { return o.infinite ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(o.value); };
                decide(Certificate::Claim1Order, {{"p_order", order(f.orders[0])}, {"q_order", order(f.orders[1])}, {"r_order", order(f.orders[2])}},
                       "claim1");
            }
        }
    }

    // polar height/width; also evidence for a Claim 1 verdict
    if (gate("polar")) {
        if (!decided_by.empty() && r.verdict.certificate != Certificate::Claim1Order) {
            record("polar", StageStatus::Skipped, "verdict decided at stage " + decided_by);
        } else if (r.corank != 1) {
            record("polar", StageStatus::NotApplicable, "corank " + std::to_string(r.corank));
        } else {
            try {
                r.polar = analyze_polar(*r.prenormal, config.height_radii);
                r.height_width = height_width_test(*r.polar);
                record("polar", StageStatus::Done);
                if (r.height_width->status == HeightWidthStatus::Fail) {
                    const auto &t = r.polar->triangles[*r.height_width->triangle];
                    nlohmann::ordered_json evidence{{"triangle", *r.height_width->triangle},
                                                    {"width", to_string(t.width)},
                                                    {"height_lower_bound", to_string(*t.height_lower_bound)}};
                    if (t.height_numeric) evidence["height_numeric"] = *t.height_numeric;
                    if (decided_by.empty())
                        decide(Certificate::HeightWidth, evidence, "polar");
                    else
                        r.verdict.details["height_width"] = evidence;
                }
            } catch (const Error &e) {
                record("polar", StageStatus::Failed, e.what(), is_limit(e));
                blocked = "polar stage failed";
            }
        }
    }

    // numeric arc criterion
    if (gate("numeric")) {
        if (!decided_by.empty()) {
            record("numeric", StageStatus::Skipped, "verdict decided at stage " + decided_by);
        } else {
            try {
                r.arc = arc_criterion_estimate(m, std::nullopt, config.radii, {config.resolution, config.seed, 64});
                record("numeric", StageStatus::Done);
                const double g = r.arc->growth_exponent;
                r.verdict.status = g > -0.1 && g < 0.1 ? EmbeddingStatus::LikelyNe : EmbeddingStatus::Inconclusive;
                r.verdict.certificate = Certificate::Numeric;
                r.verdict.details = {{"growth_exponent", g}, {"k_estimate", r.arc->k_estimate}};
            } catch (const Error &e) {
                record("numeric", StageStatus::Failed, e.what(), is_limit(e));
            }
        }
    }

    // knot, always attached
    try {
        KnotOptions ko;
        ko.epsilon = config.epsilon;
        ko.resolution = config.link_resolution;
        ko.seed = config.seed;
        ko.force_numeric = config.force_numeric_knot;
        ko.degree = config.degree;
        r.knot = knot_report(m, ko);
        record("knot", StageStatus::Done);
        r.assumptions.push_back("isolated singularity and injectivity of the link are checked numerically only");
        if (r.verdict.status == EmbeddingStatus::LikelyNe && r.orbit == JetOrbit::Shear) {
            r.verdict.details["knot_implication"] = "normal embedding with 2-jet (x, xy, 0, 0) forces a trivial link";
            if (r.knot->verdict == KnotVerdict::Nontrivial)
                r.warnings.push_back("contradiction: nontrivial knot for a LIKELY_NE germ with 2-jet (x, xy, 0, 0); evidence against normal embedding");
        }
    } catch (const Error &e) {
        record("knot", StageStatus::Failed, e.what(), is_limit(e));
    }
    return r;
}

} // namespace germkit
