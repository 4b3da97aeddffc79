#pragma once

#include "germkit/cone.hpp"
#include "germkit/knot.hpp"
#include "germkit/metric.hpp"
#include "germkit/polar.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace germkit {

enum class EmbeddingStatus { NotNe, LikelyNe, Inconclusive };
enum class Certificate { HalfPlane, JetOrbit, Claim1Order, HeightWidth, Numeric };

std::string_view to_string(EmbeddingStatus s);
std::string_view to_string(Certificate c);

/// NOT_NE always carries a non-NUMERIC certificate.
struct EmbeddingVerdict {
    EmbeddingStatus status = EmbeddingStatus::Inconclusive;
    std::optional<Certificate> certificate;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

enum class StageStatus { Done, NotApplicable, Skipped, Failed };
std::string_view to_string(StageStatus s);

struct StageRecord {
    std::string name;
    StageStatus status = StageStatus::Skipped;
    std::string reason;
    /// Failure caused by the truncation degree (raising it may help).
    bool limit = false;
};

/// Log-spaced values from a down to b, count k (a:b:k on the command line).
std::vector<double> log_spaced(double a, double b, int k);

struct AnalysisConfig {
    int degree = kDefaultDegree;
    /// Arc-criterion radii.
    std::vector<double> radii = log_spaced(1e-1, 1e-3, 5);
    /// Radii for the numeric height estimate.
    std::vector<double> height_radii = log_spaced(1e-1, 1e-3, 5);
    int resolution = 64;
    std::uint64_t seed = 1;
    /// Link sphere radius.
    double epsilon = 0.1;
    int link_resolution = 512;
    bool force_numeric_knot = false;
};

struct AnalysisReport {
    AnalysisReport(MapGerm m, AnalysisConfig c) : input(std::move(m)), config(std::move(c)) {}

    MapGerm input;
    AnalysisConfig config;
    int corank = 0;
    JetOrbit orbit = JetOrbit::NotCorank1;
    std::optional<PrenormalForm> prenormal;
    std::optional<ConeType> cone;
    std::optional<PolarData> polar;
    std::optional<HeightWidthResult> height_width;
    std::optional<ArcCriterionResult> arc;
    EmbeddingVerdict verdict;
    std::optional<KnotReport> knot;
    std::vector<StageRecord> stages;
    std::vector<std::string> warnings;
    /// Hypotheses checked only numerically.
    std::vector<std::string> assumptions;
};

/// Stages: jet, cone, orbit, claim1, polar, numeric, knot. A decided verdict skips the
/// numeric stage; a failed stage skips the dependent ones. Deterministic for a fixed seed.
AnalysisReport analyze(const MapGerm &m, const AnalysisConfig &config = {});

} // namespace germkit
