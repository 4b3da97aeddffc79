#pragma once

#include "germkit/verdict.hpp"

#include <json.hpp>

#include <string_view>

namespace germkit {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
std::string_view tool_version();

Json to_json(const AnalysisConfig &config);
Json to_json(const PrenormalForm &f);
Json to_json(const ConeType &cone);
Json to_json(const PolarData &polar, const std::optional<HeightWidthResult> &test);
Json to_json(const ArcCriterionResult &arc);
Json to_json(const KnotReport &knot);
Json to_json(const EmbeddingVerdict &verdict);

/// Full report document. Key order and number formatting are fixed; no timing here.
Json to_json(const AnalysisReport &report);

} // namespace germkit
