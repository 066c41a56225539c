#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "worldsys/dynamics.hpp"
#include "worldsys/fitting.hpp"
#include "worldsys/stats.hpp"

namespace worldsys {

using Json = nlohmann::ordered_json;

/// {series_id, k_mode, convention, objective, C, t0, k, r, r2, r2_pearson,
/// sse, sst, n, warnings}
Json to_json(const TrendFit& fit, const std::string& series_id);

/// {mode, slope, intercept?, se, t, p, intercept_se?, t_intercept?,
/// p_intercept?, r, r2, n, dof}
Json to_json(const RegressionResult& reg);

Json to_json(const PolyFit& fit);
Json to_json(const CorrelationTest& test);

/// Run status and the final stored row; no per-step data.
Json trace_summary(const SimulationTrace& trace);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& doc);

/// Writes through a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Lower-case hex SHA-256 of the file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Library version string.
const char* version();

}  // namespace worldsys
