#pragma once

// JSON fragments for the command-line reports. Field order is fixed by
// insertion; exact scalars are emitted as expression strings.

#include <string>

#include "json.hpp"
#include "qfid/engine.hpp"

namespace qfid::report {

using Json = nlohmann::ordered_json;

inline constexpr int kReportVersion = 1;

Json model_json(const std::string& path, const Engine& e);
Json solver_json(const SolverConfig& cfg);
Json verdict_json(const Verdict& v);
Json record_json(const QmcModel& m, const FidelityRecord& r);
/// lo/hi as exact rationals plus their decimal approximations.
Json bracket_json(const FidelityBracket& b);
/// Row-major entries, each the exact FieldScalar text.
Json matrix_json(const Mat& m);
Json field_json(const FieldPtr& field);

/// Report skeleton shared by every subcommand.
Json header(const std::string& command, const std::string& model_path, const Engine& e);

}  // namespace qfid::report
