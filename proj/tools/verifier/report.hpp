#pragma once

#include <filesystem>
#include <string>

#include "verifier/runner.hpp"

namespace qhgeo::verifier {

enum class ReportFormat { kJson, kCsv };

/// Pretty-printed JSON with a trailing newline.
std::string format_json(const Report& report);

/// One row per (check, measured constant) with the matching prediction, if
/// any: index,label,id,status,constant,measured,predicted.
std::string format_csv(const Report& report);

/// Throws ConfigError when the path cannot be written.
void write_report(const Report& report, ReportFormat format, const std::filesystem::path& path);

}  // namespace qhgeo::verifier
