#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ctrlsel/pipeline.hpp"
#include "ctrlsel/system.hpp"

namespace ctrlsel {

/// Instance document (JSON):
///   { "name": "...", "n": 3, "m": 2,
///     "a_pattern": [[i, j], ...],                 // A_ij = *, 1-based
///     "b_pattern": [[i, j, cost], [i, j, num, den], ...] }
/// Costs are exact: an integer, or a numerator/denominator pair.
/// Errors are Errc::Parse with a line:column or a JSON path in the message.
StructuredSystem parse_instance(std::string_view text);
StructuredSystem load_instance(const std::filesystem::path& path);
std::string write_instance(const StructuredSystem& sys);

enum class ReportFormat { Text, Machine };

/// Machine format is JSON with a fixed key order and no timing data.
std::string render_report(const StructuredSystem& sys, const SolveResult& result, ReportFormat format,
                          std::string_view source, double elapsed_ms = 0.0);

std::string render_assumptions(const StructuredSystem& sys, const AssumptionReport& report, ReportFormat format);

std::string render_tu(const AugmentedIncidence& matrix, const TuVerdict& verdict, std::string_view which,
                      ReportFormat format);

}  // namespace ctrlsel
