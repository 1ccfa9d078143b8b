#pragma once

// CSV / JSON renderings of results and atomic file output.

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "elocc/criticality.hpp"
#include "elocc/monotone.hpp"

namespace elocc {

/// Shortest decimal string that round-trips to the same double.
std::string format_real(double x);

/// Fixed-point with the given number of decimals.
std::string format_fixed(double x, int decimals);

struct TableFormat {
  bool paper_rounding = false;  ///< crossings rounded up to 0.1
  int decimals = 4;
};

std::string table_csv(const InterceptionTable& table, std::string_view parameter,
                      const TableFormat& fmt = {});
nlohmann::json table_json(const InterceptionTable& table, std::string_view parameter,
                          const TableFormat& fmt = {});

std::string sweep_csv(const SweepResult& sweep);
nlohmann::json sweep_json(const SweepResult& sweep);

nlohmann::json pattern_json(const PatternReport& report, double split_value);
nlohmann::json bracket_json(const BracketTrace& trace);
std::string bracket_csv(const BracketTrace& trace);
nlohmann::json scaling_json(const ScalingFit& fit, std::span<const ScalingPoint> points);
std::string scaling_csv(const ScalingFit& fit, std::span<const ScalingPoint> points);
nlohmann::json verdict_json(const ConversionVerdict& verdict);
nlohmann::json excited_json(const ExcitedComparison& cmp);

/// Writes through a temporary file in the same directory and renames it
/// into place, so readers never observe a partially written file.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace elocc
