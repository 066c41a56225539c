#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "worldsys/report.hpp"

namespace worldsys {

struct ReproduceInputs {
  std::filesystem::path benchmark;                // benchmark-year table
  std::optional<std::filesystem::path> extended;  // adds annual rows, needed for some checks
  std::filesystem::path out_dir;
  double m = kDefaultThreshold;
  bool write_figures = true;
};

enum class CheckStatus { pass, fail, skip, error, info };

const char* to_string(CheckStatus s);

struct Check {
  std::string id;
  std::string statistic;
  std::optional<double> computed;
  std::string paper;        // value as printed, if any
  std::string requirement;  // tolerance the check applies
  CheckStatus status = CheckStatus::info;
  std::string note;
};

struct ReportBundle {
  std::vector<Check> checks;
  Json fits = Json::array();
  Json regressions = Json::object();
  Json traces = Json::array();
  std::vector<std::filesystem::path> figures;  // relative to out_dir
  Json provenance = Json::object();

  [[nodiscard]] std::size_t count(CheckStatus s) const;
  /// No check failed or errored.
  [[nodiscard]] bool ok() const;
  [[nodiscard]] Json to_json() const;
  /// Fixed-width text table, one row per check.
  [[nodiscard]] std::string summary_table() const;
};

/// Runs every reproduction step; a failing step is recorded and the rest
/// still run. Writes report.json, summary.txt, compact_trace.csv and
/// figures/*.svg under out_dir. IoError before any computation if out_dir
/// cannot be written.
ReportBundle reproduce(const ReproduceInputs& in);

}  // namespace worldsys
