#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "worldsys/series.hpp"

namespace worldsys {

/// Subsistence-plus-infrastructure threshold used throughout, dollars per
/// person per year.
inline constexpr double kDefaultThreshold = 440.0;

/// Paired world population (millions) and GDP (billions) over identical years
/// with threshold `m` (dollars per person per year). Every point has
/// per-capita GDP 1000*G/N strictly above m.
class MacroDataset {
 public:
  /// Validates the pairing and the threshold invariant; throws
  /// ValidationError naming the offending year.
  static MacroDataset create(YearValueSeries population, YearValueSeries gdp, double m,
                             std::vector<std::string> notes = {});

  [[nodiscard]] const YearValueSeries& population() const noexcept { return population_; }
  [[nodiscard]] const YearValueSeries& gdp() const noexcept { return gdp_; }
  [[nodiscard]] double threshold() const noexcept { return m_; }
  /// Per-point provenance annotation; empty string where the file had none.
  [[nodiscard]] const std::vector<std::string>& notes() const noexcept { return notes_; }
  [[nodiscard]] std::size_t size() const noexcept { return population_.size(); }
  [[nodiscard]] std::vector<double> years() const { return population_.years(); }

  /// Dollars per person per year.
  [[nodiscard]] YearValueSeries per_capita_gdp() const;

  /// Rows with from <= year <= to; notes follow their rows.
  [[nodiscard]] MacroDataset restricted(double from, double to) const;

 private:
  MacroDataset(YearValueSeries p, YearValueSeries g, double m, std::vector<std::string> notes)
      : population_(std::move(p)), gdp_(std::move(g)), m_(m), notes_(std::move(notes)) {}

  YearValueSeries population_;
  YearValueSeries gdp_;
  double m_;
  std::vector<std::string> notes_;
};

/// Reads `year,population_millions,gdp_billions[,note]` CSV text.
/// `source` names the input in diagnostics. Requires at least two rows.
MacroDataset parse_dataset(std::istream& in, double m, const std::string& source = "<input>");

/// Opens and parses `path`; IoError if it cannot be read.
MacroDataset load_dataset(const std::filesystem::path& path, double m = kDefaultThreshold);

/// S = 1000*G/N - m for every point, dollars per person per year.
YearValueSeries derive_surplus_series(const MacroDataset& d);

enum class RateMode { simple, log };

/// Level a relative rate is measured against.
enum class Anchor { start, midpoint };

struct GrowthInterval {
  double t_start;
  double t_end;
  double abs_rate;         // units per year
  double rel_rate;         // per year
  double level_at_anchor;  // value at t_start, or mean of the endpoint values
};

struct GrowthRateSeries {
  std::vector<GrowthInterval> intervals;

  [[nodiscard]] std::size_t size() const noexcept { return intervals.size(); }
  [[nodiscard]] std::vector<double> abs_rates() const;
  [[nodiscard]] std::vector<double> rel_rates() const;
  [[nodiscard]] std::vector<double> anchor_levels() const;
};

/// One interval per consecutive pair of points. Log mode needs positive
/// values (ValidationError otherwise).
GrowthRateSeries derive_growth_rates(const YearValueSeries& s, RateMode mode,
                                     Anchor anchor = Anchor::start);

/// Level of `s` attached to each consecutive interval under `anchor`.
std::vector<double> interval_levels(const YearValueSeries& s, Anchor anchor = Anchor::start);

}  // namespace worldsys
