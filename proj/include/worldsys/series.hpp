#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace worldsys {

struct Observation {
  double year;   // calendar year CE
  double value;  // units carried by context
};

/// Ordered (year, value) observations with strictly increasing, finite years
/// and finite values.
class YearValueSeries {
 public:
  YearValueSeries() = default;

  /// Throws ValidationError if years are not strictly increasing or any
  /// entry is non-finite.
  explicit YearValueSeries(std::vector<Observation> points);

  static YearValueSeries from_columns(std::span<const double> years,
                                      std::span<const double> values);

  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
  [[nodiscard]] bool empty() const noexcept { return points_.empty(); }
  [[nodiscard]] const Observation& operator[](std::size_t i) const { return points_[i]; }
  [[nodiscard]] const std::vector<Observation>& points() const noexcept { return points_; }
  [[nodiscard]] auto begin() const noexcept { return points_.begin(); }
  [[nodiscard]] auto end() const noexcept { return points_.end(); }

  [[nodiscard]] std::vector<double> years() const;
  [[nodiscard]] std::vector<double> values() const;
  [[nodiscard]] double first_year() const;
  [[nodiscard]] double last_year() const;

  /// Value recorded at exactly `year`, if present.
  [[nodiscard]] std::optional<double> value_at(double year) const;

  /// Points with from <= year <= to.
  [[nodiscard]] YearValueSeries slice(double from, double to) const;
  [[nodiscard]] YearValueSeries shifted(double dt) const;
  [[nodiscard]] YearValueSeries scaled(double factor) const;

  [[nodiscard]] bool all_positive() const noexcept;
  [[nodiscard]] bool same_years(const YearValueSeries& other) const noexcept;

 private:
  std::vector<Observation> points_;
};

}  // namespace worldsys
