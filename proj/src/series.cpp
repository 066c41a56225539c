#include "worldsys/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "worldsys/error.hpp"
#include "worldsys/format.hpp"

namespace worldsys {

YearValueSeries::YearValueSeries(std::vector<Observation> points) : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (!std::isfinite(p.year) || !std::isfinite(p.value)) {
      throw ValidationError("non-finite observation at index " + std::to_string(i));
    }
    if (i > 0 && !(p.year > points_[i - 1].year)) {
      throw ValidationError("years not strictly increasing at year " + format_double(p.year));
    }
  }
}

YearValueSeries YearValueSeries::from_columns(std::span<const double> years,
                                              std::span<const double> values) {
  if (years.size() != values.size()) {
    throw ValidationError("year and value columns differ in length");
  }
  std::vector<Observation> pts;
  pts.reserve(years.size());
  for (std::size_t i = 0; i < years.size(); ++i) pts.push_back({years[i], values[i]});
  return YearValueSeries(std::move(pts));
}

std::vector<double> YearValueSeries::years() const {
  std::vector<double> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.year);
  return out;
}

std::vector<double> YearValueSeries::values() const {
  std::vector<double> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.value);
  return out;
}

double YearValueSeries::first_year() const {
  if (points_.empty()) throw ValidationError("empty series");
  return points_.front().year;
}

double YearValueSeries::last_year() const {
  if (points_.empty()) throw ValidationError("empty series");
  return points_.back().year;
}

std::optional<double> YearValueSeries::value_at(double year) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), year,
                             [](const Observation& p, double y) { return p.year < y; });
  if (it == points_.end() || it->year != year) return std::nullopt;
  return it->value;
}

YearValueSeries YearValueSeries::slice(double from, double to) const {
  std::vector<Observation> pts;
  std::copy_if(points_.begin(), points_.end(), std::back_inserter(pts),
               [&](const Observation& p) { return p.year >= from && p.year <= to; });
  return YearValueSeries(std::move(pts));
}

YearValueSeries YearValueSeries::shifted(double dt) const {
  auto pts = points_;
  for (auto& p : pts) p.year += dt;
  return YearValueSeries(std::move(pts));
}

YearValueSeries YearValueSeries::scaled(double factor) const {
  auto pts = points_;
  for (auto& p : pts) p.value *= factor;
  return YearValueSeries(std::move(pts));
}

bool YearValueSeries::all_positive() const noexcept {
  return std::all_of(points_.begin(), points_.end(), [](const Observation& p) { return p.value > 0; });
}

bool YearValueSeries::same_years(const YearValueSeries& other) const noexcept {
  return std::equal(points_.begin(), points_.end(), other.points_.begin(), other.points_.end(),
                    [](const Observation& a, const Observation& b) { return a.year == b.year; });
}

}  // namespace worldsys
