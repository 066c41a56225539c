#include "worldsys/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "worldsys/error.hpp"
#include "worldsys/format.hpp"

namespace worldsys {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Splits on commas; a field wrapped in double quotes may contain commas and
// doubled quotes.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(trim(field));
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(trim(field));
  return out;
}

double parse_number(const std::string& text, const std::string& where) {
  double v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw ParseError(where + ": not a number: '" + text + "'");
  }
  return v;
}

}  // namespace

MacroDataset MacroDataset::create(YearValueSeries population, YearValueSeries gdp, double m,
                                  std::vector<std::string> notes) {
  if (!(m > 0) || !std::isfinite(m)) throw ValidationError("threshold m must be positive");
  if (!population.same_years(gdp)) {
    throw ValidationError("population and GDP series cover different years");
  }
  if (notes.empty()) notes.resize(population.size());
  if (notes.size() != population.size()) throw ValidationError("one note per row required");
  for (std::size_t i = 0; i < population.size(); ++i) {
    const double year = population[i].year;
    const double n = population[i].value;
    const double g = gdp[i].value;
    if (!(n > 0)) throw ValidationError("year " + format_double(year) + ": population must be positive");
    if (!(g > 0)) throw ValidationError("year " + format_double(year) + ": GDP must be positive");
    const double per_capita = 1000.0 * g / n;
    if (!(per_capita > m)) {
      throw ValidationError("year " + format_double(year) + ": per capita GDP " +
                            format_double(per_capita) + " does not exceed threshold " +
                            format_double(m));
    }
  }
  return MacroDataset(std::move(population), std::move(gdp), m, std::move(notes));
}

YearValueSeries MacroDataset::per_capita_gdp() const {
  std::vector<Observation> pts;
  pts.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    pts.push_back({population_[i].year, 1000.0 * gdp_[i].value / population_[i].value});
  }
  return YearValueSeries(std::move(pts));
}

MacroDataset MacroDataset::restricted(double from, double to) const {
  std::vector<Observation> p, g;
  std::vector<std::string> notes;
  for (std::size_t i = 0; i < size(); ++i) {
    const double y = population_[i].year;
    if (y < from || y > to) continue;
    p.push_back(population_[i]);
    g.push_back(gdp_[i]);
    notes.push_back(notes_[i]);
  }
  return MacroDataset(YearValueSeries(std::move(p)), YearValueSeries(std::move(g)), m_,
                      std::move(notes));
}

MacroDataset parse_dataset(std::istream& in, double m, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<Observation> pop, gdp;
  std::vector<std::string> notes;

  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
      line.erase(0, 3);
    }
    if (trim(line).empty()) continue;
    auto fields = split_csv(line);
    const std::string where = source + ":" + std::to_string(line_no);
    if (!header_seen) {
      if (fields.size() < 3 || fields[0] != "year" || fields[1] != "population_millions" ||
          fields[2] != "gdp_billions" || (fields.size() == 4 && fields[3] != "note") ||
          fields.size() > 4) {
        throw ParseError(where + ": expected header 'year,population_millions,gdp_billions[,note]'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() < 3 || fields.size() > 4) {
      throw ParseError(where + ": expected 3 or 4 fields, got " + std::to_string(fields.size()));
    }
    const double year = parse_number(fields[0], where);
    const double n = parse_number(fields[1], where);
    const double g = parse_number(fields[2], where);
    if (!std::isfinite(year) || !std::isfinite(n) || !std::isfinite(g)) {
      throw ValidationError(where + ": non-finite value");
    }
    if (!pop.empty() && !(year > pop.back().year)) {
      throw ValidationError(where + ": year " + format_double(year) + " is not after " +
                            format_double(pop.back().year));
    }
    if (!(n > 0) || !(g > 0)) {
      throw ValidationError(where + ": year " + format_double(year) +
                            ": population and GDP must be positive");
    }
    if (!(1000.0 * g / n > m)) {
      throw ValidationError(where + ": year " + format_double(year) + ": per capita GDP " +
                            format_double(1000.0 * g / n) + " does not exceed threshold " +
                            format_double(m));
    }
    pop.push_back({year, n});
    gdp.push_back({year, g});
    notes.push_back(fields.size() == 4 ? fields[3] : std::string{});
  }
  if (!header_seen) throw ParseError(source + ": empty file");
  if (pop.size() < 2) {
    throw ValidationError(source + ": insufficient points (" + std::to_string(pop.size()) +
                          " row(s), at least 2 required)");
  }
  return MacroDataset::create(YearValueSeries(std::move(pop)), YearValueSeries(std::move(gdp)), m,
                              std::move(notes));
}

MacroDataset load_dataset(const std::filesystem::path& path, double m) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset '" + path.string() + "'");
  return parse_dataset(in, m, path.string());
}

YearValueSeries derive_surplus_series(const MacroDataset& d) {
  std::vector<Observation> pts;
  pts.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double n = d.population()[i].value;
    const double g = d.gdp()[i].value;
    pts.push_back({d.population()[i].year, 1000.0 * g / n - d.threshold()});
  }
  return YearValueSeries(std::move(pts));
}

std::vector<double> GrowthRateSeries::abs_rates() const {
  std::vector<double> out;
  for (const auto& iv : intervals) out.push_back(iv.abs_rate);
  return out;
}

std::vector<double> GrowthRateSeries::rel_rates() const {
  std::vector<double> out;
  for (const auto& iv : intervals) out.push_back(iv.rel_rate);
  return out;
}

std::vector<double> GrowthRateSeries::anchor_levels() const {
  std::vector<double> out;
  for (const auto& iv : intervals) out.push_back(iv.level_at_anchor);
  return out;
}

std::vector<double> interval_levels(const YearValueSeries& s, Anchor anchor) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    out.push_back(anchor == Anchor::start ? s[i].value : 0.5 * (s[i].value + s[i + 1].value));
  }
  return out;
}

GrowthRateSeries derive_growth_rates(const YearValueSeries& s, RateMode mode, Anchor anchor) {
  if (s.size() < 2) throw ValidationError("growth rates need at least 2 points");
  if (mode == RateMode::log && !s.all_positive()) {
    throw ValidationError("log growth rates need strictly positive values");
  }
  GrowthRateSeries out;
  const auto levels = interval_levels(s, anchor);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const auto& a = s[i];
    const auto& b = s[i + 1];
    const double dt = b.year - a.year;
    GrowthInterval iv{a.year, b.year, (b.value - a.value) / dt, 0.0, levels[i]};
    if (mode == RateMode::log) {
      iv.rel_rate = (std::log(b.value) - std::log(a.value)) / dt;
    } else {
      iv.rel_rate = iv.level_at_anchor != 0 ? iv.abs_rate / iv.level_at_anchor
                                            : (iv.abs_rate == 0 ? 0.0 : NAN);
    }
    out.intervals.push_back(iv);
  }
  return out;
}

}  // namespace worldsys
