#pragma once

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "worldsys/dataset.hpp"
#include "worldsys/series.hpp"

namespace testing {

inline std::filesystem::path data_file(const std::string& name) {
  return std::filesystem::path(WORLDSYS_DATA_DIR) / name;
}

inline std::filesystem::path params_file(const std::string& name) {
  return std::filesystem::path(WORLDSYS_PARAMS_DIR) / name;
}

inline worldsys::MacroDataset benchmarks() {
  return worldsys::load_dataset(data_file("maddison_world_1_1973.csv"));
}

inline worldsys::MacroDataset extended() {
  return worldsys::load_dataset(data_file("maddison_world_1_2002.csv"));
}

inline worldsys::MacroDataset parse(const std::string& text, double m = 440) {
  std::istringstream in(text);
  return worldsys::parse_dataset(in, m, "test.csv");
}

inline worldsys::YearValueSeries series(std::vector<double> years, std::vector<double> values) {
  return worldsys::YearValueSeries::from_columns(years, values);
}

inline double rel_err(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace testing
