#pragma once

#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include "worldsys/dynamics.hpp"

namespace worldsys {

/// Flat `key = value` parameter file; `#` starts a comment, blank lines are
/// ignored, a repeated key is a parse error.
class ParamSet {
 public:
  static ParamSet parse(std::istream& in, const std::string& source = "<params>");
  static ParamSet load(const std::filesystem::path& path);

  [[nodiscard]] bool has(std::string_view key) const;
  [[nodiscard]] double number(std::string_view key) const;
  [[nodiscard]] double number_or(std::string_view key, double fallback) const;
  [[nodiscard]] std::string text_or(std::string_view key, std::string fallback) const;
  [[nodiscard]] const std::string& source() const noexcept { return source_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }

  /// ValidationError naming the first key outside `known`.
  void reject_unknown(std::initializer_list<std::string_view> known) const;

  void set(const std::string& key, const std::string& value);

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::string where(const Entry& e) const;

  std::string source_;
  std::map<std::string, Entry, std::less<>> entries_;
};

/// `model` one of compact, kuznetsian, exptech, logistic, coalition. Keys:
///   all:        t_start, t_end, integrator (euler|rk4), step, stride, overflow_guard
///   compact:    a, b_ratio, m, N0, S0
///   kuznetsian: alpha, r_tech, b, a, m, g_bar, T0, N0, adjustment (dynamic|instantaneous)
///   exptech:    alpha, r_tech, c, a, m, g_bar, T0, N0
///   logistic:   a1, a2, b, N0
///   coalition:  a0, k, N0
/// For the Kremer models a missing T0 puts the start at the equilibrium
/// T0 = g_bar N0^(1-alpha) / r_tech.
SimulationTrace run_model(const std::string& model, const ParamSet& params);

CompactModelParams compact_params(const ParamSet& ps);
KremerParams kremer_params(const ParamSet& ps, std::string_view tech_key);
SimulationOptions simulation_options(const ParamSet& ps, IntegratorSpec fallback);

}  // namespace worldsys
