#include "worldsys/params.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "worldsys/error.hpp"

namespace worldsys {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool valid_key(std::string_view k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

}  // namespace

ParamSet ParamSet::parse(std::istream& in, const std::string& source) {
  ParamSet ps;
  ps.source_ = source;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (line == 1 && raw.rfind("\xEF\xBB\xBF", 0) == 0) raw.erase(0, 3);
    const auto hash = raw.find('#');
    const std::string text = trim(std::string_view(raw).substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    const std::string where = source + ":" + std::to_string(line);
    if (eq == std::string::npos) throw ParseError(where + ": expected key=value");
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    if (!valid_key(key)) throw ParseError(where + ": invalid key '" + key + "'");
    if (value.empty()) throw ParseError(where + ": empty value for '" + key + "'");
    if (!ps.entries_.emplace(key, Entry{value, line}).second) {
      throw ParseError(where + ": duplicate key '" + key + "'");
    }
  }
  return ps;
}

ParamSet ParamSet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open parameter file " + path.string());
  return parse(in, path.string());
}

bool ParamSet::has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

std::string ParamSet::where(const Entry& e) const {
  return e.line > 0 ? source_ + ":" + std::to_string(e.line) : source_;
}

double ParamSet::number(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw ValidationError(source_ + ": missing parameter '" + std::string(key) + "'");
  }
  const std::string& v = it->second.value;
  double out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ParseError(where(it->second) + ": '" + std::string(key) + "' is not a number: " + v);
  }
  return out;
}

double ParamSet::number_or(std::string_view key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::string ParamSet::text_or(std::string_view key, std::string fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second.value;
}

void ParamSet::reject_unknown(std::initializer_list<std::string_view> known) const {
  for (const auto& [key, entry] : entries_) {
    bool ok = false;
    for (auto k : known) ok = ok || k == key;
    if (!ok) throw ValidationError(where(entry) + ": unknown parameter '" + key + "'");
  }
}

void ParamSet::set(const std::string& key, const std::string& value) {
  if (!valid_key(key)) throw ValidationError("invalid parameter key '" + key + "'");
  entries_[key] = Entry{value, 0};
}

SimulationOptions simulation_options(const ParamSet& ps, IntegratorSpec fallback) {
  SimulationOptions opt;
  const std::string method = ps.text_or("integrator", to_string(fallback.method));
  if (method != "euler" && method != "rk4") {
    throw ValidationError(ps.source() + ": integrator must be euler or rk4, got '" + method + "'");
  }
  const IntegratorSpec base = method == to_string(fallback.method) ? fallback
                              : method == "euler"                  ? IntegratorSpec::euler_annual()
                                                                   : IntegratorSpec::rk4();
  opt.integrator = {base.method, ps.number_or("step", base.step)};
  opt.stride = ps.number_or("stride", 1.0);
  opt.overflow_guard = ps.number_or("overflow_guard", opt.overflow_guard);
  return opt;
}

CompactModelParams compact_params(const ParamSet& ps) {
  CompactModelParams p;
  p.a = ps.number_or("a", p.a);
  p.b_ratio = ps.number_or("b_ratio", p.b_ratio);
  p.m = ps.number_or("m", p.m);
  p.N0 = ps.number_or("N0", p.N0);
  p.S0 = ps.number_or("S0", p.S0);
  p.t_start = ps.number_or("t_start", p.t_start);
  p.t_end = ps.number_or("t_end", p.t_end);
  return p;
}

KremerParams kremer_params(const ParamSet& ps, std::string_view tech_key) {
  KremerParams p;
  p.alpha = ps.number("alpha");
  p.r_tech = ps.number_or("r_tech", p.r_tech);
  p.b_or_c = ps.number(tech_key);
  p.a = ps.number("a");
  p.m = ps.number_or("m", p.m);
  p.g_bar = ps.number_or("g_bar", p.g_bar);
  p.N0 = ps.number("N0");
  p.T0 = ps.has("T0") ? ps.number("T0") : p.g_bar * std::pow(p.N0, 1.0 - p.alpha) / p.r_tech;
  return p;
}

namespace {

TimeSpan span_of(const ParamSet& ps) { return {ps.number("t_start"), ps.number("t_end")}; }

#define WORLDSYS_COMMON_KEYS "t_start", "t_end", "integrator", "step", "stride", "overflow_guard"

}  // namespace

SimulationTrace run_model(const std::string& model, const ParamSet& ps) {
  const IntegratorSpec rk4 = IntegratorSpec::rk4();
  if (model == "compact") {
    ps.reject_unknown({WORLDSYS_COMMON_KEYS, "a", "b_ratio", "m", "N0", "S0"});
    return simulate_compact(compact_params(ps), simulation_options(ps, IntegratorSpec::euler_annual()));
  }
  if (model == "kuznetsian") {
    ps.reject_unknown({WORLDSYS_COMMON_KEYS, "alpha", "r_tech", "b", "a", "m", "g_bar", "T0", "N0",
                       "adjustment"});
    const std::string adj = ps.text_or("adjustment", "dynamic");
    if (adj != "dynamic" && adj != "instantaneous") {
      throw ValidationError(ps.source() + ": adjustment must be dynamic or instantaneous");
    }
    return simulate_kuznetsian(kremer_params(ps, "b"), span_of(ps), simulation_options(ps, rk4),
                               adj == "dynamic" ? PopulationAdjustment::dynamic
                                                : PopulationAdjustment::instantaneous);
  }
  if (model == "exptech") {
    ps.reject_unknown({WORLDSYS_COMMON_KEYS, "alpha", "r_tech", "c", "a", "m", "g_bar", "T0", "N0"});
    return simulate_exponential_tech(kremer_params(ps, "c"), span_of(ps), simulation_options(ps, rk4));
  }
  if (model == "logistic") {
    ps.reject_unknown({WORLDSYS_COMMON_KEYS, "a1", "a2", "b", "N0"});
    const LogisticParams p{ps.number("a1"), ps.number("a2"), ps.number("b"), ps.number("N0")};
    return simulate_logistic(p, span_of(ps), simulation_options(ps, rk4));
  }
  if (model == "coalition") {
    ps.reject_unknown({WORLDSYS_COMMON_KEYS, "a0", "k", "N0"});
    const CoalitionParams p{ps.number("a0"), ps.number("k"), ps.number("N0")};
    return simulate_coalition(p, span_of(ps), simulation_options(ps, rk4));
  }
  throw ValidationError("unknown model '" + model +
                        "' (expected compact, kuznetsian, exptech, logistic or coalition)");
}

}  // namespace worldsys
