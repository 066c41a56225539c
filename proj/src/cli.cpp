#include "worldsys/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <ostream>
#include <sstream>

#include "worldsys/dataset.hpp"
#include "worldsys/error.hpp"
#include "worldsys/format.hpp"
#include "worldsys/params.hpp"
#include "worldsys/report.hpp"
#include "worldsys/reproduce.hpp"

#ifndef WORLDSYS_DEFAULT_DATA_DIR
#define WORLDSYS_DEFAULT_DATA_DIR "data"
#endif

namespace fs = std::filesystem;

namespace worldsys {

namespace {

constexpr const char* kBenchmarkFile = "maddison_world_1_1973.csv";
constexpr const char* kExtendedFile = "maddison_world_1_2002.csv";

fs::path data_dir() {
  const char* env = std::getenv("WORLDSYS_DATA_DIR");
  return env && *env ? fs::path(env) : fs::path(WORLDSYS_DEFAULT_DATA_DIR);
}

struct Globals {
  std::string data;
  std::string out;
  std::string format = "json";
  double m = kDefaultThreshold;
};

std::string csv_cell(const Json& v) {
  std::string s;
  if (v.is_null()) return "";
  if (v.is_string()) {
    s = v.get<std::string>();
  } else if (v.is_number_float()) {
    s = format_double(v.get<double>());
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + csv_cell(v[i]);
  } else {
    s = v.dump();
  }
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return s;
}

// Flat records to CSV with the union of keys in first-seen order.
std::string to_csv(const std::vector<Json>& records) {
  std::vector<std::string> keys;
  for (const auto& r : records) {
    for (const auto& [k, v] : r.items()) {
      if (v.is_object()) continue;
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    }
  }
  std::string out;
  for (std::size_t i = 0; i < keys.size(); ++i) out += (i ? "," : "") + keys[i];
  out += '\n';
  for (const auto& r : records) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i) out += ',';
      if (r.contains(keys[i])) out += csv_cell(r[keys[i]]);
    }
    out += '\n';
  }
  return out;
}

void emit(const Globals& g, std::ostream& out, const std::string& text) {
  if (g.out.empty()) {
    out << text;
  } else {
    write_file_atomic(g.out, text);
  }
}

void emit_records(const Globals& g, std::ostream& out, const std::vector<Json>& records) {
  if (g.format == "csv") {
    emit(g, out, to_csv(records));
  } else {
    emit(g, out, dump(records.size() == 1 ? records.front() : Json(records)));
  }
}

MacroDataset load(const Globals& g, const char* default_file) {
  return load_dataset(g.data.empty() ? data_dir() / default_file : fs::path(g.data), g.m);
}

struct FitArgs {
  std::string series = "population";
  std::string k = "1";
  std::string convention = "integer";
  std::string objective = "max_correlation";
  std::optional<double> from;
  std::optional<double> to;
  double horizon = 200;
};

int cmd_fit(const Globals& g, const FitArgs& a, std::ostream& out) {
  MacroDataset d = load(g, kExtendedFile);
  // The bundled extended table is fitted over the published 1-1973 window
  // unless a range is given.
  const bool bundled = g.data.empty();
  const double from = a.from.value_or(-1e300);
  const double to = a.to.value_or(bundled ? 1973.0 : 1e300);
  d = d.restricted(from, to);
  const YearValueSeries& s = a.series == "population" ? d.population() : d.gdp();

  FitOptions opt;
  if (a.k == "free") {
    opt.k = std::nullopt;
  } else {
    std::istringstream ks(a.k);
    double k = 0;
    if (!(ks >> k) || !ks.eof() || !(k > 0)) throw ValidationError("--k must be a positive number or 'free'");
    opt.k = k;
  }
  opt.convention = a.convention == "integer" ? Convention::integer_t0 : Convention::continuous_t0;
  opt.objective = a.objective == "least_squares" ? Objective::least_squares : Objective::max_correlation;
  opt.horizon = a.horizon;
  const TrendFit fit = fit_trend(s, opt);
  emit_records(g, out, {to_json(fit, a.series)});
  return kExitOk;
}

struct SimArgs {
  std::string model;
  std::string params;
  std::vector<std::string> overrides;
};

int cmd_simulate(const Globals& g, const SimArgs& a, std::ostream& out, std::ostream& err) {
  ParamSet ps = a.params.empty() ? ParamSet{} : ParamSet::load(a.params);
  for (const auto& kv : a.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ParseError("--set expects key=value, got '" + kv + "'");
    ps.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  const SimulationTrace trace = run_model(a.model, ps);
  if (g.format == "csv") {
    std::ostringstream csv;
    write_trace_csv(csv, trace);
    emit(g, out, csv.str());
  } else {
    Json j = trace_summary(trace);
    Json rows = Json::array();
    for (std::size_t i = 0; i < trace.size(); ++i) {
      Json r = {{"year", trace.years[i]}, {"N", trace.N[i]}};
      if (trace.has_surplus()) r["S"] = trace.S[i];
      if (!trace.G.empty()) r["G"] = trace.G[i];
      if (trace.has_technology()) r["T"] = trace.T[i];
      rows.push_back(r);
    }
    j["trace"] = rows;
    emit(g, out, dump(j));
  }

  std::ostream& summary = g.out.empty() ? err : out;
  summary << trace.model << ": " << to_string(trace.termination);
  if (trace.size() > 0) {
    const std::size_t i = trace.size() - 1;
    summary << ", last stored year " << format_double(trace.years[i]) << ", N "
            << format_significant(trace.N[i], 6);
    if (trace.has_surplus()) summary << ", S " << format_significant(trace.S[i], 6);
    if (!trace.G.empty()) summary << ", G " << format_significant(trace.G[i], 6);
  }
  if (trace.abort_year) summary << ", aborted at t=" << format_double(*trace.abort_year);
  summary << '\n';
  return trace.completed() ? kExitOk : kExitNumerical;
}

struct StatsArgs {
  std::string test = "correlation";
  std::optional<double> from;
  std::optional<double> to;
  std::string rate = "log";
  std::string anchor = "start";
  bool through_origin = false;
};

int cmd_stats(const Globals& g, const StatsArgs& a, std::ostream& out) {
  const char* file = a.test == "proportionality" ? kExtendedFile : kBenchmarkFile;
  MacroDataset d = load(g, file).restricted(a.from.value_or(-1e300), a.to.value_or(1e300));
  const Anchor anchor = a.anchor == "midpoint" ? Anchor::midpoint : Anchor::start;
  std::vector<Json> records;
  if (a.test == "correlation") {
    const auto levels = interval_levels(derive_surplus_series(d), anchor);
    const auto rates =
        derive_growth_rates(d.population(), a.rate == "simple" ? RateMode::simple : RateMode::log, anchor)
            .rel_rates();
    Json rec = {{"test", "relative_growth_vs_surplus"}, {"rate", a.rate}, {"anchor", a.anchor}};
    rec.update(to_json(correlation_test(levels, rates)));
    records.push_back(rec);
  } else if (a.test == "rates") {
    const auto ds = derive_growth_rates(derive_surplus_series(d), RateMode::simple).abs_rates();
    const auto dn = derive_growth_rates(d.population(), RateMode::simple).abs_rates();
    Json rec = {{"test", "population_rate_on_surplus_rate"}};
    rec.update(to_json(ols(ds, dn, a.through_origin)));
    records.push_back(rec);
  } else if (a.test == "proportionality") {
    Json rec = {{"test", "surplus_on_population"}};
    rec.update(to_json(surplus_population_proportionality(d, d.years().front(), d.years().back())));
    records.push_back(rec);
  } else {
    for (int degree : {1, 2}) {
      Json rec = {{"test", "gdp_on_population"}};
      rec.update(to_json(poly_fit(d.population().values(), d.gdp().values(), degree)));
      records.push_back(rec);
    }
  }
  emit_records(g, out, records);
  return kExitOk;
}

struct ReproArgs {
  std::string extended;
  bool no_extended = false;
  bool no_figures = false;
};

int cmd_reproduce(const Globals& g, const ReproArgs& a, std::ostream& out) {
  if (g.out.empty()) throw ValidationError("reproduce needs --out DIR");
  ReproduceInputs in;
  in.benchmark = g.data.empty() ? data_dir() / kBenchmarkFile : fs::path(g.data);
  if (!a.no_extended) {
    if (!a.extended.empty()) {
      in.extended = fs::path(a.extended);
    } else if (g.data.empty()) {
      in.extended = data_dir() / kExtendedFile;
    }
  }
  in.out_dir = g.out;
  in.m = g.m;
  in.write_figures = !a.no_figures;
  const ReportBundle bundle = reproduce(in);
  out << bundle.summary_table();
  return bundle.ok() ? kExitOk : kExitPartial;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fits, simulates and tests world population and GDP growth models."};
  app.name("worldsys");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(version()));

  Globals g;
  app.add_option("--data", g.data, "dataset CSV (default: bundled tables in $WORLDSYS_DATA_DIR)");
  app.add_option("--out", g.out, "output file (fit, simulate, stats) or directory (reproduce)");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--m", g.m, "subsistence threshold, dollars per person per year");

  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "fit C/(t0 - t)^k to a series");
  fit->add_option("--series", fa.series)->check(CLI::IsMember({"population", "gdp"}));
  fit->add_option("--k", fa.k, "exponent, or 'free'");
  fit->add_option("--convention", fa.convention)->check(CLI::IsMember({"integer", "continuous"}));
  fit->add_option("--objective", fa.objective)->check(CLI::IsMember({"max_correlation", "least_squares"}));
  fit->add_option("--from", fa.from, "first year included");
  fit->add_option("--to", fa.to, "last year included");
  fit->add_option("--horizon", fa.horizon, "years past the last point searched for t0");

  SimArgs sa;
  auto* sim = app.add_subcommand("simulate", "run a dynamical model and write its trace");
  sim->add_option("--model", sa.model)
      ->required()
      ->check(CLI::IsMember({"compact", "kuznetsian", "exptech", "logistic", "coalition"}));
  sim->add_option("--params", sa.params, "key=value parameter file");
  sim->add_option("--set", sa.overrides, "override one parameter, key=value");

  StatsArgs st;
  auto* stats = app.add_subcommand("stats", "regressions and correlations");
  stats->add_option("--test", st.test)
      ->check(CLI::IsMember({"correlation", "rates", "proportionality", "curve"}));
  stats->add_option("--from", st.from);
  stats->add_option("--to", st.to);
  stats->add_option("--rate", st.rate)->check(CLI::IsMember({"simple", "log"}));
  stats->add_option("--anchor", st.anchor)->check(CLI::IsMember({"start", "midpoint"}));
  stats->add_flag("--through-origin", st.through_origin);

  ReproArgs ra;
  auto* repro = app.add_subcommand("reproduce", "recompute every published statistic into --out DIR");
  repro->add_option("--extended", ra.extended, "extended table with annual rows");
  repro->add_flag("--no-extended", ra.no_extended, "skip the checks that need the extended table");
  repro->add_flag("--no-figures", ra.no_figures);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*fit) return cmd_fit(g, fa, out);
    if (*sim) return cmd_simulate(g, sa, out, err);
    if (*stats) return cmd_stats(g, st, out);
    if (*repro) return cmd_reproduce(g, ra, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace worldsys
