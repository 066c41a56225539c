#include "worldsys/reproduce.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "worldsys/dataset.hpp"
#include "worldsys/error.hpp"
#include "worldsys/format.hpp"
#include "worldsys/svg.hpp"

namespace fs = std::filesystem;

namespace worldsys {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
    case CheckStatus::error: return "error";
    case CheckStatus::info: return "info";
  }
  return "unknown";
}

std::size_t ReportBundle::count(CheckStatus s) const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.status == s ? 1 : 0;
  return n;
}

bool ReportBundle::ok() const { return count(CheckStatus::fail) == 0 && count(CheckStatus::error) == 0; }

Json ReportBundle::to_json() const {
  Json j;
  j["tool"] = "worldsys";
  j["version"] = version();
  j["provenance"] = provenance;
  j["fits"] = fits;
  j["regressions"] = regressions;
  j["traces"] = traces;
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json e;
    e["id"] = c.id;
    e["statistic"] = c.statistic;
    e["computed"] = c.computed && std::isfinite(*c.computed) ? Json(*c.computed) : Json(nullptr);
    e["paper"] = c.paper;
    e["requirement"] = c.requirement;
    e["status"] = to_string(c.status);
    if (!c.note.empty()) e["note"] = c.note;
    cs.push_back(e);
  }
  j["checks"] = cs;
  Json figs = Json::array();
  for (const auto& f : figures) figs.push_back(f.generic_string());
  j["figures"] = figs;
  j["counts"] = {{"pass", count(CheckStatus::pass)},   {"fail", count(CheckStatus::fail)},
                 {"skip", count(CheckStatus::skip)},   {"error", count(CheckStatus::error)},
                 {"info", count(CheckStatus::info)}};
  return j;
}

std::string ReportBundle::summary_table() const {
  std::ostringstream o;
  o << std::left << std::setw(28) << "id" << std::setw(44) << "statistic" << std::setw(14) << "computed"
    << std::setw(14) << "paper" << std::setw(26) << "requirement" << "status\n";
  for (const auto& c : checks) {
    const std::string value = c.computed ? format_significant(*c.computed, 5) : "-";
    o << std::setw(28) << c.id << std::setw(44) << c.statistic << std::setw(14) << value << std::setw(14)
      << (c.paper.empty() ? "-" : c.paper) << std::setw(26) << (c.requirement.empty() ? "-" : c.requirement)
      << to_string(c.status);
    if (!c.note.empty()) o << "  (" << c.note << ")";
    o << '\n';
  }
  o << "pass " << count(CheckStatus::pass) << ", fail " << count(CheckStatus::fail) << ", skip "
    << count(CheckStatus::skip) << ", error " << count(CheckStatus::error) << '\n';
  return o.str();
}

namespace {

struct Context {
  const ReproduceInputs& in;
  ReportBundle& bundle;
  std::optional<MacroDataset> benchmark;
  std::optional<MacroDataset> extended;

  void check(std::string id, std::string statistic, double value, std::string paper,
             std::string requirement, bool ok, std::string note = {}) {
    bundle.checks.push_back({std::move(id), std::move(statistic), value, std::move(paper),
                             std::move(requirement), ok ? CheckStatus::pass : CheckStatus::fail,
                             std::move(note)});
  }
  void info(std::string id, std::string statistic, double value, std::string paper = {},
            std::string note = {}) {
    bundle.checks.push_back({std::move(id), std::move(statistic), value, std::move(paper), {},
                             CheckStatus::info, std::move(note)});
  }
  void skip(std::string id, std::string statistic, std::string reason) {
    bundle.checks.push_back({std::move(id), std::move(statistic), std::nullopt, {}, {}, CheckStatus::skip,
                             std::move(reason)});
  }

  // Records an error row when a step throws; later steps still run.
  void step(const std::string& id, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      bundle.checks.push_back({id, "step", std::nullopt, {}, {}, CheckStatus::error, e.what()});
    }
  }

  void figure(const std::string& name, const SvgPlot& plot) {
    if (!in.write_figures) return;
    const fs::path rel = fs::path("figures") / (name + ".svg");
    write_file_atomic(in.out_dir / rel, plot.render());
    bundle.figures.push_back(rel);
  }
};

bool within_rel(double v, double ref, double tol) { return std::fabs(v - ref) <= tol * std::fabs(ref); }

// Trend fits run on rows up to 1973: the extended table when given, the
// benchmark table otherwise.
const MacroDataset& trend_data(const Context& cx) {
  return cx.extended ? *cx.extended : *cx.benchmark;
}

std::string trend_note(const Context& cx) {
  return cx.extended ? "benchmarks + annual rows, 1-1973" : "benchmark rows only";
}

SvgPlot trend_plot(const std::string& title, const std::string& y_label, const YearValueSeries& obs,
                   const TrendFit& fit) {
  SvgPlot plot{title, "year", y_label, false, false, {}};
  plot.series.push_back({"observed", obs.years(), obs.values(), SvgSeries::Style::points, "#000000"});
  SvgSeries curve{"fit C/(t0-t)^k", {}, {}, SvgSeries::Style::line, "#888888"};
  const double lo = obs.first_year();
  const double hi = obs.last_year();
  for (int i = 0; i <= 200; ++i) {
    const double t = lo + (hi - lo) * i / 200.0;
    curve.x.push_back(t);
    curve.y.push_back(eval_trend(fit.params, t));
  }
  plot.series.push_back(curve);
  return plot;
}

void run_trend_fits(Context& cx) {
  const MacroDataset d = trend_data(cx).restricted(-1e300, 1973);
  const auto& pop = d.population();
  const auto& gdp = d.gdp();
  if (pop.size() < 3) {
    cx.skip("fits", "trend fits", "fewer than 3 rows up to 1973");
    return;
  }
  const std::string note = trend_note(cx);

  auto fit = [&](const YearValueSeries& s, double k, Convention conv, const std::string& id) {
    FitOptions opt;
    opt.k = k;
    opt.convention = conv;
    TrendFit f = fit_trend(s, opt);
    cx.bundle.fits.push_back(to_json(f, id));
    return f;
  };

  TrendFit pop_k1, gdp_k2, gdp_k1, pop_k2;
  cx.step("fig3", [&] {
    pop_k1 = fit(pop, 1, Convention::integer_t0, "population_k1_integer");
    cx.check("fig3.r2", "population k=1 R^2 (integer t0)", pop_k1.r2_pearson, ".9991", ">= .9985",
             pop_k1.r2_pearson >= 0.9985, note);
    cx.check("fig3.t0", "population k=1 t0", pop_k1.params.t0, "2014", "[2009, 2019]",
             pop_k1.params.t0 >= 2009 && pop_k1.params.t0 <= 2019);
    cx.check("fig3.C", "population k=1 C", pop_k1.params.C, "163158.78", "within 5%",
             within_rel(pop_k1.params.C, 163158.78, 0.05));
    cx.info("fig3.r2_sse", "population k=1 1-SSE/SST", pop_k1.r2);
    cx.figure("fig3_population_k1", trend_plot("World population, k=1", "millions", pop, pop_k1));
  });
  cx.step("fig1", [&] {
    gdp_k2 = fit(gdp, 2, Convention::continuous_t0, "gdp_k2_continuous");
    cx.check("fig1.r2", "GDP k=2 R^2", gdp_k2.r2_pearson, ".9986", ">= .998", gdp_k2.r2_pearson >= 0.998,
             note);
    cx.check("fig1.t0", "GDP k=2 t0 (continuous)", gdp_k2.params.t0, "2005.56", "[2003, 2008]",
             gdp_k2.params.t0 >= 2003 && gdp_k2.params.t0 <= 2008);
    cx.check("fig1.C", "GDP k=2 C", gdp_k2.params.C, "17355487.3", "within 5%",
             within_rel(gdp_k2.params.C, 17355487.3, 0.05));
    const TrendFit integer = fit(gdp, 2, Convention::integer_t0, "gdp_k2_integer");
    cx.info("fig1.t0_integer", "GDP k=2 t0 (integer)", integer.params.t0, "2006");
    cx.info("fig1.C_integer", "GDP k=2 C (integer)", integer.params.C, "17749573.1");
    cx.figure("fig1_gdp_k2", trend_plot("World GDP, k=2", "billions 1990 PPP $", gdp, gdp_k2));
  });
  cx.step("fig2", [&] {
    gdp_k1 = fit(gdp, 1, Convention::integer_t0, "gdp_k1_integer");
    cx.check("fig2.r2", "GDP k=1 R^2", gdp_k1.r2_pearson, ".9956", ".9956 +/- .002",
             std::fabs(gdp_k1.r2_pearson - 0.9956) <= 0.002, note);
    cx.info("fig2.t0", "GDP k=1 t0 (integer)", gdp_k1.params.t0, "1987");
    cx.info("fig2.C", "GDP k=1 C (integer)", gdp_k1.params.C, "227906.1");
    cx.figure("fig2_gdp_k1", trend_plot("World GDP, k=1", "billions 1990 PPP $", gdp, gdp_k1));
  });
  cx.step("fig4", [&] {
    pop_k2 = fit(pop, 2, Convention::integer_t0, "population_k2_integer");
    cx.check("fig4.r2", "population k=2 R^2", pop_k2.r2_pearson, ".9963", ".9963 +/- .002",
             std::fabs(pop_k2.r2_pearson - 0.9963) <= 0.002, note);
    cx.info("fig4.t0", "population k=2 t0 (integer)", pop_k2.params.t0, "2065");
    cx.info("fig4.C", "population k=2 C (integer)", pop_k2.params.C, "33505220.7");
    cx.figure("fig4_population_k2", trend_plot("World population, k=2", "millions", pop, pop_k2));
  });
  cx.step("contrast", [&] {
    const TrendFit g2 = fit_trend(gdp, {.k = 2.0, .convention = Convention::integer_t0});
    const TrendFit p1 = fit_trend(pop, {.k = 1.0, .convention = Convention::integer_t0});
    cx.check("contrast.gdp", "GDP: R^2(k=2) - R^2(k=1)", g2.r2_pearson - gdp_k1.r2_pearson, "> 0", "> 0",
             g2.r2_pearson > gdp_k1.r2_pearson);
    cx.check("contrast.population", "population: R^2(k=1) - R^2(k=2)", p1.r2_pearson - pop_k2.r2_pearson,
             "> 0", "> 0", p1.r2_pearson > pop_k2.r2_pearson);
  });
  cx.step("published_curves", [&] {
    const TrendFit c3 = evaluate_trend(pop, {163158.78, 2014, 1});
    const TrendFit c1 = evaluate_trend(gdp, {17749573.1, 2006, 2});
    const TrendFit c2 = evaluate_trend(gdp, {227906.1, 1987, 1});
    const TrendFit c4 = evaluate_trend(pop, {33505220.7, 2065, 2});
    cx.info("curve.fig3", "published population k=1 curve, R^2", c3.r2_pearson, ".9991");
    cx.info("curve.fig1", "published GDP k=2 curve, R^2", c1.r2_pearson, ".9986");
    cx.info("curve.fig2", "published GDP k=1 curve, R^2", c2.r2_pearson, ".9956");
    cx.info("curve.fig4", "published population k=2 curve, R^2", c4.r2_pearson, ".9963");
  });
}

SvgPlot scatter(const std::string& title, const std::string& xl, const std::string& yl,
                const std::vector<double>& x, const std::vector<double>& y, bool log) {
  SvgPlot plot{title, xl, yl, log, log, {}};
  plot.series.push_back({"intervals", x, y, SvgSeries::Style::points, "#000000"});
  return plot;
}

void add_line(SvgPlot& plot, const std::vector<double>& x, const std::function<double(double)>& f,
              const std::string& label, const std::string& color) {
  double lo = x.front();
  double hi = x.front();
  for (double v : x) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  SvgSeries s{label, {}, {}, SvgSeries::Style::line, color};
  for (int i = 0; i <= 100; ++i) {
    const double v = lo + (hi - lo) * i / 100.0;
    s.x.push_back(v);
    s.y.push_back(f(v));
  }
  plot.series.push_back(s);
}

void run_fig6(Context& cx) {
  const MacroDataset d = cx.benchmark->restricted(-1e300, 1973);
  if (d.size() < 4) {
    cx.skip("fig6", "r(relative population growth, S)", "fewer than 3 intervals");
    return;
  }
  const auto surplus = derive_surplus_series(d);
  const auto levels = interval_levels(surplus, Anchor::start);
  const auto rates = derive_growth_rates(d.population(), RateMode::log).rel_rates();
  const CorrelationTest test = correlation_test(levels, rates);
  cx.bundle.regressions["fig6"] = to_json(test);
  cx.check("fig6.r", "r(relative population growth, S), 1-1973", test.r, ".961", ">= .93", test.r >= 0.93,
           "log rate, interval-start surplus");
  cx.check("fig6.p", "p of fig6 r (order of magnitude)", test.p, "0.00004", "[4e-6, 4e-4]",
           test.p >= 4e-6 && test.p <= 4e-4);
  for (auto [mode, anchor, label] :
       {std::tuple{RateMode::simple, Anchor::start, "simple rate, start anchor"},
        std::tuple{RateMode::log, Anchor::midpoint, "log rate, midpoint anchor"},
        std::tuple{RateMode::simple, Anchor::midpoint, "simple rate, midpoint anchor"}}) {
    const auto rr = derive_growth_rates(d.population(), mode, anchor).rel_rates();
    const auto lv = interval_levels(surplus, anchor);
    cx.info("fig6.variant", std::string("fig6 r, ") + label, pearson(lv, rr), ".961");
  }
  const RegressionResult line = ols(levels, rates, false);
  SvgPlot plot = scatter("Relative population growth vs surplus, 1-1973", "S ($ per person)",
                         "relative population growth (1/year)", levels, rates, false);
  add_line(plot, levels, [&](double x) { return *line.intercept + line.slope * x; }, "OLS line", "#888888");
  cx.figure("fig6_growth_vs_surplus", plot);
}

void run_tables(Context& cx) {
  for (const auto& [to, tag] : {std::pair{1950.0, "1950"}, std::pair{1973.0, "1973"}}) {
    const MacroDataset d = cx.benchmark->restricted(-1e300, to);
    const std::string id = std::string("table1.") + tag;
    if (d.size() < 4) {
      cx.skip(id, "dN/dt on dS/dt", "fewer than 3 intervals");
      continue;
    }
    const auto ds = derive_growth_rates(derive_surplus_series(d), RateMode::simple).abs_rates();
    const auto dn = derive_growth_rates(d.population(), RateMode::simple).abs_rates();
    const RegressionResult t1 = ols(ds, dn, false);
    const RegressionResult t2 = ols(ds, dn, true);
    cx.bundle.regressions[std::string("table1_1_") + tag] = to_json(t1);
    cx.bundle.regressions[std::string("table2_1_") + tag] = to_json(t2);
    if (to == 1950.0) {
      cx.check("table1.intercept_t", "Table 1 intercept t (1-1950)", *t1.t_intercept, "0.876", "|t| < 1.5",
               std::fabs(*t1.t_intercept) < 1.5);
      cx.info("table1.slope", "Table 1 slope (1-1950)", t1.slope, "0.981");
      cx.info("table1.intercept", "Table 1 intercept (1-1950)", *t1.intercept, "0.820");
      cx.info("table1.intercept_se", "Table 1 intercept se (1-1950)", *t1.intercept_se, "0.935");
      cx.info("table1.r2", "Table 1 R^2 (1-1950)", t1.r2, "0.92");
      cx.check("table1.p_slope", "Table 1 slope p", t1.p_slope, "<0.001", "< .001", t1.p_slope < 1e-3);
      cx.check("table1.p_intercept", "Table 1 intercept p (order of magnitude)", *t1.p_intercept, "0.414",
               "[.0414, 1]", *t1.p_intercept >= 0.0414);
      cx.check("table2.slope", "Table 2 slope, through origin (1-1950)", t2.slope, "1.04", "[0.99, 1.09]",
               t2.slope >= 0.99 && t2.slope <= 1.09);
      cx.check("table2.r2", "Table 2 R^2 (1-1950)", t2.r2, "0.945", ">= .92", t2.r2 >= 0.92);
      cx.check("table2.p_slope", "Table 2 slope p", t2.p_slope, "<0.001", "< .001", t2.p_slope < 1e-3);

      SvgPlot plot = scatter("dN/dt vs dS/dt, 1-1950", "dS/dt ($ per year)", "dN/dt (millions per year)", ds,
                             dn, true);
      add_line(plot, ds, [&](double x) { return t2.slope * x; }, "through-origin fit", "#888888");
      cx.figure("fig16_table2_rates", plot);
    } else {
      cx.info("table1.slope_1973", "Table 1 slope (1-1973 variant)", t1.slope, "0.981");
      cx.info("table1.intercept_t_1973", "Table 1 intercept t (1-1973 variant)", *t1.t_intercept, "0.876");
      cx.info("table2.slope_1973", "Table 2 slope (1-1973 variant)", t2.slope, "1.04");
      cx.info("table2.r2_1973", "Table 2 R^2 (1-1973 variant)", t2.r2, "0.945");
    }
  }
}

void run_fig15(Context& cx) {
  if (!cx.extended) {
    cx.skip("fig15", "S on N regression", "extended dataset not given");
    return;
  }
  const struct {
    double from, to;
    const char* id;
    const char* paper_r2;
    const char* paper_p;
    double r2_min;
    double p_max;
    const char* r2_req;
    const char* p_req;
  } ranges[] = {{1820, 1958, "fig15.1820_1958", "> 0.996", "< 1e-12", 0.99, 1e-12, "> .99", "< 1e-12"},
                {1, 2002, "fig15.1_2002", "0.98", "< 1e-16", 0.97, 1e-16, ">= .97", "< 1e-16"}};
  for (const auto& rg : ranges) {
    cx.step(rg.id, [&] {
      const MacroDataset d = cx.extended->restricted(rg.from, rg.to);
      if (d.size() < 4) {
        cx.skip(rg.id, "S on N regression", "fewer than 4 rows in range");
        return;
      }
      const RegressionResult reg = surplus_population_proportionality(d, rg.from, rg.to);
      cx.bundle.regressions[rg.id] = to_json(reg);
      const std::string span = format_double(rg.from) + "-" + format_double(rg.to);
      const bool strict = rg.from == 1820;
      cx.check(std::string(rg.id) + ".r2", "S on N R^2, " + span, reg.r2, rg.paper_r2, rg.r2_req,
               strict ? reg.r2 > rg.r2_min : reg.r2 >= rg.r2_min, std::to_string(reg.n) + " rows");
      cx.check(std::string(rg.id) + ".p", "S on N slope p, " + span, reg.p_slope, rg.paper_p, rg.p_req,
               reg.p_slope < rg.p_max);
      if (strict) {
        const auto n = d.population().values();
        const auto s = derive_surplus_series(d).values();
        SvgPlot plot = scatter("Surplus vs population, 1820-1958", "N (millions)", "S ($ per person)", n, s,
                               false);
        add_line(plot, n, [&](double x) { return *reg.intercept + reg.slope * x; }, "OLS line", "#888888");
        cx.figure("fig15_surplus_vs_population", plot);
      }
    });
  }
}

void run_fig20(Context& cx) {
  const MacroDataset d = cx.benchmark->restricted(-1e300, 1973);
  if (d.size() < 4) {
    cx.skip("fig20", "G on N curve estimation", "fewer than 4 rows");
    return;
  }
  const auto n = d.population().values();
  const auto g = d.gdp().values();
  const PolyFit lin = poly_fit(n, g, 1);
  const PolyFit quad = poly_fit(n, g, 2);
  cx.bundle.regressions["fig20_linear"] = to_json(lin);
  cx.bundle.regressions["fig20_quadratic"] = to_json(quad);
  cx.check("fig20.quadratic_r2", "G on N quadratic R^2", quad.r2, ".998", ">= .996", quad.r2 >= 0.996);
  cx.check("fig20.linear_r2", "G on N linear R^2", lin.r2, ".876", ".876 +/- .03",
           std::fabs(lin.r2 - 0.876) <= 0.03);
  cx.check("fig20.quadratic_p", "quadratic F-test p", quad.p_value, "< .001", "< .001", quad.p_value < 1e-3);
  cx.check("fig20.linear_p", "linear F-test p", lin.p_value, "< .001", "< .001", lin.p_value < 1e-3);
  SvgPlot plot = scatter("World GDP vs population, 1-1973", "N (millions)", "G (billions)", n, g, false);
  add_line(plot, n, [&](double x) { return lin.evaluate(x); }, "linear", "#d62728");
  add_line(plot, n, [&](double x) { return quad.evaluate(x); }, "quadratic", "#888888");
  cx.figure("fig20_gdp_vs_population", plot);
}

void run_compact(Context& cx) {
  const MacroDataset d = cx.benchmark->restricted(1, 1973);
  const CompactModelParams p;  // defaults are the published constants
  const SimulationTrace trace = simulate_compact(p);
  cx.bundle.traces.push_back(trace_summary(trace));
  {
    std::ostringstream csv;
    write_trace_csv(csv, trace);
    write_file_atomic(cx.in.out_dir / "compact_trace.csv", csv.str());
  }
  SvgPlot plot{"Compact model vs observed GDP", "year", "G (billions)", false, true, {}};
  plot.series.push_back({"observed", d.gdp().years(), d.gdp().values(), SvgSeries::Style::points, "#000000"});
  plot.series.push_back({"model", trace.years, trace.G, SvgSeries::Style::line, "#888888"});
  cx.figure("fig17_compact_model", plot);

  if (!trace.completed()) {
    const std::string why = trace.diagnostic;
    cx.check("fig17.completed", "compact model run reaches 1973", trace.abort_year.value_or(NAN), "1973",
             "completes", false, why);
    cx.bundle.checks.push_back({"fig17.gdp_r2", "compact model GDP R^2", std::nullopt, ".9986", ">= .997",
                                CheckStatus::fail, "no trace at the later benchmark years"});
    cx.bundle.checks.push_back({"fig17.population_r2", "compact model population R^2", std::nullopt, "0.992",
                                ">= .985", CheckStatus::fail, "no trace at the later benchmark years"});
    return;
  }
  const auto gf = goodness_of_fit(d.gdp(), trace.sample_gdp(d.gdp()));
  const auto pf = goodness_of_fit(d.population(), trace.sample_population(d.population()));
  cx.check("fig17.gdp_r2", "compact model GDP R^2", gf.r2_pearson, ".9986", ">= .997", gf.r2_pearson >= 0.997);
  cx.check("fig17.population_r2", "compact model population R^2", pf.r2_pearson, "0.992", ">= .985",
           pf.r2_pearson >= 0.985);
}

Json file_provenance(const fs::path& p) {
  return {{"path", p.generic_string()}, {"sha256", sha256_file(p)}};
}

}  // namespace

ReportBundle reproduce(const ReproduceInputs& in) {
  std::error_code ec;
  fs::create_directories(in.out_dir / "figures", ec);
  {
    const fs::path probe = in.out_dir / ".write_probe";
    write_file_atomic(probe, "");
    fs::remove(probe, ec);
  }

  ReportBundle bundle;
  Context cx{in, bundle, std::nullopt, std::nullopt};
  cx.benchmark = load_dataset(in.benchmark, in.m);
  bundle.provenance["benchmark"] = file_provenance(in.benchmark);
  if (in.extended) {
    cx.extended = load_dataset(*in.extended, in.m);
    bundle.provenance["extended"] = file_provenance(*in.extended);
  }
  bundle.provenance["m"] = in.m;

  cx.step("fits", [&] { run_trend_fits(cx); });
  cx.step("fig6", [&] { run_fig6(cx); });
  cx.step("tables", [&] { run_tables(cx); });
  cx.step("fig15", [&] { run_fig15(cx); });
  cx.step("fig20", [&] { run_fig20(cx); });
  cx.step("fig17", [&] { run_compact(cx); });

  write_file_atomic(in.out_dir / "report.json", dump(bundle.to_json()));
  write_file_atomic(in.out_dir / "summary.txt", bundle.summary_table());
  return bundle;
}

}  // namespace worldsys
