#include "worldsys/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

#include "worldsys/error.hpp"

#ifndef WORLDSYS_VERSION
#define WORLDSYS_VERSION "0.0.0"
#endif

namespace worldsys {

namespace {

// nlohmann writes non-finite numbers as null; make that explicit.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json optional_number(const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); }

}  // namespace

const char* version() { return WORLDSYS_VERSION; }

Json to_json(const TrendFit& fit, const std::string& series_id) {
  Json j;
  j["series_id"] = series_id;
  j["k_mode"] = fit.k_free ? "free" : "fixed";
  j["convention"] = to_string(fit.convention);
  j["objective"] = to_string(fit.objective);
  j["C"] = number(fit.params.C);
  j["t0"] = number(fit.params.t0);
  j["k"] = number(fit.params.k);
  j["r"] = number(fit.r);
  j["r2"] = number(fit.r2);
  j["r2_pearson"] = number(fit.r2_pearson);
  j["sse"] = number(fit.sse);
  j["sst"] = number(fit.sst);
  j["n"] = fit.residuals.size();
  j["warnings"] = fit.warnings;
  return j;
}

Json to_json(const RegressionResult& reg) {
  Json j;
  j["mode"] = reg.through_origin ? "through_origin" : "with_intercept";
  j["slope"] = number(reg.slope);
  if (reg.intercept) j["intercept"] = number(*reg.intercept);
  j["se"] = number(reg.slope_se);
  j["t"] = number(reg.t_slope);
  j["p"] = number(reg.p_slope);
  if (reg.intercept) {
    j["intercept_se"] = optional_number(reg.intercept_se);
    j["t_intercept"] = optional_number(reg.t_intercept);
    j["p_intercept"] = optional_number(reg.p_intercept);
  }
  j["r"] = number(reg.r);
  j["r2"] = number(reg.r2);
  j["n"] = reg.n;
  j["dof"] = reg.dof;
  return j;
}

Json to_json(const PolyFit& fit) {
  Json j;
  j["degree"] = fit.degree;
  Json coeffs = Json::array();
  for (double c : fit.coefficients) coeffs.push_back(number(c));
  j["coefficients"] = coeffs;
  j["r2"] = number(fit.r2);
  j["sse"] = number(fit.sse);
  j["f"] = number(fit.f_stat);
  j["p"] = number(fit.p_value);
  j["n"] = fit.n;
  return j;
}

Json to_json(const CorrelationTest& test) {
  Json j;
  j["r"] = number(test.r);
  j["t"] = number(test.t);
  j["p"] = number(test.p);
  j["n"] = test.n;
  return j;
}

Json trace_summary(const SimulationTrace& trace) {
  Json j;
  j["model"] = trace.model;
  j["integrator"] = to_string(trace.integrator.method);
  j["step"] = trace.integrator.step;
  j["status"] = to_string(trace.termination);
  j["abort_year"] = optional_number(trace.abort_year);
  if (!trace.diagnostic.empty()) j["diagnostic"] = trace.diagnostic;
  j["rows"] = trace.size();
  if (trace.size() > 0) {
    const std::size_t i = trace.size() - 1;
    Json last;
    last["year"] = number(trace.years[i]);
    last["N"] = number(trace.N[i]);
    if (trace.has_surplus()) last["S"] = number(trace.S[i]);
    if (!trace.G.empty()) last["G"] = number(trace.G[i]);
    if (trace.has_technology()) last["T"] = number(trace.T[i]);
    j["last"] = last;
  }
  Json params;
  for (const auto& [k, v] : trace.metadata) params[k] = number(v);
  j["parameters"] = params;
  return j;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 initialisation failed");
  }
  std::array<char, 1 << 14> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  if (in.bad()) throw IoError("read failed for " + path.string());
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

}  // namespace worldsys
