#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "helpers.hpp"
#include "worldsys/cli.hpp"

namespace fs = std::filesystem;
using namespace worldsys;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "worldsys");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("worldsys_cli_" + std::to_string(getpid()));
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const std::string kBench = testing::data_file("maddison_world_1_1973.csv").string();

}  // namespace

TEST_CASE("fit: population hyperbola, integer convention") {
  const Result r = run({"fit", "--series", "population", "--k", "1", "--convention", "integer"});
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["t0"] == 2014.0);
  CHECK(j["series_id"] == "population");
  CHECK(j["k_mode"] == "fixed");
  CHECK(j["convention"] == "integer_t0");
  for (const char* key : {"C", "k", "r", "r2", "sse", "warnings"}) CHECK(j.contains(key));
}

TEST_CASE("fit: quadratic GDP, continuous convention, global flags after the verb") {
  const fs::path out = scratch("fit.json");
  const Result r = run({"fit", "--series", "gdp", "--k", "2", "--convention", "continuous", "--out", out.string()});
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(slurp(out));
  CHECK(j["t0"].get<double>() > 2005);
  CHECK(j["t0"].get<double>() < 2005.6);
}

TEST_CASE("fit: csv output and free exponent") {
  const Result r = run({"--format", "csv", "fit", "--series", "population", "--k", "free"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("series_id,k_mode,convention,objective,C,t0,k,", 0) == 0);
  CHECK(r.out.find("population,free,integer_t0") != std::string::npos);
}

TEST_CASE("fit: error paths") {
  const Result missing = run({"--data", "/nonexistent/world.csv", "fit"});
  CHECK(missing.code == kExitIo);
  CHECK(missing.err.find("/nonexistent/world.csv") != std::string::npos);

  CHECK(run({"fit", "--series", "temperature"}).code == kExitUsage);
  CHECK(run({"fit", "--k", "zero"}).code == kExitValidation);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);

  const fs::path bad = scratch("bad.csv");
  std::ofstream(bad) << "year,population_millions,gdp_billions\n1,abc,3\n2,3,4\n";
  CHECK(run({"--data", bad.string(), "fit"}).code == kExitParse);

  const fs::path poor = scratch("poor.csv");
  std::ofstream(poor) << "year,population_millions,gdp_billions\n1,100,40\n2,100,50\n3,100,60\n";
  const Result v = run({"--data", poor.string(), "fit"});
  CHECK(v.code == kExitValidation);
  CHECK(v.err.find("year 1") != std::string::npos);
}

TEST_CASE("simulate") {
  const std::string params = testing::params_file("compact_paper.params").string();
  SUBCASE("published compact constants abort with the blow-up year") {
    const fs::path out = scratch("compact.csv");
    const Result r = run({"simulate", "--model", "compact", "--params", params, "--out", out.string(), "--format", "csv"});
    CHECK(r.code == kExitNumerical);
    CHECK(r.out.find("blow_up") != std::string::npos);
    CHECK(r.out.find("aborted at t=1614") != std::string::npos);
    CHECK(slurp(out).rfind("year,N_millions,S_dollars,G_billions\n1,230.82,4.225,", 0) == 0);
  }
  SUBCASE("overrides and json output") {
    const Result r = run({"simulate", "--model", "compact", "--params", params, "--set", "t_end=100"});
    REQUIRE(r.code == kExitOk);
    const json j = json::parse(r.out);
    CHECK(j["status"] == "completed");
    CHECK(j["trace"].size() == 100);
    CHECK(r.err.find("compact: completed") != std::string::npos);
  }
  SUBCASE("malformed span") {
    const Result r = run({"simulate", "--model", "compact", "--set", "t_start=10", "--set", "t_end=5"});
    CHECK(r.code == kExitValidation);
    CHECK(r.err.find("t_end") != std::string::npos);
  }
  SUBCASE("coalition reports its blow-up") {
    const Result r = run({"simulate", "--model", "coalition", "--params",
                          testing::params_file("coalition_vonfoerster.params").string(), "--format", "csv"});
    CHECK(r.code == kExitNumerical);
    CHECK(r.err.find("aborted at t=") != std::string::npos);
  }
  CHECK(run({"simulate", "--model", "compact", "--params", "/nonexistent.params"}).code == kExitIo);
  CHECK(run({"simulate", "--model", "compact", "--set", "alpha=1"}).code == kExitValidation);
  CHECK(run({"simulate", "--model", "compact", "--set", "a"}).code == kExitParse);
  CHECK(run({"simulate", "--model", "weather"}).code == kExitUsage);
}

TEST_CASE("stats") {
  const Result curve = run({"--format", "csv", "stats", "--test", "curve"});
  REQUIRE(curve.code == kExitOk);
  CHECK(curve.out.rfind("test,degree,coefficients,r2,", 0) == 0);

  const Result t2 = run({"stats", "--test", "rates", "--to", "1950", "--through-origin"});
  REQUIRE(t2.code == kExitOk);
  const json j = json::parse(t2.out);
  CHECK(j["mode"] == "through_origin");
  CHECK_FALSE(j.contains("intercept"));
  CHECK(j["slope"].get<double>() == doctest::Approx(1.04).epsilon(0.05));
  CHECK(j["dof"] == 7);

  const Result t1 = run({"stats", "--test", "rates", "--to", "1950"});
  const json k = json::parse(t1.out);
  CHECK(k.contains("intercept"));
  CHECK(k["n"] == 8);

  const Result c = run({"stats", "--test", "correlation"});
  CHECK(json::parse(c.out)["r"].get<double>() == doctest::Approx(0.961).epsilon(0.005));

  const Result p = run({"stats", "--test", "proportionality", "--from", "1820", "--to", "1958"});
  CHECK(json::parse(p.out)["r2"].get<double>() > 0.99);

  CHECK(run({"--data", kBench, "stats", "--test", "proportionality", "--from", "1500", "--to", "1700"}).code ==
        kExitValidation);
}

TEST_CASE("reproduce") {
  const fs::path a = scratch("repro_a");
  const fs::path b = scratch("repro_b");
  const Result ra = run({"reproduce", "--out", a.string()});
  const Result rb = run({"reproduce", "--out", b.string()});
  // the compact-model checks fail with the published constants
  CHECK(ra.code == kExitPartial);
  CHECK(ra.out.find("fig17.gdp_r2") != std::string::npos);

  const json report = json::parse(slurp(a / "report.json"));
  CHECK(report["counts"]["pass"].get<int>() >= 9);
  CHECK(report["counts"]["error"] == 0);
  for (const auto& f : report["figures"]) CHECK(fs::exists(a / f.get<std::string>()));
  CHECK(report["provenance"]["benchmark"]["sha256"].get<std::string>().size() == 64);

  for (const char* f : {"report.json", "summary.txt", "compact_trace.csv"}) {
    CAPTURE(f);
    CHECK(slurp(a / f) == slurp(b / f));
  }
  for (const auto& f : report["figures"]) {
    CHECK(slurp(a / f.get<std::string>()) == slurp(b / f.get<std::string>()));
  }
}

TEST_CASE("reproduce: degraded input and unwritable output") {
  const fs::path tiny = scratch("tiny.csv");
  std::ofstream(tiny) << "year,population_millions,gdp_billions\n1,230.82,102.536\n1500,437.818,247.116\n"
                         "1900,1500,2800\n";
  const fs::path out = scratch("repro_tiny");
  const Result r = run({"--data", tiny.string(), "reproduce", "--out", out.string()});
  CHECK(r.code == kExitPartial);
  const json report = json::parse(slurp(out / "report.json"));
  std::map<std::string, std::string> status;
  for (const auto& c : report["checks"]) status[c["id"]] = c["status"];
  CHECK(status.count("fig3.r2") == 1);
  CHECK(status["fig6"] == "skip");
  CHECK(status["table1.1950"] == "skip");
  CHECK(status["fig20"] == "skip");
  CHECK(status["fig15"] == "skip");

  const fs::path file = scratch("not_a_dir");
  std::ofstream(file) << "x";
  const Result w = run({"reproduce", "--out", (file / "sub").string()});
  CHECK(w.code == kExitIo);
  CHECK(run({"reproduce"}).code == kExitValidation);
}
