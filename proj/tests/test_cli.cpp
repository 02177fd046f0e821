#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rwrc/cli.hpp"
#include "rwrc/config.hpp"
#include "rwrc/errors.hpp"

using namespace rwrc;
using doctest::Approx;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "rwrc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir() {
  const auto p = std::filesystem::temp_directory_path() / "rwrc_cli_test";
  std::filesystem::create_directories(p);
  return p;
}

// Value in the named CSV column of the first data row.
double csv_value(const std::string& csv, const std::string& column) {
  std::istringstream in(csv);
  std::string header;
  std::string row;
  std::getline(in, header);
  std::getline(in, row);
  std::istringstream hs(header);
  std::istringstream rs(row);
  std::string h;
  std::string v;
  while (std::getline(hs, h, ',') && std::getline(rs, v, ',')) {
    if (h == column) return std::stod(v);
  }
  FAIL("no column " << column);
  return 0;
}

}  // namespace

TEST_CASE("config round trip") {
  ExperimentConfig c;
  c.domain = DomainSpec::parse_short("box2d:1");
  c.eta = 0.5;
  c.dcoef = 2;
  c.times = {1, 10, 100};
  c.trials = 123;
  c.r = 0.4;
  c.seed = 99;
  c.eps = {0.1, 0.2};
  c.solver.restarts = 5;
  const auto j = config_to_json(c);
  const auto back = config_from_json(j);
  CHECK(back == c);
  CHECK(config_to_json(back) == j);

  ExperimentConfig sites;
  sites.domain.type = "sites";
  sites.domain.sites = {{0}, {1}};
  CHECK(config_from_json(config_to_json(sites)) == sites);
  CHECK(sites.domain.build().size() == 2);
}

TEST_CASE("config defaults and validation") {
  ExperimentConfig c;
  c.eta = 3;
  CHECK(c.tilt_exponent() == Approx(0.25));
  c.r = 0.6;
  CHECK(c.tilt_exponent() == 0.6);

  auto invalid = [](auto mutate) {
    ExperimentConfig bad;
    mutate(bad);
    try {
      bad.validate();
      return false;
    } catch (const Error& e) {
      return e.code() == ErrorCode::InvalidConfig;
    }
  };
  CHECK(invalid([](ExperimentConfig& x) { x.trials = 0; }));
  CHECK(invalid([](ExperimentConfig& x) { x.paths = -1; }));
  CHECK(invalid([](ExperimentConfig& x) { x.eta = 0; }));
  CHECK(invalid([](ExperimentConfig& x) { x.r = 1.5; }));
  CHECK(invalid([](ExperimentConfig& x) { x.times = {-1}; }));
  CHECK(invalid([](ExperimentConfig& x) { x.eps = {0}; }));
  CHECK_NOTHROW(ExperimentConfig{}.validate());

  CHECK(DomainSpec::parse_short("box1d:2").half_width == 2);
  CHECK_THROWS_AS(DomainSpec::parse_short("ball:3"), Error);
  CHECK_THROWS_AS(load_config("/nonexistent/rwrc.json"), Error);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"trials", "many"}}), Error);
}

TEST_CASE("cli usage errors") {
  const auto none = run({});
  CHECK(none.code == 1);
  const auto unknown = run({"frobnicate"});
  CHECK(unknown.code == 1);
  CHECK(unknown.err.find("Usage") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--version"}).code == 0);
  CHECK(run({"nonexit", "--method", "bogus"}).code == 1);
  CHECK(run({"nonexit", "--trials", "0", "--method", "quadrature"}).code == 1);
}

TEST_CASE("cli nonexit quadrature") {
  const auto r = run({"nonexit", "--method", "quadrature", "--eta", "1", "--D", "1", "--t", "1e8"});
  REQUIRE(r.code == 0);
  CHECK(csv_value(r.out, "rescaled") == Approx(-4.0).epsilon(0.02));
  CHECK(r.out.find("nonexit:") != std::string::npos);
}

TEST_CASE("cli solve-variational") {
  const auto r = run({"solve-variational", "--domain", "box1d:2"});
  REQUIRE(r.code == 0);
  const auto summary = r.out.rfind("solve-variational:");
  REQUIRE(summary != std::string::npos);
  const auto j = nlohmann::json::parse(r.out.substr(0, summary));
  CHECK(j.at("L").get<double>() > 0);
  CHECK(j.at("minimizer").size() == 5);
}

TEST_CASE("cli seeds") {
  CHECK(run({"nonexit", "--method", "mc", "--t", "1", "--trials", "100"}).code == 1);
  CHECK(run({"nonexit", "--method", "is", "--t", "1", "--trials", "100"}).code == 1);
  const std::vector<std::string> args{"nonexit", "--method", "is", "--domain", "box1d:1", "--t", "1,10",
                                      "--trials", "500", "--seed", "42"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("cli output files") {
  const auto stem = (scratch_dir() / "tail").string();
  const auto r = run({"tauberian", "--M", "1,4", "--t", "1e4", "--out", stem + ".csv"});
  REQUIRE(r.code == 0);
  CHECK(std::filesystem::exists(stem + ".csv"));
  std::ifstream in(stem + ".json");
  const auto j = nlohmann::json::parse(in);
  CHECK(j.at("command") == "tauberian");
  CHECK(j.contains("version"));
  CHECK(j.at("wall_time_s").get<double>() >= 0);
  CHECK(j.at("config").at("law").at("eta") == 1.0);
}

TEST_CASE("cli config file and numerical failure") {
  const auto path = scratch_dir() / "starved.json";
  {
    std::ofstream out(path);
    out << nlohmann::json{{"domain", {{"type", "box"}, {"d", 1}, {"half_width", 3}}},
                          {"law", {{"eta", 0.5}, {"D", 1.0}}},
                          {"solver", {{"max_iterations", 1}, {"restarts", 2}}}}
               .dump();
  }
  const auto r = run({"solve-variational", "--config", path.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("NonConvergence") != std::string::npos);

  // Flags override the file: the quadrature route needs a single site.
  CHECK(run({"nonexit", "--method", "quadrature", "--config", path.string(), "--t", "1"}).code == 1);
  const auto ok = run({"nonexit", "--method", "quadrature", "--config", path.string(), "--domain", "box1d:0",
                       "--t", "1"});
  CHECK(ok.code == 0);
}
