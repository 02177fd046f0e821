#include "rwrc/config.hpp"

#include <fstream>
#include <regex>

#include "rwrc/errors.hpp"

namespace rwrc {

Domain DomainSpec::build() const {
  if (type == "box") return Domain::box(d, half_width);
  if (type == "sites") return Domain::from_points(sites, d);
  throw Error(ErrorCode::InvalidConfig, "unknown domain type '" + type + "'");
}

DomainSpec DomainSpec::parse_short(const std::string& text) {
  static const std::regex pattern(R"(box(\d+)d:(\d+))");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw Error(ErrorCode::InvalidConfig, "domain must look like box<d>d:<half_width>, got '" + text + "'");
  }
  DomainSpec s;
  s.type = "box";
  s.d = std::stoi(m[1]);
  s.half_width = std::stoi(m[2]);
  return s;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (!(eta > 0) || !(dcoef > 0)) fail("law needs eta > 0 and D > 0");
  if (trials < 1) fail("trials must be positive");
  if (paths < 1) fail("paths must be positive");
  if (!(cap_M > 0)) fail("cap_M must be positive");
  if (r && !(*r > 0 && *r < 1)) fail("tilt exponent r must lie in (0, 1)");
  for (double t : times)
    if (!(t >= 0)) fail("times must be nonnegative");
  for (double e : eps)
    if (!(e > 0)) fail("eps values must be positive");
  for (double m : tauberian_M)
    if (!(m > 0)) fail("M values must be positive");
  for (double dl : deltas)
    if (!(dl > 0)) fail("delta values must be positive");
  if (solver.restarts < 0) fail("solver restarts must be nonnegative");
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
  return config_to_json(*this) == config_to_json(o);
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    if (j.contains("domain")) {
      const auto& d = j.at("domain");
      c.domain.type = d.value("type", std::string("box"));
      c.domain.d = d.value("d", 1);
      c.domain.half_width = d.value("half_width", 0);
      if (d.contains("sites")) c.domain.sites = d.at("sites").get<std::vector<LatticePoint>>();
    }
    if (j.contains("law")) {
      c.eta = j.at("law").value("eta", c.eta);
      c.dcoef = j.at("law").value("D", c.dcoef);
    }
    if (j.contains("times")) c.times = j.at("times").get<std::vector<double>>();
    c.trials = j.value("trials", c.trials);
    if (j.contains("is")) {
      c.cap_M = j.at("is").value("cap_M", c.cap_M);
      if (j.at("is").contains("r")) c.r = j.at("is").at("r").get<double>();
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    c.out = j.value("out", c.out);
    if (j.contains("eps")) c.eps = j.at("eps").get<std::vector<double>>();
    if (j.contains("M")) c.tauberian_M = j.at("M").get<std::vector<double>>();
    if (j.contains("deltas")) c.deltas = j.at("deltas").get<std::vector<double>>();
    c.paths = j.value("paths", c.paths);
    if (j.contains("solver")) {
      const auto& s = j.at("solver");
      c.solver.restarts = s.value("restarts", c.solver.restarts);
      c.solver.kappa_initial = s.value("kappa_initial", c.solver.kappa_initial);
      c.solver.kappa_min = s.value("kappa_min", c.solver.kappa_min);
      c.solver.kappa_factor = s.value("kappa_factor", c.solver.kappa_factor);
      c.solver.max_iterations = s.value("max_iterations", c.solver.max_iterations);
      c.solver.tolerance = s.value("tolerance", c.solver.tolerance);
      c.solver.tie_tolerance = s.value("tie_tolerance", c.solver.tie_tolerance);
      c.solver.seed = s.value("seed", c.solver.seed);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, e.what());
  }
  c.validate();
  return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json domain = {{"type", c.domain.type}, {"d", c.domain.d}};
  if (c.domain.type == "box") {
    domain["half_width"] = c.domain.half_width;
  } else {
    domain["sites"] = c.domain.sites;
  }
  nlohmann::json is = {{"cap_M", c.cap_M}};
  if (c.r) is["r"] = *c.r;
  nlohmann::json j = {
      {"domain", domain},
      {"law", {{"eta", c.eta}, {"D", c.dcoef}}},
      {"times", c.times},
      {"trials", c.trials},
      {"is", is},
      {"out", c.out},
      {"eps", c.eps},
      {"M", c.tauberian_M},
      {"deltas", c.deltas},
      {"paths", c.paths},
      {"solver",
       {{"restarts", c.solver.restarts},
        {"kappa_initial", c.solver.kappa_initial},
        {"kappa_min", c.solver.kappa_min},
        {"kappa_factor", c.solver.kappa_factor},
        {"max_iterations", c.solver.max_iterations},
        {"tolerance", c.solver.tolerance},
        {"tie_tolerance", c.solver.tie_tolerance},
        {"seed", c.solver.seed}}},
  };
  if (c.seed) j["seed"] = *c.seed;
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

}  // namespace rwrc
