#include "rwrc/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rwrc/config.hpp"
#include "rwrc/errors.hpp"
#include "rwrc/experiments.hpp"
#include "rwrc/path_measure.hpp"
#include "rwrc/spectral.hpp"
#include "rwrc/walk.hpp"

#ifndef RWRC_VERSION
#define RWRC_VERSION "unknown"
#endif

namespace rwrc {

const char* version_string() { return RWRC_VERSION; }

namespace {

using nlohmann::json;

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
  return os.str();
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& os) const {
    auto line = [&os](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
  }
};

struct Output {
  Table table;
  json result = json::object();
  std::string summary;
  bool json_primary = false;  // print `result` rather than the table when there is no --out
};

// Values bound to command-line flags; only flags that were given override
// the config.
struct Flags {
  std::string config;
  std::string domain;
  double eta = 0;
  double dcoef = 0;
  std::vector<double> times;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string out;
  double cap_M = 0;
  double r = 0;
  std::vector<double> eps;
  std::vector<double> M;
  std::vector<double> deltas;
  int paths = 0;
  std::string method;
  std::string field;
  bool brute = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
  sub->add_option("--domain", f.domain, "domain shorthand, e.g. box1d:2");
  sub->add_option("--eta", f.eta, "tail exponent");
  sub->add_option("--D", f.dcoef, "tail coefficient");
  sub->add_option("--t,--times", f.times, "time grid")->delimiter(',');
  sub->add_option("--trials", f.trials, "sample count");
  sub->add_option("--seed", f.seed, "master RNG seed");
  sub->add_option("--out", f.out, "output stem; writes <stem>.csv and <stem>.json");
  sub->add_option("--cap-M", f.cap_M, "cap for phi on edges without a gap");
  sub->add_option("--r", f.r, "tilt exponent of the importance sampler");
  sub->add_option("--eps", f.eps, "eigenvalue thresholds")->delimiter(',');
  sub->add_option("--M", f.M, "Tauberian multipliers")->delimiter(',');
  sub->add_option("--delta", f.deltas, "ball radii")->delimiter(',');
  sub->add_option("--paths", f.paths, "walks per field");
}

bool given(const CLI::App* sub, const std::string& name) { return sub->get_option(name)->count() > 0; }

ExperimentConfig resolve_config(const CLI::App* sub, const Flags& f) {
  ExperimentConfig c = f.config.empty() ? ExperimentConfig{} : load_config(f.config);
  if (given(sub, "--domain")) c.domain = DomainSpec::parse_short(f.domain);
  if (given(sub, "--eta")) c.eta = f.eta;
  if (given(sub, "--D")) c.dcoef = f.dcoef;
  if (given(sub, "--t")) c.times = f.times;
  if (given(sub, "--trials")) c.trials = f.trials;
  if (given(sub, "--seed")) c.seed = f.seed;
  if (given(sub, "--out")) c.out = f.out;
  if (given(sub, "--cap-M")) c.cap_M = f.cap_M;
  if (given(sub, "--r")) c.r = f.r;
  if (given(sub, "--eps")) c.eps = f.eps;
  if (given(sub, "--M")) c.tauberian_M = f.M;
  if (given(sub, "--delta")) c.deltas = f.deltas;
  if (given(sub, "--paths")) c.paths = f.paths;
  c.validate();
  return c;
}

std::uint64_t seed_of(const ExperimentConfig& c, bool mandatory, const std::string& what) {
  if (!c.seed && mandatory) throw Error(ErrorCode::InvalidConfig, what + " needs --seed (or \"seed\" in the config)");
  return c.seed.value_or(1);
}

json vec(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Output cmd_sample_field(const ExperimentConfig& c) {
  const Domain dom = c.domain.build();
  Rng rng = make_stream(seed_of(c, false, "sample-field"), 0);
  const Field f = sample_field(c.law(), dom, rng);
  Output o;
  o.table.header = {"edge", "inner", "exterior", "boundary", "weight"};
  for (int e = 0; e < dom.edge_count(); ++e) {
    const Edge& edge = dom.edges()[e];
    std::string ext;
    for (std::size_t k = 0; k < edge.exterior.size(); ++k) ext += (k ? " " : "") + std::to_string(edge.exterior[k]);
    o.table.rows.push_back(
        {std::to_string(e), std::to_string(edge.inner), ext, edge.is_boundary() ? "1" : "0", num(f[e])});
  }
  o.result = field_to_json(f);
  o.summary = "sampled " + std::to_string(dom.edge_count()) + " conductances, min " + num(f.min_weight());
  return o;
}

Output cmd_simulate(const ExperimentConfig& c, const std::string& field_path) {
  const Domain dom = c.domain.build();
  Rng rng = make_stream(seed_of(c, false, "simulate"), 0);
  Field f = sample_field(c.law(), dom, rng);
  if (!field_path.empty()) {
    std::ifstream in(field_path);
    if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open field file '" + field_path + "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::InvalidConfig, std::string("field file is not valid JSON: ") + e.what());
    }
    f = field_from_json(j);
    require_same_domain(f.domain(), dom);
  }
  const double t = c.times.back();
  Output o;
  o.table.header = {"trial", "exited", "end_time", "jumps"};
  for (int z = 0; z < dom.size(); ++z) o.table.header.push_back("l" + std::to_string(z));
  int exits = 0;
  for (int i = 0; i < c.trials; ++i) {
    const PathRecord p = simulate(f, dom, t, rng);
    exits += p.exited;
    const LocalTimes lt = local_times(p, dom.size());
    std::vector<std::string> row{std::to_string(i), p.exited ? "1" : "0", num(p.end_time()),
                                 std::to_string(p.jump_count())};
    for (int z = 0; z < dom.size(); ++z) row.push_back(num(lt.occupation(z)));
    o.table.rows.push_back(std::move(row));
  }
  const double stay = 1.0 - static_cast<double>(exits) / c.trials;
  o.result = {{"t", t}, {"nonexit_fraction", stay}, {"field", field_to_json(f)}};
  o.summary = std::to_string(c.trials) + " walks to t=" + num(t) + ", non-exit fraction " + num(stay);
  return o;
}

Output cmd_solve(const ExperimentConfig& c, bool brute) {
  const Domain dom = c.domain.build();
  const VariationalResult r = brute ? brute_force_L(dom, c.eta) : solve_L(dom, c.eta, c.solver);
  Output o;
  o.table.header = {"site"};
  for (int k = 0; k < dom.dimension(); ++k) o.table.header.push_back("x" + std::to_string(k + 1));
  o.table.header.push_back("g");
  for (int z = 0; z < dom.size(); ++z) {
    std::vector<std::string> row{std::to_string(z)};
    for (int x : dom.site(z)) row.push_back(std::to_string(x));
    row.push_back(num(r.minimizer(z)));
    o.table.rows.push_back(std::move(row));
  }
  o.result = result_to_json(r, c.eta);
  o.result["method"] = brute ? "brute_force" : "projected_gradient";
  o.json_primary = true;
  o.summary = "L = " + num(r.value) + " (" + std::to_string(r.minimizers.size()) + " minimizer(s))";
  return o;
}

Output cmd_nonexit(const ExperimentConfig& c, const std::string& method) {
  const Domain dom = c.domain.build();
  const TailLaw<double> law = c.law();
  std::vector<AnnealedEstimate> est;
  if (method == "quadrature") {
    for (double t : c.times) est.push_back(annealed_nonexit_quadrature(law, dom, t));
  } else if (method == "mc" || method == "is") {
    const std::uint64_t seed = seed_of(c, true, "nonexit --method " + method);
    std::optional<ProbabilityProfile<double>> g;
    if (method == "is") g = solve_L(dom, c.eta, c.solver).minimizer;
    for (std::size_t k = 0; k < c.times.size(); ++k) {
      Rng rng = make_stream(seed, k);
      est.push_back(method == "mc" ? annealed_nonexit_mc(law, dom, c.times[k], c.trials, rng)
                                   : annealed_nonexit_is(law, dom, c.times[k], c.trials, c.tilt_exponent(), rng, g));
    }
  } else {
    throw Error(ErrorCode::InvalidConfig, "unknown method '" + method + "' (quadrature, mc or is)");
  }
  Output o;
  o.table.header = {"t", "method", "estimate", "log_estimate", "standard_error", "rescaled", "ess", "samples"};
  json rows = json::array();
  for (const auto& a : est) {
    o.table.rows.push_back({num(a.t), a.method, num(a.estimate), num(a.log_estimate), num(a.standard_error),
                            num(a.rescaled), num(a.effective_sample_size), std::to_string(a.samples)});
    rows.push_back({{"t", a.t}, {"estimate", a.estimate}, {"log_estimate", a.log_estimate},
                    {"standard_error", a.standard_error}, {"rescaled", a.rescaled}});
  }
  o.result = {{"method", method}, {"rows", rows}};
  const auto& last = est.back();
  o.summary = "non-exit (" + method + ") t=" + num(last.t) + " rescaled " + num(last.rescaled);
  return o;
}

Output cmd_eigen_tail(const ExperimentConfig& c, const std::string& method) {
  const Domain dom = c.domain.build();
  TailMethod m;
  if (method == "quadrature") {
    m = TailMethod::Quadrature;
  } else if (method == "mc") {
    m = TailMethod::MonteCarlo;
  } else {
    throw Error(ErrorCode::InvalidConfig, "unknown method '" + method + "' (quadrature or mc)");
  }
  Rng rng = make_stream(seed_of(c, m == TailMethod::MonteCarlo, "eigen-tail --method mc"), 0);
  const auto pts = eigen_tail(c.law(), dom, c.eps, m, c.trials, rng);
  const double L = solve_L(dom, c.eta, c.solver).value;
  const double target = -c.dcoef * std::pow(L, c.eta + 1);
  Output o;
  o.table.header = {"eps", "probability", "log_probability", "scaled_log", "standard_error", "target"};
  for (const auto& p : pts) {
    o.table.rows.push_back({num(p.eps), num(p.probability), num(p.log_probability), num(p.scaled_log),
                            num(p.standard_error), num(target)});
  }
  o.result = {{"method", method}, {"L", L}, {"target", target}};
  o.summary = "eigen tail at eps=" + num(pts.back().eps) + ": scaled log " + num(pts.back().scaled_log) +
              " (limit " + num(target) + ")";
  return o;
}

Output cmd_tauberian(const ExperimentConfig& c) {
  Output o;
  o.table.header = {"M", "t", "value", "target"};
  std::string last;
  for (double M : c.tauberian_M) {
    for (const auto& p : tauberian_check(c.law(), M, c.times)) {
      o.table.rows.push_back({num(M), num(p.t), num(p.value), num(p.target)});
      last = "M=" + num(M) + " t=" + num(p.t) + ": " + num(p.value) + " (limit " + num(p.target) + ")";
    }
  }
  o.summary = "tauberian " + last;
  return o;
}

Output cmd_ldp(const ExperimentConfig& c) {
  const Domain dom = c.domain.build();
  Rng rng = make_stream(seed_of(c, false, "ldp-check"), 0);
  const VariationalResult v = solve_L(dom, c.eta, c.solver);
  LdpSettings s;
  s.times = c.times;
  s.deltas = c.deltas;
  s.fields = c.trials;
  s.paths = c.paths;
  s.r = c.tilt_exponent();
  const LdpReport rep = ldp_point_check(c.law(), v.minimizer, s, rng);
  Output o;
  o.table.header = {"t", "delta", "estimate", "standard_error", "rescaled", "minus_j", "slack", "lower_bound_ok"};
  bool ok = true;
  for (const auto& r : rep.rows) {
    ok = ok && r.lower_bound_ok;
    o.table.rows.push_back({num(r.t), num(r.delta), num(r.estimate), num(r.standard_error), num(r.rescaled),
                            num(rep.minus_j), num(r.slack), r.lower_bound_ok ? "1" : "0"});
  }
  o.result = {{"minus_j", rep.minus_j}, {"profile", vec(v.minimizer.values())}, {"lower_bound_ok", ok}};
  o.summary = "ldp check against -J = " + num(rep.minus_j) + ": lower bound " + (ok ? "holds" : "VIOLATED");
  return o;
}

Output cmd_girsanov(const ExperimentConfig& c) {
  const Domain dom = c.domain.build();
  Rng rng = make_stream(seed_of(c, false, "girsanov-test"), 0);
  const Field psi = Field::constant(dom, 1.0);
  const Field phi = uniform_field(dom, 0.5, 2.0, rng);
  const Field chi = uniform_field(dom, 0.5, 2.0, rng);
  const double t = c.times.front();
  const GirsanovReport r = girsanov_check(phi, psi, chi, dom, t, c.trials, rng);
  Output o;
  o.table.header = {"t", "paths", "mean", "standard_error", "cocycle_error", "antisymmetry_error"};
  o.table.rows.push_back({num(t), std::to_string(r.paths), num(r.mean), num(r.standard_error),
                          num(r.cocycle_error), num(r.antisymmetry_error)});
  o.result = {{"phi", field_to_json(phi)}, {"chi", field_to_json(chi)}};
  o.summary = "girsanov mean " + num(r.mean) + " +- " + num(r.standard_error) + " over " + std::to_string(r.paths) +
              " paths";
  return o;
}

std::string output_stem(const std::string& out) {
  std::filesystem::path p(out);
  if (p.extension() == ".csv" || p.extension() == ".json") p.replace_extension();
  return p.string();
}

void emit(const Output& o, const std::string& command, const ExperimentConfig& c, double wall, std::ostream& out) {
  if (c.out.empty()) {
    if (o.json_primary) {
      out << o.result.dump(2) << '\n';
    } else {
      o.table.write(out);
    }
    out << command << ": " << o.summary << '\n';
    return;
  }
  const std::string stem = output_stem(c.out);
  {
    std::ofstream csv(stem + ".csv");
    if (!csv) throw Error(ErrorCode::InvalidConfig, "cannot write '" + stem + ".csv'");
    o.table.write(csv);
  }
  json summary = {{"command", command},
                  {"version", version_string()},
                  {"wall_time_s", wall},
                  {"config", config_to_json(c)},
                  {"result", o.result}};
  std::ofstream js(stem + ".json");
  if (!js) throw Error(ErrorCode::InvalidConfig, "cannot write '" + stem + ".json'");
  js << summary.dump(2) << '\n';
  out << command << ": " << o.summary << " -> " << stem << ".csv\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random walks among random conductances: annealed non-exit asymptotics and checks", "rwrc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  Flags f;
  auto* sample = app.add_subcommand("sample-field", "draw one field from the tail law");
  auto* sim = app.add_subcommand("simulate", "simulate walks in one field");
  auto* solve = app.add_subcommand("solve-variational", "compute L_eta(B) and its minimizer");
  auto* nonexit = app.add_subcommand("nonexit", "annealed non-exit probability");
  auto* tail = app.add_subcommand("eigen-tail", "lower tail of the principal Dirichlet eigenvalue");
  auto* taub = app.add_subcommand("tauberian", "Laplace-transform form of the tail");
  auto* ldp = app.add_subcommand("ldp-check", "lower-bound check of the occupation-measure LDP");
  auto* gir = app.add_subcommand("girsanov-test", "normalisation and identities of the path density");
  for (auto* sub : {sample, sim, solve, nonexit, tail, taub, ldp, gir}) add_common(sub, f);
  f.method = "quadrature";
  nonexit->add_option("--method", f.method, "quadrature, mc or is")
      ->check(CLI::IsMember({"quadrature", "mc", "is"}));
  tail->add_option("--method", f.method, "quadrature or mc")->check(CLI::IsMember({"quadrature", "mc"}));
  sim->add_option("--field", f.field, "field JSON written by sample-field (default: sample one)");
  solve->add_flag("--brute", f.brute, "exhaustive search (at most four sites)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << version_string() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "rwrc: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    const ExperimentConfig c = resolve_config(sub, f);
    const auto start = std::chrono::steady_clock::now();
    Output o;
    if (sub == sample) o = cmd_sample_field(c);
    else if (sub == sim) o = cmd_simulate(c, f.field);
    else if (sub == solve) o = cmd_solve(c, f.brute);
    else if (sub == nonexit) o = cmd_nonexit(c, f.method);
    else if (sub == tail) o = cmd_eigen_tail(c, f.method);
    else if (sub == taub) o = cmd_tauberian(c);
    else if (sub == ldp) o = cmd_ldp(c);
    else o = cmd_girsanov(c);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(o, name, c, wall, out);
    return 0;
  } catch (const Error& e) {
    err << "rwrc " << name << ": " << e.what() << '\n';
    return is_numerical(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "rwrc " << name << ": " << e.what() << '\n';
    return 1;
  }
}

}  // namespace rwrc
