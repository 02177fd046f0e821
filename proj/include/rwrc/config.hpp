#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rwrc/domain.hpp"
#include "rwrc/tail_law.hpp"
#include "rwrc/variational.hpp"

namespace rwrc {

struct DomainSpec {
  std::string type = "box";  // "box" or "sites"
  int d = 1;
  int half_width = 0;
  std::vector<LatticePoint> sites;

  Domain build() const;
  /// Parses the short form "box<d>d:<h>", e.g. "box1d:2".
  static DomainSpec parse_short(const std::string& text);
  bool operator==(const DomainSpec&) const = default;
};

struct ExperimentConfig {
  DomainSpec domain;
  double eta = 1.0;
  double dcoef = 1.0;
  std::vector<double> times{1.0};
  int trials = 10000;
  double cap_M = 1e6;
  std::optional<double> r;  // tilt exponent; 1/(1+eta) when unset
  std::optional<std::uint64_t> seed;
  std::string out;

  // Subcommand-specific settings.
  std::vector<double> eps{0.01};          // eigen-tail
  std::vector<double> tauberian_M{1.0};   // tauberian
  std::vector<double> deltas{0.1, 0.2};   // ldp-check ball radii
  int paths = 200;                        // ldp-check walks per field
  SolverOptions solver;

  TailLaw<double> law() const { return {eta, dcoef}; }
  double tilt_exponent() const { return r.value_or(1.0 / (1.0 + eta)); }
  /// Throws InvalidConfig when a count or parameter is out of range.
  void validate() const;
  bool operator==(const ExperimentConfig& other) const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::string& path);

}  // namespace rwrc
