#include "rwrc/conductance_field.hpp"

namespace rwrc {

nlohmann::json field_to_json(const ConductanceField<double>& f) {
  const auto& w = f.weights();
  return {{"domain", domain_to_json(f.domain())},
          {"weights", std::vector<double>(w.data(), w.data() + w.size())}};
}

ConductanceField<double> field_from_json(const nlohmann::json& j) {
  Domain dom = domain_from_json(j.at("domain"));
  std::vector<double> w;
  try {
    w = j.at("weights").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("field JSON: ") + e.what());
  }
  return {dom, Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()))};
}

}  // namespace rwrc
