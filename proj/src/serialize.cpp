#include "robandit/serialize.hpp"

#include <cmath>
#include <limits>

#include "robandit/error.hpp"

namespace robandit {

json to_json(const Eigen::VectorXd& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const Eigen::VectorXd row = m.row(i).transpose();
    rows.push_back(to_json(row));
  }
  return rows;
}

Eigen::VectorXd vector_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ConfigParse, "expected a numeric array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorCode::ConfigParse, "expected a numeric array");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ConfigParse, "expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Eigen::VectorXd row = vector_from_json(j[static_cast<std::size_t>(i)]);
    if (row.size() != cols) throw Error(ErrorCode::ConfigParse, "ragged matrix");
    m.row(i) = row.transpose();
  }
  return m;
}

json to_json(const SimConfig& cfg) {
  return json{{"beta", cfg.beta},       {"p", cfg.p},
              {"sigma_s", cfg.sigma_s}, {"sigma_r", cfg.sigma_r},
              {"init_cov", to_json(cfg.init_cov)}, {"horizon_T", cfg.horizon_T}};
}

json to_json(const OutlierConfig& oc) { return json{{"psi", oc.psi}, {"nu", oc.nu}}; }

json to_json(const CriticFit& fit) {
  json j{{"w", to_json(fit.w)},
         {"weights", to_json(fit.weights)},
         {"iters", fit.iters},
         {"converged", fit.converged},
         {"objective_trace", fit.objective_trace}};
  j["epsilon"] = std::isfinite(fit.epsilon) ? json(fit.epsilon) : json(nullptr);
  return j;
}

json to_json(const PolicyParams& params) { return json{{"theta", to_json(params.theta)}}; }

CriticFit critic_fit_from_json(const json& j) {
  CriticFit fit;
  fit.w = vector_from_json(j.at("w"));
  fit.weights = vector_from_json(j.at("weights"));
  fit.epsilon = j.at("epsilon").is_null() ? std::numeric_limits<double>::infinity() : j.at("epsilon").get<double>();
  fit.iters = j.at("iters").get<int>();
  fit.converged = j.value("converged", false);
  if (j.contains("objective_trace")) fit.objective_trace = j.at("objective_trace").get<std::vector<double>>();
  return fit;
}

PolicyParams policy_params_from_json(const json& j) { return {vector_from_json(j.at("theta"))}; }

}  // namespace robandit
