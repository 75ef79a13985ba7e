#pragma once

#include <json.hpp>

#include "robandit/actor.hpp"
#include "robandit/critic.hpp"
#include "robandit/envsim.hpp"
#include "robandit/features.hpp"

namespace robandit {

using json = nlohmann::json;

json to_json(const Eigen::VectorXd& v);
json to_json(const Eigen::MatrixXd& m);
Eigen::VectorXd vector_from_json(const json& j);
Eigen::MatrixXd matrix_from_json(const json& j);

json to_json(const SimConfig& cfg);
json to_json(const OutlierConfig& oc);
/// w, weights, epsilon (null when uncapped), iters, converged, objective_trace.
json to_json(const CriticFit& fit);
json to_json(const PolicyParams& params);

CriticFit critic_fit_from_json(const json& j);
PolicyParams policy_params_from_json(const json& j);

}  // namespace robandit
