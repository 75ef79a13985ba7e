#include "robandit/envsim.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "robandit/error.hpp"

namespace robandit {

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  os << v;
  return os.str();
}

}  // namespace

void validate(const SimConfig& cfg) {
  if (cfg.p < 3) throw Error(ErrorCode::ConfigParse, "p must be >= 3, got " + std::to_string(cfg.p));
  if (cfg.horizon_T <= 0) throw Error(ErrorCode::ConfigParse, "horizon_T must be positive");
  if (!(cfg.sigma_s >= 0.0) || !std::isfinite(cfg.sigma_s))
    throw Error(ErrorCode::ConfigParse, "sigma_s must be finite and >= 0");
  if (!(cfg.sigma_r >= 0.0) || !std::isfinite(cfg.sigma_r))
    throw Error(ErrorCode::ConfigParse, "sigma_r must be finite and >= 0");
  for (double b : cfg.beta)
    if (!std::isfinite(b)) throw Error(ErrorCode::ConfigParse, "beta entries must be finite");
  const auto& S = cfg.init_cov;
  if (S.rows() != cfg.p || S.cols() != cfg.p)
    throw Error(ErrorCode::ConfigParse, "init_cov must be p x p");
  if (!S.allFinite()) throw Error(ErrorCode::ConfigParse, "init_cov must be finite");
  if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(ErrorCode::ConfigParse, "init_cov must be symmetric");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(S, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw Error(ErrorCode::ConfigParse, "init_cov must be positive semidefinite");
}

void validate(const OutlierConfig& oc) {
  if (!(oc.psi >= 0.0 && oc.psi <= 1.0)) throw Error(ErrorCode::ConfigParse, "psi must lie in [0, 1]");
  if (!(oc.nu >= 0.0) || !std::isfinite(oc.nu)) throw Error(ErrorCode::ConfigParse, "nu must be finite and >= 0");
}

VectorXd init_state(const SimConfig& cfg, Rng& rng) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(cfg.init_cov);
  const VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  VectorXd z(cfg.p);
  for (int j = 0; j < cfg.p; ++j) z[j] = standard_normal(rng);
  return es.eigenvectors() * root.asDiagonal() * z;
}

VectorXd transition(const SimConfig& cfg, const VectorXd& prev, int prev_action, Rng& rng) {
  const auto& b = cfg.beta;
  const double a = prev_action;
  VectorXd next(cfg.p);
  next[0] = b[0] * prev[0];
  next[1] = b[1] * prev[1] + b[2] * a;
  next[2] = b[3] * prev[2] + b[4] * prev[2] * a + b[5] * a;
  for (int j = 3; j < cfg.p; ++j) next[j] = b[6] * prev[j];
  for (int j = 0; j < cfg.p; ++j) next[j] += cfg.sigma_s * standard_normal(rng);
  return next;
}

double reward(const SimConfig& cfg, const VectorXd& s, int action, Rng& rng) {
  const auto& b = cfg.beta;
  const double a = action;
  const double noise = cfg.sigma_r * standard_normal(rng);
  return b[13] * (b[7] + a * (b[8] + b[9] * s[0] + b[10] * s[1]) + b[11] * s[0] - b[12] * s[2] + noise);
}

std::pair<VectorXd, double> step(const SimConfig& cfg, const VectorXd& prev_state, int prev_action, int action,
                                 Rng& rng) {
  VectorXd next = transition(cfg, prev_state, prev_action, rng);
  const double r = reward(cfg, next, action, rng);
  return {std::move(next), r};
}

Trajectory generate_trajectory(const SimConfig& cfg, Rng& rng) {
  Trajectory traj;
  const auto T = static_cast<std::size_t>(std::max(cfg.horizon_T, 0));
  traj.tuples.reserve(T);
  traj.outlier_mask.assign(T, false);
  if (T == 0) return traj;

  VectorXd s = init_state(cfg, rng);
  int a = fair_coin(rng);
  double r = reward(cfg, s, a, rng);
  traj.tuples.push_back({s, a, r});
  for (std::size_t t = 1; t < T; ++t) {
    const int prev_a = a;
    a = fair_coin(rng);
    auto [next, rr] = step(cfg, s, prev_a, a, rng);
    s = std::move(next);
    traj.tuples.push_back({s, a, rr});
  }
  return traj;
}

Trajectory inject_outliers(const Trajectory& traj, const OutlierConfig& oc, Rng& rng) {
  validate(oc);
  Trajectory out = traj;
  const std::size_t T = traj.size();
  if (out.outlier_mask.size() != T) out.outlier_mask.assign(T, false);
  const auto k = static_cast<std::size_t>(std::floor(oc.psi * static_cast<double>(T)));
  if (k == 0) return out;

  const Eigen::Index p = traj.tuples.front().state.size();
  VectorXd mean_abs_s = VectorXd::Zero(p);
  double mean_abs_r = 0.0;
  for (const auto& tu : traj.tuples) {
    mean_abs_s += tu.state.cwiseAbs();
    mean_abs_r += std::abs(tu.reward);
  }
  mean_abs_s /= static_cast<double>(T);
  mean_abs_r /= static_cast<double>(T);

  // Partial Fisher-Yates: the first k slots become a uniform k-subset.
  std::vector<std::size_t> idx(T);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, T - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  for (std::size_t i = 0; i < k; ++i) {
    auto& tu = out.tuples[idx[i]];
    tu.state += oc.nu * mean_abs_s;
    tu.reward += oc.nu * mean_abs_r;
    tu.action = fair_coin(rng);
    out.outlier_mask[idx[i]] = true;
  }
  return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const Eigen::Index p = traj.empty() ? 0 : traj.tuples.front().state.size();
  os << "t";
  for (Eigen::Index j = 0; j < p; ++j) os << ",s" << (j + 1);
  os << ",a,r,outlier\n";
  for (std::size_t t = 0; t < traj.size(); ++t) {
    const auto& tu = traj.tuples[t];
    os << t;
    for (Eigen::Index j = 0; j < p; ++j) os << ',' << fmt_double(tu.state[j]);
    os << ',' << tu.action << ',' << fmt_double(tu.reward) << ',' << (traj.outlier_mask[t] ? 1 : 0) << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& is) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::ConfigParse, "trajectory csv: missing header");
  const auto header = split(line);
  if (header.size() < 4 || header.front() != "t" || header[header.size() - 3] != "a" ||
      header[header.size() - 2] != "r" || header.back() != "outlier")
    throw Error(ErrorCode::ConfigParse, "trajectory csv: unexpected header '" + line + "'");
  const std::size_t p = header.size() - 4;

  Trajectory traj;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size())
      throw Error(ErrorCode::ConfigParse, "trajectory csv: wrong cell count in '" + line + "'");
    try {
      Tuple tu;
      tu.state.resize(static_cast<Eigen::Index>(p));
      for (std::size_t j = 0; j < p; ++j) tu.state[static_cast<Eigen::Index>(j)] = std::stod(cells[1 + j]);
      tu.action = std::stoi(cells[1 + p]);
      tu.reward = std::stod(cells[2 + p]);
      traj.tuples.push_back(std::move(tu));
      traj.outlier_mask.push_back(std::stoi(cells[3 + p]) != 0);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ConfigParse, "trajectory csv: bad number in '" + line + "'");
    }
  }
  return traj;
}

}  // namespace robandit
