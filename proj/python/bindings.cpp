#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "robandit/accb.hpp"
#include "robandit/baselines.hpp"
#include "robandit/config.hpp"
#include "robandit/critic.hpp"
#include "robandit/envsim.hpp"
#include "robandit/error.hpp"
#include "robandit/evalharness.hpp"
#include "robandit/report.hpp"

namespace py = pybind11;
using namespace robandit;

namespace {

Rng seeded(std::uint64_t seed) { return Rng(seed); }

}  // namespace

PYBIND11_MODULE(_robandit, m) {
  m.doc() = "Robust actor-critic contextual bandit: simulator, critic, actor, baselines and sweeps";

  static py::exception<Error> exc(m, "RobanditError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      exc(e.what());
    }
  });

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("beta", &SimConfig::beta)
      .def_readwrite("p", &SimConfig::p)
      .def_readwrite("sigma_s", &SimConfig::sigma_s)
      .def_readwrite("sigma_r", &SimConfig::sigma_r)
      .def_readwrite("init_cov", &SimConfig::init_cov)
      .def_readwrite("horizon_T", &SimConfig::horizon_T)
      .def("validate", [](const SimConfig& c) { validate(c); });

  py::class_<OutlierConfig>(m, "OutlierConfig")
      .def(py::init<>())
      .def(py::init([](double psi, double nu) { return OutlierConfig{psi, nu}; }), py::arg("psi"), py::arg("nu"))
      .def_readwrite("psi", &OutlierConfig::psi)
      .def_readwrite("nu", &OutlierConfig::nu);

  py::class_<Trajectory>(m, "Trajectory")
      .def("__len__", &Trajectory::size)
      .def_property_readonly("states",
                             [](const Trajectory& t) {
                               const Eigen::Index p = t.empty() ? 0 : t.tuples.front().state.size();
                               Eigen::MatrixXd s(static_cast<Eigen::Index>(t.size()), p);
                               for (std::size_t i = 0; i < t.size(); ++i)
                                 s.row(static_cast<Eigen::Index>(i)) = t.tuples[i].state.transpose();
                               return s;
                             })
      .def_property_readonly("actions",
                             [](const Trajectory& t) {
                               std::vector<int> a;
                               for (const auto& tu : t.tuples) a.push_back(tu.action);
                               return a;
                             })
      .def_property_readonly("rewards", [](const Trajectory& t) { return reward_vector(t); })
      .def_property_readonly("outlier_mask", [](const Trajectory& t) { return t.outlier_mask; });

  m.def(
      "generate_trajectory", [](const SimConfig& cfg, std::uint64_t seed) {
        validate(cfg);
        Rng rng = seeded(seed);
        return generate_trajectory(cfg, rng);
      },
      py::arg("cfg"), py::arg("seed"));
  m.def(
      "inject_outliers", [](const Trajectory& t, const OutlierConfig& oc, std::uint64_t seed) {
        Rng rng = seeded(seed);
        return inject_outliers(t, oc, rng);
      },
      py::arg("traj"), py::arg("oc"), py::arg("seed"));

  py::class_<CriticConfig>(m, "CriticConfig")
      .def(py::init<>())
      .def_readwrite("zeta", &CriticConfig::zeta)
      .def_readwrite("tau", &CriticConfig::tau)
      .def_readwrite("max_iters", &CriticConfig::max_iters)
      .def_readwrite("capped", &CriticConfig::capped);

  py::class_<CriticFit>(m, "CriticFit")
      .def_readonly("w", &CriticFit::w)
      .def_readonly("weights", &CriticFit::weights)
      .def_readonly("epsilon", &CriticFit::epsilon)
      .def_readonly("iters", &CriticFit::iters)
      .def_readonly("converged", &CriticFit::converged)
      .def_readonly("objective_trace", &CriticFit::objective_trace);

  py::class_<ActorConfig>(m, "ActorConfig")
      .def(py::init<>())
      .def_readwrite("lambda_", &ActorConfig::lambda)
      .def_readwrite("max_iters", &ActorConfig::max_iters)
      .def_readwrite("grad_tol", &ActorConfig::grad_tol);

  py::class_<ActorFit>(m, "ActorFit")
      .def_property_readonly("theta", [](const ActorFit& f) { return f.params.theta; })
      .def_readonly("objective", &ActorFit::objective)
      .def_readonly("iters", &ActorFit::iters)
      .def_readonly("converged", &ActorFit::converged);

  py::class_<AccbFit>(m, "AccbFit").def_readonly("critic", &AccbFit::critic).def_readonly("actor", &AccbFit::actor);

  m.def(
      "compute_epsilon",
      [](const std::vector<double>& r2, double tau) { return compute_epsilon(r2, tau); }, py::arg("residuals_sq"),
      py::arg("tau") = 1.0);
  m.def("weighted_ridge", &weighted_ridge, py::arg("X"), py::arg("r"), py::arg("weights"), py::arg("zeta"));
  m.def("fit_critic", py::overload_cast<const Trajectory&, const CriticConfig&>(&fit_critic), py::arg("data"),
        py::arg("cfg") = CriticConfig{});
  m.def(
      "actor_objective",
      [](const Eigen::VectorXd& theta, const Trajectory& d, const Eigen::VectorXd& weights, const Eigen::VectorXd& w,
         double lambda) { return actor_objective(PolicyParams{theta}, d, weights, w, lambda); },
      py::arg("theta"), py::arg("data"), py::arg("weights"), py::arg("w"), py::arg("lambda_"));
  m.def(
      "actor_gradient",
      [](const Eigen::VectorXd& theta, const Trajectory& d, const Eigen::VectorXd& weights, const Eigen::VectorXd& w,
         double lambda) { return actor_gradient(PolicyParams{theta}, d, weights, w, lambda); },
      py::arg("theta"), py::arg("data"), py::arg("weights"), py::arg("w"), py::arg("lambda_"));
  m.def("fit_actor",
        py::overload_cast<const Trajectory&, const Eigen::VectorXd&, const Eigen::VectorXd&, const ActorConfig&>(
            &fit_actor),
        py::arg("data"), py::arg("weights"), py::arg("w"), py::arg("cfg") = ActorConfig{});
  m.def("fit_rs_accb", &fit_rs_accb, py::arg("data"), py::arg("critic") = CriticConfig{},
        py::arg("actor") = ActorConfig{});
  m.def("fit_s_accb",
        py::overload_cast<const Trajectory&, const CriticConfig&, const ActorConfig&>(&fit_s_accb),
        py::arg("data"), py::arg("critic") = CriticConfig{}, py::arg("actor") = ActorConfig{});
  m.def(
      "linucb_train_select",
      [](const Trajectory& d, double alpha, const Eigen::VectorXd& s) {
        return linucb_select(linucb_train(d, alpha), s);
      },
      py::arg("data"), py::arg("alpha_ucb"), py::arg("state"));

  m.def(
      "average_reward",
      [](const std::function<double(const Eigen::VectorXd&)>& policy, const SimConfig& cfg, int eval_horizon,
         int tail, std::uint64_t seed) {
        EvalConfig ec;
        ec.eval_horizon = eval_horizon;
        ec.tail = tail;
        Rng rng = seeded(seed);
        return average_reward(policy, cfg, ec, rng);
      },
      py::arg("policy"), py::arg("cfg"), py::arg("eval_horizon") = 5000, py::arg("tail") = 4000,
      py::arg("seed") = 0);
  m.def(
      "elrar",
      [](const std::vector<double>& etas) {
        const Elrar e = elrar(etas);
        return py::make_tuple(e.mean, e.std);
      },
      py::arg("etas"));

  m.def(
      "run_sweep",
      [](const std::string& setting, const std::string& config_json) {
        const RunConfig cfg = config_from_json(nlohmann::json::parse(config_json.empty() ? "{}" : config_json));
        ExperimentReport rep;
        {
          py::gil_scoped_release release;
          if (setting == "S1")
            rep = run_sweep_s1(cfg.psis, cfg.outliers.nu, cfg.harness);
          else if (setting == "S2")
            rep = run_sweep_s2(cfg.nus, cfg.outliers.psi, cfg.harness);
          else
            throw Error(ErrorCode::ConfigParse, "setting must be 'S1' or 'S2'");
        }
        return report_to_json(rep).dump();
      },
      py::arg("setting"), py::arg("config_json") = "{}",
      "Run a sweep; returns the JSON report as a string.");
}
