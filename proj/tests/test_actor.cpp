#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "robandit/accb.hpp"
#include "robandit/actor.hpp"
#include "robandit/baselines.hpp"
#include "robandit/error.hpp"

using namespace robandit;

namespace {

Trajectory random_traj(int T, Rng& rng, int p = 3) {
  const Eigen::MatrixXd X = oracle::random_design(p, T, rng);
  return oracle::as_trajectory(X, oracle::random_vector(T, rng, 5.0));
}

Eigen::MatrixXd weighted_policy_gram(const Trajectory& t, const Eigen::VectorXd& u) {
  const Eigen::Index m = t.tuples.front().state.size() + 1;
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Eigen::VectorXd g = policy_diff_feature(t.tuples[i].state);
    G += u[static_cast<Eigen::Index>(i)] * g * g.transpose();
  }
  return G / static_cast<double>(t.size());
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected robandit::Error");
  return ErrorCode::ConfigParse;
}

}  // namespace

TEST_CASE("actor_objective special cases") {
  Rng rng(1);
  const Trajectory t = random_traj(12, rng);
  const Eigen::VectorXd w = oracle::random_vector(8, rng);
  const Eigen::VectorXd theta = oracle::random_vector(4, rng);

  SUBCASE("all-zero weights") {
    const Eigen::VectorXd u = Eigen::VectorXd::Zero(12);
    CHECK(actor_objective({theta}, t, u, w, 0.5) == 0.0);
    CHECK(actor_gradient({theta}, t, u, w, 0.5).isZero(0.0));
  }
  SUBCASE("action-independent reward model") {
    Eigen::VectorXd wc = Eigen::VectorXd::Zero(8);
    wc[0] = 7.5;
    Eigen::VectorXd u = Eigen::VectorXd::Ones(12);
    u[3] = u[8] = 0.0;
    for (int k = 0; k < 5; ++k) {
      const Eigen::VectorXd th = oracle::random_vector(4, rng, 3.0);
      CHECK(actor_objective({th}, t, u, wc, 0.0) == doctest::Approx(7.5 * 10.0 / 12.0).epsilon(1e-14));
    }
  }
  SUBCASE("pure penalty") {
    const Eigen::VectorXd u = Eigen::VectorXd::Ones(12);
    const Eigen::VectorXd w0 = Eigen::VectorXd::Zero(8);
    const Eigen::MatrixXd G = weighted_policy_gram(t, u);
    const double lam = 0.3;
    CHECK(actor_objective({theta}, t, u, w0, lam) == doctest::Approx(-lam * theta.dot(G * theta)).epsilon(1e-12));
    CHECK(actor_objective({theta}, t, u, w0, lam) <= 0.0);
    CHECK(actor_objective({Eigen::VectorXd::Zero(4)}, t, u, w0, lam) == 0.0);
    CHECK((actor_gradient({theta}, t, u, w0, lam) + 2.0 * lam * G * theta).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("actor_gradient matches central differences") {
  Rng rng(2);
  for (int k = 0; k < 100; ++k) {
    const Trajectory t = random_traj(6, rng);
    const Eigen::VectorXd w = oracle::random_vector(8, rng, 3.0);
    Eigen::VectorXd u(6);
    for (int i = 0; i < 6; ++i) u[i] = fair_coin(rng);
    const Eigen::VectorXd theta = oracle::random_vector(4, rng);
    const double lam = std::abs(standard_normal(rng));
    const ActorProblem prob = make_actor_problem(t, u, w, lam);

    const Eigen::VectorXd g = actor_gradient(theta, prob);
    Eigen::VectorXd fd(4);
    constexpr double h = 1e-5;
    for (int j = 0; j < 4; ++j) {
      Eigen::VectorXd tp = theta, tm = theta;
      tp[j] += h;
      tm[j] -= h;
      fd[j] = (actor_objective(tp, prob) - actor_objective(tm, prob)) / (2 * h);
    }
    CHECK((fd - g).norm() <= 1e-6 * std::max(g.norm(), 1e-3));
  }
}

TEST_CASE("fit_actor") {
  Rng rng(3);

  SUBCASE("pure penalty is maximized at zero") {
    const Trajectory t = random_traj(30, rng);
    ActorConfig cfg;
    cfg.lambda = 0.5;
    cfg.theta_init = oracle::random_vector(4, rng);
    const ActorFit fit = fit_actor(t, Eigen::VectorXd::Ones(30), Eigen::VectorXd::Zero(8), cfg);
    CHECK(fit.converged);
    CHECK(fit.params.theta.cwiseAbs().maxCoeff() < 1e-6);
  }

  SUBCASE("one-dimensional instance agrees with grid search") {
    ActorProblem prob;
    prob.diff_features.resize(1, 5);
    prob.diff_features << 1.0, -0.5, 2.0, 0.3, -1.2;
    prob.advantage.resize(5);
    prob.advantage << 3.0, -2.0, 1.0, 4.0, -1.0;
    prob.baseline = Eigen::VectorXd::Zero(5);
    prob.weights = Eigen::VectorXd::Ones(5);
    prob.lambda = 0.2;

    double best_theta = 0, best = -std::numeric_limits<double>::infinity();
    constexpr int kGrid = 100000;
    for (int i = 0; i <= kGrid; ++i) {
      const double th = -10.0 + 20.0 * i / kGrid;
      const double v = actor_objective(Eigen::VectorXd::Constant(1, th), prob);
      if (v > best) {
        best = v;
        best_theta = th;
      }
    }
    ActorConfig cfg;
    cfg.lambda = prob.lambda;
    const ActorFit fit = fit_actor(prob, cfg);
    CHECK(fit.converged);
    CHECK(std::abs(fit.params.theta[0] - best_theta) < 1e-3);
    CHECK(fit.objective >= best - 1e-9);
  }

  SUBCASE("uniformly better action 1 is preferred everywhere") {
    SimConfig sim;
    const Trajectory t = generate_trajectory(sim, rng);
    Eigen::VectorXd w = oracle::random_vector(8, rng);
    w.tail(3).setZero();
    w[4] = 10.0;  // advantage of action 1 is +10 at every state
    ActorConfig cfg;
    cfg.lambda = 1e-6;
    const ActorFit fit = fit_actor(t, Eigen::VectorXd::Ones(static_cast<Eigen::Index>(t.size())), w, cfg);
    for (const auto& tu : t.tuples) CHECK(policy_prob(fit.params, tu.state, 1) > 0.5);
  }

  SUBCASE("returned point never falls below the start") {
    for (int k = 0; k < 30; ++k) {
      const Trajectory t = random_traj(40, rng);
      const Eigen::VectorXd w = oracle::random_vector(8, rng, 50.0);
      Eigen::VectorXd u(40);
      for (int i = 0; i < 40; ++i) u[i] = fair_coin(rng);
      ActorConfig cfg;
      cfg.lambda = 1e-3;
      cfg.theta_init = oracle::random_vector(4, rng);
      const ActorProblem prob = make_actor_problem(t, u, w, cfg.lambda);
      const ActorFit fit = fit_actor(prob, cfg);
      CHECK(actor_objective(fit.params.theta, prob) >= actor_objective(cfg.theta_init, prob) - 1e-12);
      CHECK(fit.objective == actor_objective(fit.params.theta, prob));
    }
  }
}

TEST_CASE("zero-weight tuples never influence the actor") {
  Rng rng(4);
  SimConfig sim;
  for (int k = 0; k < 20; ++k) {
    Trajectory t = generate_trajectory(sim, rng);
    const CriticFit critic = fit_critic(t, CriticConfig{});
    Eigen::VectorXd u = critic.weights;
    const Eigen::Index T = u.size();
    const Eigen::Index victim = std::uniform_int_distribution<Eigen::Index>(0, T - 1)(rng);
    u[victim] = 0.0;

    ActorConfig cfg;
    const Eigen::VectorXd theta = oracle::random_vector(4, rng);
    const double j0 = actor_objective({theta}, t, u, critic.w, cfg.lambda);
    const ActorFit f0 = fit_actor(t, u, critic.w, cfg);

    Trajectory perturbed = t;
    auto& tu = perturbed.tuples[static_cast<std::size_t>(victim)];
    tu.state = oracle::random_vector(3, rng, 1e6);
    tu.action = 1 - tu.action;
    tu.reward = std::numeric_limits<double>::max();
    CHECK(actor_objective({theta}, perturbed, u, critic.w, cfg.lambda) == j0);
    const ActorFit f1 = fit_actor(perturbed, u, critic.w, cfg);
    CHECK(f1.params.theta == f0.params.theta);
    CHECK(f1.iters == f0.iters);
  }
}

TEST_CASE("RS-ACCB equals S-ACCB when no weight is zeroed") {
  Rng rng(5);
  SimConfig sim;
  sim.horizon_T = 100;
  const Trajectory t = generate_trajectory(sim, rng);
  // Large tau keeps every sample inside the cap.
  CriticConfig cc;
  cc.tau = 1e6;
  ActorConfig ac;
  const AccbFit robust = fit_rs_accb(t, cc, ac);
  REQUIRE(robust.critic.weights == Eigen::VectorXd::Ones(100));
  const AccbFit plain = fit_s_accb(t, cc, ac);
  CHECK(robust.critic.w == plain.critic.w);
  CHECK(robust.actor.params.theta == plain.actor.params.theta);
}

TEST_CASE("actor error paths") {
  Rng rng(6);
  const Trajectory t = random_traj(10, rng);
  const Eigen::VectorXd w = oracle::random_vector(8, rng);
  CHECK(code_of([&] { actor_objective({Eigen::VectorXd::Zero(3)}, t, Eigen::VectorXd::Ones(10), w, 0.1); }) ==
        ErrorCode::ShapeMismatch);
  CHECK(code_of([&] { actor_objective({Eigen::VectorXd::Zero(4)}, t, Eigen::VectorXd::Ones(9), w, 0.1); }) ==
        ErrorCode::ShapeMismatch);
  CHECK(code_of([&] { actor_gradient({Eigen::VectorXd::Zero(4)}, t, Eigen::VectorXd::Ones(10),
                                     Eigen::VectorXd::Zero(6), 0.1); }) == ErrorCode::ShapeMismatch);
  Eigen::VectorXd bad = w;
  bad[0] = std::numeric_limits<double>::quiet_NaN();
  CHECK(code_of([&] { fit_actor(t, Eigen::VectorXd::Ones(10), bad, ActorConfig{}); }) ==
        ErrorCode::NonFiniteObjective);
}
