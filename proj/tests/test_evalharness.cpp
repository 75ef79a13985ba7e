#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "robandit/error.hpp"
#include "robandit/evalharness.hpp"
#include "robandit/report.hpp"
#include "test_helpers.hpp"

using namespace robandit;
using robandit::testing::bit_equal;
using robandit::testing::noiseless;

namespace {

HarnessConfig small_harness(int users = 4) {
  HarnessConfig hc;
  hc.eval.eval_horizon = 500;
  hc.eval.tail = 400;
  hc.eval.n_users = users;
  hc.eval.base_seed = 12345;
  return hc;
}

}  // namespace

TEST_CASE("average_reward") {
  SUBCASE("constant-reward environment") {
    SimConfig cfg = noiseless();
    for (int i = 0; i < 7; ++i) cfg.beta[static_cast<std::size_t>(i)] = 0.0;
    EvalConfig ec;
    Rng rng(1);
    CHECK(average_reward([](const Eigen::VectorXd&) { return 0.0; }, cfg, ec, rng) == 1500.0);
  }
  SUBCASE("tail equal to the horizon averages everything") {
    SimConfig cfg = noiseless();
    for (int i = 0; i < 7; ++i) cfg.beta[static_cast<std::size_t>(i)] = 0.0;
    EvalConfig ec;
    ec.eval_horizon = ec.tail = 4;
    Rng rng(2);
    const double v = average_reward([](const Eigen::VectorXd&) { return 1.0; }, cfg, ec, rng);
    CHECK(v == 1625.0);
    // alternate: a random policy over a flat environment averages between the two values
    ec.eval_horizon = ec.tail = 1000;
    Rng rng2(3);
    const double mix = average_reward([](const Eigen::VectorXd&) { return 0.5; }, cfg, ec, rng2);
    CHECK(mix > 1500.0);
    CHECK(mix < 1625.0);
    CHECK(std::fmod(mix * 1000.0, 125.0) == 0.0);
  }
  SUBCASE("same seed, same value") {
    SimConfig cfg;
    EvalConfig ec;
    ec.eval_horizon = 300;
    ec.tail = 200;
    auto pol = [](const Eigen::VectorXd& s) { return s[0] > 0 ? 0.8 : 0.2; };
    Rng a(9), b(9);
    CHECK(average_reward(pol, cfg, ec, a) == average_reward(pol, cfg, ec, b));
  }
  SUBCASE("tail longer than the horizon is rejected") {
    EvalConfig ec;
    ec.tail = ec.eval_horizon + 1;
    Rng rng(1);
    CHECK_THROWS_AS(average_reward([](const Eigen::VectorXd&) { return 0.0; }, SimConfig{}, ec, rng), Error);
  }
}

TEST_CASE("elrar") {
  const std::vector<double> a{1, 1, 1};
  CHECK(elrar(a).mean == 1.0);
  CHECK(elrar(a).std == 0.0);
  const std::vector<double> b{0, 2};
  CHECK(elrar(b).mean == 1.0);
  CHECK(elrar(b).std == doctest::Approx(std::sqrt(2.0)));
  const std::vector<double> c{1500, 1625};
  CHECK(elrar(c).mean == 1562.5);
  CHECK(std::abs(elrar(c).std - 88.39) < 0.01);
  const std::vector<double> one{3.0};
  try {
    elrar(one);
    FAIL("expected InsufficientUsers");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientUsers);
  }
}

TEST_CASE("seed discipline") {
  SimConfig cfg;
  SUBCASE("training data is shared across methods and reproducible") {
    const auto a = training_data(cfg, {0.05, 5.0}, 77, 3);
    const auto b = training_data(cfg, {0.05, 5.0}, 77, 3);
    CHECK(bit_equal(a, b));
    const auto other_user = training_data(cfg, {0.05, 5.0}, 77, 4);
    CHECK_FALSE(bit_equal(a, other_user));
  }
  SUBCASE("contamination only touches flagged tuples of the shared clean trajectory") {
    const auto clean = training_data(cfg, {0.0, 5.0}, 77, 3);
    const auto dirty = training_data(cfg, {0.09, 5.0}, 77, 3);
    int flagged = 0;
    for (std::size_t i = 0; i < clean.size(); ++i) {
      if (dirty.outlier_mask[i]) {
        ++flagged;
        continue;
      }
      CHECK(dirty.tuples[i].reward == clean.tuples[i].reward);
    }
    CHECK(flagged == 18);
  }
  SUBCASE("seeds differ per user and purpose") {
    const auto s0 = user_seeds(1, 0), s1 = user_seeds(1, 1);
    CHECK(s0.train != s1.train);
    CHECK(s0.train != s0.evaluate);
    CHECK(s0.contaminate != s0.evaluate);
  }
}

TEST_CASE("run_condition") {
  HarnessConfig hc = small_harness();
  const OutlierConfig oc{0.05, 5.0};

  SUBCASE("deterministic and independent of thread count") {
    const auto a = run_condition(Method::RSACCB, oc, hc);
    hc.threads = 3;
    const auto b = run_condition(Method::RSACCB, oc, hc);
    REQUIRE(a.users.size() == 4);
    CHECK(a.n_users == 4);
    for (std::size_t i = 0; i < a.users.size(); ++i) CHECK(*a.users[i].eta == *b.users[i].eta);
    CHECK(a.mean == b.mean);
    CHECK(a.std == b.std);
    CHECK(a.std >= 0.0);
  }
  SUBCASE("every method runs") {
    for (Method m : kAllMethods) {
      const auto r = run_condition(m, oc, hc);
      CHECK(r.method == m);
      CHECK(std::isfinite(r.mean));
    }
  }
  SUBCASE("evaluation never sees contamination") {
    // Noiseless flat dynamics: every evaluation reward is 1500 or 1625 no
    // matter how violently the training data was corrupted.
    HarnessConfig flat = small_harness(3);
    flat.sim = noiseless();
    for (int i = 0; i < 7; ++i) flat.sim.beta[static_cast<std::size_t>(i)] = 0.0;
    for (Method m : kAllMethods) {
      const auto r = run_condition(m, {0.2, 10.0}, flat);
      for (const auto& u : r.users) {
        REQUIRE(u.eta);
        CHECK(*u.eta >= 1500.0);
        CHECK(*u.eta <= 1625.0);
        CHECK(std::fmod(*u.eta * flat.eval.tail, 125.0) == 0.0);
      }
    }
  }
  SUBCASE("training failures are recorded, not thrown") {
    HarnessConfig tiny = small_harness(3);
    tiny.sim.horizon_T = 3;  // too short for the capped critic
    const auto r = run_condition(Method::RSACCB, {0.0, 0.0}, tiny);
    CHECK(r.n_users == 0);
    for (const auto& u : r.users) {
      CHECK_FALSE(u.eta.has_value());
      CHECK(u.error.find("InsufficientSamplesForQuantiles") != std::string::npos);
    }
    CHECK(std::isnan(r.std));
  }
}

TEST_CASE("sweeps and reports") {
  const HarnessConfig hc = small_harness(3);
  SUBCASE("empty axis gives an empty report") {
    const std::vector<double> none;
    const auto rep = run_sweep_s1(none, 5.0, hc);
    CHECK(rep.rows.empty());
    std::ostringstream md;
    write_report_markdown(md, rep);
    CHECK(md.str().find("Avg") == std::string::npos);
  }
  SUBCASE("single clean row has three cells that match run_condition") {
    const std::vector<double> psis{0.0};
    const auto rep = run_sweep_s1(psis, 5.0, hc);
    REQUIRE(rep.rows.size() == 1);
    REQUIRE(rep.rows[0].cells.size() == 3);
    CHECK(rep.setting == "S1");
    CHECK(rep.fixed_nu == 5.0);
    const auto direct = run_condition(Method::SACCB, {0.0, 5.0}, hc);
    CHECK(rep.rows[0].cells[1].mean == direct.mean);
  }
  SUBCASE("outputs round-trip through their parsers") {
    const std::vector<double> nus{0.0, 4.0};
    const auto rep = run_sweep_s2(nus, 0.04, hc);
    CHECK(rep.axis_name == "nu");

    std::stringstream csv;
    write_report_csv(csv, rep);
    const auto rows = read_report_csv(csv);
    const auto expect = report_csv_rows(rep);
    REQUIRE(rows.size() == 6);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].setting == expect[i].setting);
      CHECK(rows[i].axis_value == expect[i].axis_value);
      CHECK(rows[i].method == expect[i].method);
      CHECK(rows[i].elrar_mean == expect[i].elrar_mean);
      CHECK(rows[i].elrar_std == expect[i].elrar_std);
      CHECK(rows[i].n_users == expect[i].n_users);
    }

    const auto j = report_to_json(rep);
    const auto back = report_from_json(nlohmann::json::parse(j.dump()));
    CHECK(report_to_json(back) == j);
    REQUIRE(back.rows.size() == 2);
    CHECK(*back.rows[1].cells[2].users[1].eta == *rep.rows[1].cells[2].users[1].eta);

    std::ostringstream md;
    write_report_markdown(md, rep);
    const std::string text = md.str();
    CHECK(text.rfind("| ν | Lin-UCB | S-ACCB | RS-ACCB |", 0) == 0);
    CHECK(text.find("| Avg |") != std::string::npos);
  }
}
