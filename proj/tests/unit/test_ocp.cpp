#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "polyddp/ocp/constraints.hpp"
#include "polyddp/ocp/duals.hpp"
#include "polyddp/ocp/homotopy.hpp"
#include "test_support.hpp"

using namespace polyddp;
using namespace polyddp::ocp;

namespace {

CostSpec cost(double eta, double sigma) {
  CostSpec c;
  c.eta = eta;
  c.sigma = sigma;
  return c;
}

// Textbook forms, written independently of the library.
double energy_ref(const Control<double>& u) { return 0.5 * (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]); }
double huber_ref(const Control<double>& u, double sigma) {
  const double uu = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
  return sigma * (std::sqrt(uu / (sigma * sigma) + 1.0) - 1.0);
}

Control<double> random_u(double scale) {
  return {testing::uniform(-scale, scale), testing::uniform(-scale, scale), testing::uniform(-scale, scale)};
}

ConstraintSet unit_set() {
  ConstraintSet s;
  s.u_max = 0.5;
  s.m_dry = 0.5;
  s.target = {1, 2, 3, 4, 5, 6, 0};
  return s;
}

}  // namespace

TEST_CASE("stage cost examples") {
  CHECK(stage_cost(cost(0.3, 0.7), Control<double>{0, 0, 0}) == 0.0);
  CHECK(stage_cost(cost(0.0, 1.0), Control<double>{1, 1, 1}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(stage_cost(cost(1.0, 1e-2), Control<double>{0.1, 0, 0}) == doctest::Approx(0.005).epsilon(1e-15));
}

TEST_CASE("stage cost matches the textbook blend") {
  for (int trial = 0; trial < 200; ++trial) {
    const double eta = testing::uniform(0.0, 1.0);
    const double sigma = std::pow(10.0, testing::uniform(-3.0, 0.0));
    const auto u = random_u(0.1);
    const double ref = eta * energy_ref(u) + (1.0 - eta) * huber_ref(u, sigma);
    CHECK(testing::rel_err(stage_cost(cost(eta, sigma), u), ref, 1e-12) < 1e-12);
  }
}

TEST_CASE("stage cost is affine in eta") {
  for (int trial = 0; trial < 100; ++trial) {
    const double sigma = std::pow(10.0, testing::uniform(-3.0, 0.0));
    const double e1 = testing::uniform(0.0, 1.0), e2 = testing::uniform(0.0, 1.0);
    const auto u = random_u(0.2);
    const double l1 = stage_cost(cost(e1, sigma), u), l2 = stage_cost(cost(e2, sigma), u);
    const double bound = std::fabs(e1 - e2) * (energy_ref(u) + huber_ref(u, sigma));
    CHECK(std::fabs(l1 - l2) <= bound * (1.0 + 1e-12) + 1e-18);
    // Midpoint rule holds for an affine map.
    const double lm = stage_cost(cost(0.5 * (e1 + e2), sigma), u);
    CHECK(std::fabs(lm - 0.5 * (l1 + l2)) <= 1e-14 * std::max(1.0, std::fabs(lm)));
  }
}

TEST_CASE("pseudo-Huber asymptotics") {
  for (double sigma : {1e-3, 2e-3, 1e-2, 1.0}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto dir = random_u(1.0);
      const double n = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
      Control<double> big, small;
      for (int i = 0; i < 3; ++i) {
        big[i] = dir[i] / n * 100.0 * sigma;
        small[i] = dir[i] / n * sigma / 100.0;
      }
      const double h_big = stage_cost(cost(0.0, sigma), big);
      CHECK(std::fabs(h_big - 100.0 * sigma) <= sigma);
      const double uu = sigma * sigma * 1e-4;
      const double h_small = stage_cost(cost(0.0, sigma), small);
      CHECK(std::fabs(h_small - uu / (2.0 * sigma)) <= uu * 1e-4 / sigma);
    }
  }
}

TEST_CASE("stage cost expansion matches analytic derivatives") {
  const auto& ctx = da::DaContext::get(10, 2);
  for (int trial = 0; trial < 50; ++trial) {
    const double eta = testing::uniform(0.0, 1.0);
    const double sigma = std::pow(10.0, testing::uniform(-3.0, -1.0));
    const auto u = random_u(0.1);
    Control<da::TruncatedPoly> up;
    for (int i = 0; i < 3; ++i) up[i] = da::TruncatedPoly::variable(ctx, 7 + i, u[i]);
    const auto d = da::extract_derivatives(stage_cost(cost(eta, sigma), up), 7, 3);

    // l = eta uu/2 + (1-eta) sigma (s - 1), s = sqrt(uu/sigma^2 + 1)
    const double uu = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
    const double s = std::sqrt(uu / (sigma * sigma) + 1.0);
    CHECK(d.value == doctest::Approx(eta * uu / 2 + (1 - eta) * sigma * (s - 1)).epsilon(1e-12));
    CHECK(d.gx.norm() == 0.0);
    for (int i = 0; i < 3; ++i) {
      CHECK(testing::rel_err(d.gu[i], eta * u[i] + (1 - eta) * u[i] / (sigma * s), 1e-10) < 1e-12);
      for (int j = 0; j < 3; ++j) {
        const double hij = eta * (i == j) + (1 - eta) * ((i == j) / (sigma * s) -
                                                         u[i] * u[j] / (sigma * sigma * sigma * s * s * s));
        CHECK(testing::rel_err(d.huu(i, j), hij, 1.0) < 1e-10);
      }
    }
  }
}

TEST_CASE("terminal cost") {
  const State<double> t{1, 2, 3, 4, 5, 6, 0.7};
  CHECK(terminal_cost(TerminalWeights{}, TerminalKind::Cartesian, t, t) == 0.0);
  State<double> x = t;
  x[1] += 1.0;
  CHECK(terminal_cost(TerminalWeights{}, TerminalKind::Cartesian, x, t) == 1.0);
  // Mass never enters; L is free for the equinoctial residual.
  x = t;
  x[6] = 0.1;
  x[5] += 3.0;
  CHECK(terminal_cost(TerminalWeights{}, TerminalKind::Equinoctial, x, t) == 0.0);

  for (int trial = 0; trial < 100; ++trial) {
    State<double> a, b;
    for (int i = 0; i < 7; ++i) {
      a[i] = testing::uniform(-2, 2);
      b[i] = testing::uniform(-2, 2);
    }
    const TerminalWeights w{testing::uniform(0, 3), testing::uniform(0, 3)};
    double ref = 0.0;
    for (int i = 0; i < 6; ++i) ref += (i < 3 ? w.position : w.velocity) * (a[i] - b[i]) * (a[i] - b[i]);
    CHECK(testing::rel_err(terminal_cost(w, TerminalKind::Cartesian, a, b), ref) <= 1e-14);
    double ref_eq = 0.0;
    for (int i = 0; i < 5; ++i) ref_eq += w.position * (a[i] - b[i]) * (a[i] - b[i]);
    CHECK(testing::rel_err(terminal_cost(w, TerminalKind::Equinoctial, a, b), ref_eq) <= 1e-14);
  }
}

TEST_CASE("constraint evaluation") {
  const auto set = unit_set();
  SUBCASE("thrust on the boundary") {
    const auto g = set.path(State<double>{0, 0, 0, 0, 0, 0, 1}, Control<double>{0.3, 0.4, 0.0});
    CHECK(g[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(g[1] == -0.5);
  }
  SUBCASE("hand-built two-stage trajectory") {
    std::vector<State<double>> X{{0, 0, 0, 0, 0, 0, 1.0}, {0, 0, 0, 0, 0, 0, 0.45}, {1, 2, 3.5, 4, 5, 5.9, 0.4}};
    std::vector<Control<double>> U{{0.6, 0, 0}, {0.1, 0.1, 0.1}};
    const auto G = eval_constraints(set, X, U);
    REQUIRE(G.g.size() == 3);
    CHECK(G.g[0][0] == doctest::Approx(0.36 - 0.25));
    CHECK(G.g[0][1] == doctest::Approx(-0.5));
    CHECK(G.g[1][0] == doctest::Approx(0.03 - 0.25));
    CHECK(G.g[1][1] == doctest::Approx(0.05));
    REQUIRE(G.g[2].size() == 6);
    CHECK(G.g[2][2] == doctest::Approx(0.5));
    CHECK(G.g[2][5] == doctest::Approx(-0.1));
    CHECK(G.g_max == doctest::Approx(0.5));
  }
  SUBCASE("feasible trajectory reports zero") {
    std::vector<State<double>> X{{0, 0, 0, 0, 0, 0, 1.0}, {1, 2, 3, 4, 5, 6, 0.9}};
    std::vector<Control<double>> U{{0.1, 0, 0}};
    CHECK(eval_constraints(set, X, U).g_max == 0.0);
  }
  SUBCASE("maximum is independent of stacking order") {
    std::vector<Eigen::VectorXd> g;
    for (int k = 0; k < 6; ++k) g.push_back(Eigen::Vector2d(testing::uniform(-1, 1), testing::uniform(-1, 1)));
    Eigen::VectorXd term(6);
    for (int i = 0; i < 6; ++i) term[i] = testing::uniform(-1, 1);
    g.push_back(term);
    const double ref = max_violation(set, g);
    std::reverse(g.begin(), g.end() - 1);
    for (auto& v : g) v.reverseInPlace();
    std::reverse(g.back().data(), g.back().data() + g.back().size());
    CHECK(max_violation(set, g) == ref);
  }
}

TEST_CASE("augmentation") {
  auto eq = [](int) { return true; };
  auto ineq = [](int) { return false; };
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(1);
  std::vector<double> g{0.5};
  CHECK(augment<double>(2.0, g, zero, zero, eq) == 2.0);
  CHECK(augment<double>(0.0, g, Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Constant(1, 10.0), eq) ==
        doctest::Approx(1.75));
  g = {-0.1};
  CHECK(augment<double>(3.0, g, zero, Eigen::VectorXd::Constant(1, 10.0), ineq) == 3.0);
  // A positive multiplier keeps a satisfied inequality in the penalty.
  CHECK(augment<double>(0.0, g, Eigen::VectorXd::Constant(1, 2.0), Eigen::VectorXd::Constant(1, 10.0), ineq) ==
        doctest::Approx(-0.2 + 0.05));

  // Polynomial evaluation takes the same branch and agrees on the constant part.
  const auto& ctx = da::DaContext::get(2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    const double g0 = testing::uniform(-1, 1), g1 = testing::uniform(-1, 1);
    const Eigen::Vector2d lam(testing::uniform(0, 1) < 0.5 ? 0.0 : testing::uniform(0, 2), testing::uniform(-1, 1));
    const Eigen::Vector2d mu(testing::uniform(1, 100), testing::uniform(1, 100));
    auto is_eq = [](int i) { return i == 1; };
    std::vector<double> gd{g0, g1};
    std::vector<da::TruncatedPoly> gp{da::TruncatedPoly::variable(ctx, 0, g0), da::TruncatedPoly::variable(ctx, 1, g1)};
    const double vd = augment<double>(0.25, gd, lam, mu, is_eq);
    const auto vp = augment<da::TruncatedPoly>(da::TruncatedPoly(ctx, 0.25), gp, lam, mu, is_eq);
    CHECK(vp.constant() == vd);
    const bool active0 = g0 > 0.0 || lam[0] > 0.0;
    CHECK(da::gradient(vp)[0] == doctest::Approx(lam[0] + (active0 ? mu[0] * g0 : 0.0)));
    CHECK(da::hessian(vp)(1, 1) == doctest::Approx(mu[1]));
  }
}

TEST_CASE("dual updates") {
  auto set = unit_set();
  DualSettings settings;
  auto duals = DualPenaltyState::initial(set, 2, settings);
  REQUIRE(duals.lambda.size() == 3);
  CHECK(duals.lambda[2].size() == 6);
  CHECK(duals.mu[0][1] == 10.0);

  ConstraintValues G;
  G.g = {Eigen::Vector2d(-1.0, 0.2), Eigen::Vector2d(0.0, 0.0), Eigen::VectorXd::Constant(6, 0.1)};
  duals.lambda[2].setConstant(2.0);
  update_duals(set, G, duals, settings);
  CHECK(duals.lambda[0][0] == 0.0);
  CHECK(duals.lambda[0][1] == doctest::Approx(2.0));
  CHECK(duals.lambda[2][0] == doctest::Approx(3.0));
  CHECK(duals.mu[0][0] == 100.0);

  duals.mu[1].setConstant(1e7);
  update_duals(set, G, duals, settings);
  CHECK(duals.mu[1][0] == 1e8);
  update_duals(set, G, duals, settings);
  CHECK(duals.mu[1][0] == 1e8);

  // Inequality multipliers stay non-negative under arbitrary updates.
  for (int trial = 0; trial < 200; ++trial) {
    for (auto& g : G.g)
      for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = testing::uniform(-5, 5);
    update_duals(set, G, duals, settings);
    for (int k = 0; k < 2; ++k) CHECK((duals.lambda[k].array() >= 0.0).all());
    for (const auto& m : duals.mu) CHECK((m.array() > 0.0).all());
  }
}

TEST_CASE("homotopy schedule") {
  const auto s = HomotopySchedule::standard();
  CHECK_NOTHROW(s.validate());
  const auto next = homotopy_advance(s, 0);
  REQUIRE(next.has_value());
  CHECK(next->eta == 0.5);
  CHECK(next->sigma == 1e-2);
  CHECK_FALSE(homotopy_advance(s, 3).has_value());
  HomotopySchedule single{{{1.0, 1e-2}}};
  CHECK_NOTHROW(single.validate());
  CHECK_FALSE(homotopy_advance(single, 0).has_value());
  CHECK_THROWS_AS(homotopy_advance(s, 4), ArgumentError);

  HomotopySchedule ascending{{{1.0, 1e-2}, {0.5, 1e-2}, {0.7, 1e-3}}};
  CHECK_THROWS_AS(ascending.validate(), ArgumentError);
  HomotopySchedule no_energy{{{0.5, 1e-2}}};
  CHECK_THROWS_AS(no_energy.validate(), ArgumentError);
  CHECK_THROWS_AS(cost(1.5, 1.0).validate(), ArgumentError);
  CHECK_THROWS_AS(cost(0.5, 0.0).validate(), ArgumentError);
}
