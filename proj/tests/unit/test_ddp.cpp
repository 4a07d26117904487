#include <doctest.h>

#include <cmath>

#include "lqr.hpp"
#include "polyddp/ddp/aul.hpp"
#include "polyddp/ddp/sweeps.hpp"
#include "test_support.hpp"
#include "transfer_fixtures.hpp"

using namespace polyddp;
using namespace polyddp::ddp;

namespace {

Trajectory lqr_rollout(const oracles::LqrProblem& p) {
  std::vector<Eigen::VectorXd> U0;
  for (int k = 0; k < p.N; ++k) {
    Eigen::VectorXd u(p.nu());
    for (int j = 0; j < p.nu(); ++j) u[j] = testing::uniform(-1.0, 1.0);
    U0.push_back(u);
  }
  return rollout_initial(p, U0);
}

// Largest deviation of the sweep gains from the Riccati feedback.
double riccati_gain_error(const oracles::LqrProblem& p, const Trajectory& t, const ControlLaw& law) {
  const auto ric = oracles::riccati(p);
  double err = 0.0;
  for (int k = 0; k < p.N; ++k) {
    err = std::max(err, (law.b[k] + ric.K[k]).cwiseAbs().maxCoeff());
    const Eigen::VectorXd a_ref = -ric.K[k] * t.X[k] - t.U[k];
    err = std::max(err, (law.a[k] - a_ref).cwiseAbs().maxCoeff());
  }
  return err;
}

// Sweep with the regularization ladder, as the solver does.
std::optional<ControlLaw> regularized_sweep(const Trajectory& t, Sweep kind) {
  Regularization reg;
  do {
    if (auto law = sweep(t, kind, reg.rho)) return law;
  } while (reg.increase(DdpSettings{}));
  return std::nullopt;
}

ControlLaw zero_law(const Problem& p) {
  ControlLaw law;
  for (int k = 0; k < p.num_stages(); ++k) {
    law.a.push_back(Eigen::VectorXd::Zero(p.nu()));
    law.b.push_back(Eigen::MatrixXd::Zero(p.nu(), p.nx()));
  }
  return law;
}

}  // namespace

TEST_CASE("all sweeps reproduce the Riccati gains on LQR problems") {
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = oracles::LqrProblem::random(3 + trial % 2, 1 + trial % 3, 6);
    const auto t = lqr_rollout(p);
    for (Sweep s : {Sweep::iLQR, Sweep::DDP, Sweep::Q}) {
      const auto law = sweep(t, s, 0.0);
      REQUIRE(law);
      CHECK(riccati_gain_error(p, t, *law) <= 1e-9);
    }
  }
}

TEST_CASE("iLQR and DDP sweeps coincide on linear dynamics") {
  const auto p = oracles::LqrProblem::random(4, 2, 5);
  const auto t = lqr_rollout(p);
  const auto a = backward_sweep(t, Sweep::iLQR, 0.0), b = backward_sweep(t, Sweep::DDP, 0.0);
  REQUIRE(a);
  REQUIRE(b);
  for (int k = 0; k < p.N; ++k) {
    CHECK(a->a[k] == b->a[k]);
    CHECK(a->b[k] == b->b[k]);
  }
}

TEST_CASE("Q sweep matches the DDP sweep on a single nonlinear stage") {
  auto p = oracles::earth_mars_problem(1);
  std::vector<Eigen::VectorXd> U0{Eigen::Vector3d(0.03, -0.02, 0.01)};
  // Nonzero multipliers so the augmented terms enter the comparison.
  auto duals = p.duals();
  duals.lambda[1].setConstant(0.3);
  duals.lambda[0][0] = 0.5;
  p.set_duals(duals);
  const auto t = rollout_initial(p, U0);
  const auto d = backward_sweep(t, Sweep::DDP, 0.0), q = backward_sweep_q(t, 0.0);
  REQUIRE(d);
  REQUIRE(q);
  const double scale = std::max(1.0, d->b[0].cwiseAbs().maxCoeff());
  CHECK((d->a[0] - q->a[0]).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, d->a[0].cwiseAbs().maxCoeff()));
  CHECK((d->b[0] - q->b[0]).cwiseAbs().maxCoeff() <= 1e-10 * scale);
}

TEST_CASE("regularization ladder") {
  DdpSettings s;
  CHECK(regularize(Eigen::Matrix2d::Identity(), 0.0) == Eigen::MatrixXd(Eigen::Matrix2d::Identity()));

  // diag(1, -0.5): the first rung with a positive definite shift is rho = 1.
  Eigen::Matrix2d q;
  q << 1.0, 0.0, 0.0, -0.5;
  Regularization reg;
  double first_pd = -1.0;
  while (reg.increase(s)) {
    Eigen::LLT<Eigen::MatrixXd> llt(regularize(q, reg.rho));
    if (llt.info() == Eigen::Success) {
      first_pd = reg.rho;
      break;
    }
  }
  CHECK(first_pd == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(regularize(q, first_pd).eigenvalues().real().minCoeff() == doctest::Approx(0.5));

  // From reg0, ceil(log_scale(reg_max / reg0)) increases reach reg_max; the next one fails.
  Regularization r;
  REQUIRE(r.increase(s));
  CHECK(r.rho == s.reg0);
  int steps = 0;
  while (r.increase(s)) ++steps;
  CHECK(steps == static_cast<int>(std::ceil(std::log(s.reg_max / s.reg0) / std::log(s.reg_scale) - 1e-9)));
  CHECK(steps == 14);
  CHECK(r.rho == doctest::Approx(s.reg_max));

  // Two consecutive full steps bring rho down one rung; below reg_min it resets.
  Regularization d{1e-5, 0};
  d.accepted(true, s);
  CHECK(d.rho == 1e-5);
  d.accepted(true, s);
  CHECK(d.rho == doctest::Approx(1e-6));
  d.accepted(true, s);
  d.accepted(true, s);
  CHECK(d.rho == 0.0);
}

TEST_CASE("solver variant names") {
  CHECK(SolverVariant::all().size() == 6);
  for (const auto& v : SolverVariant::all()) CHECK(SolverVariant::parse(v.name()) == v);
  CHECK(SolverVariant::parse("QDyn") == SolverVariant{Sweep::Q, true});
  CHECK(SolverVariant::parse("iLQR") == SolverVariant{Sweep::iLQR, false});
  CHECK_THROWS_AS(SolverVariant::parse("SQP"), ArgumentError);
}

TEST_CASE("initial rollout") {
  auto p = oracles::earth_mars_problem(5);
  const auto t = rollout_initial(p, oracles::tiny_thrust(p));
  CHECK(t.X.size() == 6);
  CHECK(t.X[0] == p.initial_state());
  CHECK(std::isfinite(t.J));
  for (int k = 0; k < 5; ++k) CHECK(t.X[k + 1] == Eigen::Map<const Eigen::VectorXd>(t.dyn[k].constants().data(), 7));

  // Zero control: a Kepler coast, energy conserved stage to stage.
  std::vector<Eigen::VectorXd> zero(5, Eigen::VectorXd::Zero(3));
  const auto c = rollout_initial(p, zero);
  for (int k = 0; k < 5; ++k)
    CHECK(testing::rel_err(dynamics::orbital_energy(p.model(), std::span(c.X[k].data(), 7)),
                           dynamics::orbital_energy(p.model(), std::span(c.X[k + 1].data(), 7))) <= 1e-9);
  CHECK_THROWS_AS(rollout_initial(p, std::vector<Eigen::VectorXd>(4, Eigen::VectorXd::Zero(3))), ArgumentError);
}

TEST_CASE("forward pass with a zero control law leaves the iterate unchanged") {
  auto p = oracles::earth_mars_problem(6);
  const auto t = rollout_initial(p, oracles::tiny_thrust(p));
  for (auto mode : {ForwardMode::Exact, ForwardMode::DynApprox}) {
    const auto n = forward_pass(p, t, zero_law(p), 1.0, mode, 1e-6);
    for (int k = 0; k <= 6; ++k) CHECK(n.X[k] == t.X[k]);
    CHECK(n.J == t.J);
  }
}

TEST_CASE("dynamics approximation with zero tolerance equals the exact pass") {
  auto p = oracles::earth_mars_problem(6);
  const auto t = rollout_initial(p, oracles::tiny_thrust(p));
  const auto law = sweep(t, Sweep::iLQR, 0.0);
  REQUIRE(law);
  ApproxStats se, sa;
  const auto e = forward_pass(p, t, *law, 0.5, ForwardMode::Exact, 1e-6, &se);
  const auto a = forward_pass(p, t, *law, 0.5, ForwardMode::DynApprox, 0.0, &sa);
  for (int k = 0; k <= 6; ++k) CHECK(e.X[k] == a.X[k]);
  CHECK(e.J == a.J);
  CHECK(se.share() == 0.0);
  CHECK(sa.share() == 0.0);
  CHECK(sa.recomputed == 6);
}

TEST_CASE("trial cost from doubles equals the cost read from the expansions") {
  auto p = oracles::earth_mars_problem(8);
  const auto t = rollout_initial(p, oracles::tiny_thrust(p));
  const auto law = regularized_sweep(t, Sweep::DDP);
  REQUIRE(law);
  for (double alpha : {1.0, 0.25}) {
    Candidate c = trial_forward_pass(p, t, *law, alpha, ForwardMode::Exact, 1e-6);
    const double trial = c.traj.J;
    const auto full = complete(p, std::move(c));
    CHECK(full.J == trial);
  }
}

TEST_CASE("backward sweep gives a descent direction on Earth-Mars") {
  auto p = oracles::earth_mars_problem();
  const auto t = rollout_initial(p, oracles::tiny_thrust(p));
  for (Sweep s : {Sweep::iLQR, Sweep::DDP, Sweep::Q}) {
    const auto law = regularized_sweep(t, s);
    REQUIRE(law);
    bool decreased = false;
    for (double alpha = 1.0; alpha > 1e-4 && !decreased; alpha *= 0.5)
      decreased = forward_pass(p, t, *law, alpha, ForwardMode::Exact, 1e-6).J < t.J;
    CHECK(decreased);
  }
}

TEST_CASE("ddp_solve on LQR reaches the Riccati optimum in one step") {
  const auto p = oracles::LqrProblem::random(3, 2, 8);
  const auto t = lqr_rollout(p);
  std::vector<IterationRecord> log;
  const auto res = ddp_solve(p, t, SolverVariant{Sweep::iLQR, false}, DdpSettings{},
                             [&](const IterationRecord& r) { log.push_back(r); });
  REQUIRE(!log.empty());
  const double opt = oracles::riccati(p).cost;
  CHECK(log.front().alpha == 1.0);
  CHECK(testing::rel_err(log.front().J, opt) <= 1e-10);
  CHECK(res.converged());
  CHECK(res.iterations <= 2);

  // Restarting from the optimum: no accepted step, J unchanged.
  const auto again = ddp_solve(p, res.traj, SolverVariant{Sweep::DDP, false}, DdpSettings{});
  CHECK(again.converged());
  CHECK(again.iterations == 1);
  CHECK(again.traj.J == res.traj.J);
}

TEST_CASE("energy phase on Earth-Mars descends monotonically") {
  auto p = oracles::earth_mars_problem();
  auto t = rollout_initial(p, oracles::tiny_thrust(p));
  const double J0 = t.J;
  std::vector<IterationRecord> log;
  const auto res = ddp_solve(p, std::move(t), SolverVariant::parse("iLQRDyn"), DdpSettings{},
                             [&](const IterationRecord& r) { log.push_back(r); });
  CHECK(res.converged());
  double prev = J0;
  for (const auto& r : log) {
    if (r.alpha > 0.0) {
      CHECK(r.J < prev);
      prev = r.J;
    }
    CHECK(r.approx_share >= 0.0);
    CHECK(r.approx_share <= 1.0);
  }
  CHECK(res.traj.J < J0);
}

TEST_CASE("re-centered stages agree with fresh propagation") {
  auto p = oracles::earth_mars_problem();
  auto t = rollout_initial(p, oracles::tiny_thrust(p));
  const double eps_da = 1e-6;
  Regularization reg;
  int checked = 0;
  double worst = 0.0;
  for (int it = 0; it < 12; ++it) {
    const auto law = sweep(t, Sweep::iLQR, reg.rho);
    REQUIRE(law);
    std::optional<Candidate> acc;
    for (double alpha : DdpSettings::default_alpha_ladder()) {
      Candidate c = trial_forward_pass(p, t, *law, alpha, ForwardMode::DynApprox, eps_da);
      if (c.traj.J < t.J) {
        acc = std::move(c);
        break;
      }
    }
    if (!acc) break;
    for (int k = 0; k < p.num_stages(); ++k) {
      if (acc->pending[k]) continue;
      const auto& tr = acc->traj;
      worst = std::max(worst, (p.propagate(k, tr.X[k], tr.U[k]) - tr.X[k + 1]).norm());
      ++checked;
    }
    t = complete(p, std::move(*acc));
  }
  CHECK(checked > 0);
  CHECK(worst <= 2.0 * eps_da);
}

TEST_CASE("exact variants report no approximations") {
  auto p = oracles::earth_mars_problem(10);
  const auto res = ddp_solve(p, rollout_initial(p, oracles::tiny_thrust(p)), SolverVariant::parse("DDP"),
                             DdpSettings{});
  CHECK(res.approx.approximated == 0);
  CHECK(res.approx.share() == 0.0);
}

TEST_CASE("AUL energy solve is deterministic") {
  ocp::HomotopySchedule energy{{{1.0, 1e-2}}};
  auto run = [&] {
    auto p = oracles::earth_mars_problem();
    std::vector<AulIterationRecord> log;
    auto rep = aul_solve(p, oracles::tiny_thrust(p), SolverVariant::parse("iLQRDyn"), DdpSettings{},
                         AulSettings{}, energy, [&](const AulIterationRecord& r) { log.push_back(r); });
    return std::make_pair(rep, log);
  };
  const auto [a, la] = run();
  const auto [b, lb] = run();
  REQUIRE(a.converged);
  CHECK(a.g_max <= 1e-6);
  REQUIRE(la.size() == lb.size());
  for (std::size_t i = 0; i < la.size(); ++i) {
    CHECK(la[i].ddp.J == lb[i].ddp.J);
    CHECK(la[i].ddp.alpha == lb[i].ddp.alpha);
    CHECK(la[i].ddp.g_max == lb[i].ddp.g_max);
  }
  for (int k = 0; k < 40; ++k) CHECK(a.traj.U[k] == b.traj.U[k]);
}

TEST_CASE("infeasible thrust bound is reported as non-convergence") {
  const auto m = oracles::sun_model();
  const dynamics::StageSpec st{m.days_to_tu(348.79) / 40.0, 50};
  const ocp::ConstraintSet cs{1e-9, m.m_dry(), ocp::TerminalKind::Cartesian, oracles::mars_target(m)};
  TransferProblem p(m, st, 40, oracles::earth_departure(m), cs, 2);
  AulSettings aul;
  aul.max_aul_iters = 4;
  ocp::HomotopySchedule energy{{{1.0, 1e-2}}};
  AulReport rep;
  CHECK_NOTHROW(rep = aul_solve(p, oracles::tiny_thrust(p), SolverVariant::parse("iLQRDyn"), DdpSettings{}, aul,
                                energy));
  CHECK(!rep.converged);
  CHECK(!rep.failure.empty());
  CHECK(rep.g_max > aul.eps_aul);
}

TEST_CASE("settings validation") {
  DdpSettings s;
  s.eps_ddp = 0.0;
  CHECK_THROWS_AS(s.validate(), ArgumentError);
  s = DdpSettings{};
  s.alpha_ladder = {1.0, 1.5};
  CHECK_THROWS_AS(s.validate(), ArgumentError);
  AulSettings a;
  a.max_aul_iters = 0;
  CHECK_THROWS_AS(a.validate(), ArgumentError);
}
