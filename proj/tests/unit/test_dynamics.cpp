#include <array>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "polyddp/dynamics/propagate.hpp"
#include "test_support.hpp"

using namespace polyddp;
using namespace polyddp::dynamics;

namespace {

Model unit_two_body() {
  ModelSpec spec;
  spec.kind = ModelKind::TwoBodyCartesian;
  spec.units = {1.0, 1.0, 1.0, 1000.0};
  spec.mu = 1.0;
  return Model(spec, Spacecraft{});
}

std::array<double, 3> random_control(const Model& m) {
  std::array<double, 3> u;
  for (auto& v : u) v = testing::uniform(-1.0, 1.0) * m.u_max() * 0.5;
  return u;
}

// Halo-to-halo transfer: departure state and stage length.
std::array<double, 7> halo_state() { return {1.16080, 0.0, -0.12270, 0.0, -0.20768, 0.0, 1.0}; }

std::array<double, 7> leo_state(const Model& m) {
  auto eq = keplerian_to_equinoctial({6778.0, 0.0, 51.0, 145.0, 0.0, 0.0}, m.spec().units.lu);
  return {eq[0], eq[1], eq[2], eq[3], eq[4], eq[5], 1.0};
}

std::array<double, 7> gto_state(const Model& m) {
  auto eq = keplerian_to_equinoctial({24505.9, 0.725, 7.0, 0.0, 0.0, 0.0}, m.spec().units.lu);
  return {eq[0], eq[1], eq[2], eq[3], eq[4], eq[5], 1.0};
}

}  // namespace

TEST_CASE("normalization constants") {
  auto m = oracles::sun_model();
  CHECK(m.mu() == doctest::Approx(1.0).epsilon(1e-9));
  // 1000 kg * 1 AU / TU^2 in newtons
  CHECK(m.thrust_unit() == doctest::Approx(5.930083519821).epsilon(1e-10));
  CHECK(m.u_max() == doctest::Approx(0.5 / 5.930083519821).epsilon(1e-10));
  CHECK(m.m_dry() == 0.5);
  auto e = oracles::earth_model();
  CHECK(e.mu() == doctest::Approx(398600.0 * 86400.0 * 86400.0 / std::pow(42241.0, 3)).epsilon(1e-14));
  auto c = oracles::earth_moon_model();
  CHECK(c.mu() == 1.21506e-2);

  ModelSpec bad = c.spec();
  bad.mu = 0.6;
  CHECK_THROWS_AS(Model(bad, Spacecraft{}), ArgumentError);
  ModelSpec badu = c.spec();
  badu.units.vu = 1.02455;  // rounded value is not lu/tu to 1e-9
  CHECK_THROWS_AS(Model(badu, Spacecraft{}), ArgumentError);
  Spacecraft sc;
  sc.m_dry = 2000.0;
  CHECK_THROWS_AS(Model(c.spec(), sc), ArgumentError);
  CHECK_THROWS_AS(StageSpec({1.0, 0}).validate(), ArgumentError);
}

TEST_CASE("rhs examples") {
  auto m = unit_two_body();
  State<double> x{1, 0, 0, 0, 1, 0, 1};
  auto dx = m.rhs<double>(x, {0.0, 0.0, 0.0});
  CHECK(dx[0] == 0.0);
  CHECK(dx[1] == 1.0);
  CHECK(dx[3] == -1.0);
  CHECK(dx[4] == 0.0);
  // the smoothed mass flow is kappa * mass_flow, far below any tolerance
  CHECK(std::fabs(dx[6]) <= 2e-12);

  auto eq = oracles::earth_model();
  for (int trial = 0; trial < 5; ++trial) {
    State<double> s{testing::uniform(0.2, 1.0), testing::uniform(-0.3, 0.3), testing::uniform(-0.3, 0.3),
                    testing::uniform(-0.5, 0.5), testing::uniform(-0.5, 0.5), testing::uniform(0, 6), 0.9};
    auto d = eq.rhs<double>(s, {0.0, 0.0, 0.0});
    for (int i = 0; i < 5; ++i) CHECK(d[i] == 0.0);
    const double B = std::sqrt(1 - s[1] * s[1] - s[2] * s[2]);
    const double psi = 1 + s[1] * std::sin(s[5]) + s[2] * std::cos(s[5]);
    CHECK(d[5] == doctest::Approx(std::sqrt(eq.mu() / s[0]) * psi * psi / (B * B * B)).epsilon(1e-14));
    CHECK(std::fabs(d[6]) <= 2e-12);
  }

  auto cr = oracles::earth_moon_model();
  const double xl1 = oracles::l1_abscissa(cr.mu());
  CHECK(xl1 == doctest::Approx(0.8369).epsilon(1e-3));
  auto dl = cr.rhs<double>({xl1, 0, 0, 0, 0, 0, 1}, {0.0, 0.0, 0.0});
  for (int i = 3; i < 6; ++i) CHECK(std::fabs(dl[i]) <= 1e-12);
}

TEST_CASE("rhs domain errors") {
  auto m = unit_two_body();
  CHECK_THROWS_AS(m.rhs<double>({0, 0, 0, 0, 1, 0, 1}, {0, 0, 0}), DomainError);
  CHECK_THROWS_AS(m.rhs<double>({1, 0, 0, 0, 1, 0, 0}, {0, 0, 0}), DomainError);
  auto eq = oracles::earth_model();
  CHECK_THROWS_AS(eq.rhs<double>({1, 0.8, 0.6, 0, 0, 0, 1}, {0, 0, 0}), DomainError);
  auto cr = oracles::earth_moon_model();
  CHECK_THROWS_AS(cr.rhs<double>({1 - cr.mu(), 0, 0, 0, 0, 0, 1}, {0, 0, 0}), DomainError);
  try {
    propagate_stage(m, {1.0, 10}, std::array<double, 7>{1, 0, 0, 0, 1, 0, 1e-9},
                    std::array<double, 3>{1.0, 0, 0});
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("substep") != std::string::npos);
  }
}

TEST_CASE("circular orbit returns after one period") {
  auto m = unit_two_body();
  auto x = propagate_stage(m, {2.0 * std::numbers::pi, 4000}, std::array<double, 7>{1, 0, 0, 0, 1, 0, 1},
                           std::array<double, 3>{0, 0, 0});
  const std::array<double, 6> x0{1, 0, 0, 0, 1, 0};
  for (int i = 0; i < 6; ++i) CHECK(std::fabs(x[i] - x0[i]) <= 1e-8);
}

TEST_CASE("stage splitting matches a single stage") {
  for (auto model : {oracles::sun_model(), oracles::earth_moon_model(), oracles::earth_model()}) {
    std::array<double, 7> x0;
    if (model.kind() == ModelKind::TwoBodyCartesian) x0 = oracles::earth_departure(model);
    else if (model.kind() == ModelKind::Cr3bp) x0 = halo_state();
    else x0 = leo_state(model);
    const auto u = random_control(model);
    const double dt = 0.05;
    auto full = propagate_stage(model, {dt, 40}, x0, u);
    auto half = propagate_stage(model, {dt / 2, 20}, x0, u);
    auto both = propagate_stage(model, {dt / 2, 20}, half, u);
    for (int i = 0; i < 7; ++i) CHECK(std::fabs(full[i] - both[i]) <= 1e-10);
  }
}

TEST_CASE("zero-thrust conservation") {
  auto sun = oracles::sun_model();
  const StageSpec em{sun.days_to_tu(348.79) / 40.0, 50};
  auto x = oracles::earth_departure(sun);
  for (int k = 0; k < 5; ++k) {
    auto y = propagate_stage(sun, em, x, std::array<double, 3>{0, 0, 0});
    CHECK(testing::rel_err(orbital_energy(sun, x), orbital_energy(sun, y), 0.0) <= 1e-9);
    CHECK(testing::rel_err(angular_momentum(x), angular_momentum(y), 0.0) <= 1e-9);
    std::copy(y.begin(), y.end(), x.begin());
  }

  auto cr = oracles::earth_moon_model();
  const StageSpec halo{cr.days_to_tu(32.25) / 150.0, 100};
  for (auto x0 : {halo_state(), std::array<double, 7>{1.02197, 0, -0.18206, 0, -0.10314, 0, 1},
                  std::array<double, 7>{1.17136, 0, 0, 0, -0.48946, 0, 1}}) {
    auto y = propagate_stage(cr, halo, x0, std::array<double, 3>{0, 0, 0});
    CHECK(std::fabs(jacobi_constant(cr, x0) - jacobi_constant(cr, y)) <= 1e-9);
  }

  auto eq = oracles::earth_model();
  const StageSpec leo{eq.days_to_tu(35.0) / 1000.0, 20};
  for (auto x0 : {leo_state(eq), gto_state(eq)}) {
    auto y = propagate_stage(eq, leo, x0, std::array<double, 3>{0, 0, 0});
    for (int i = 0; i < 5; ++i) CHECK(std::fabs(y[i] - x0[i]) <= 1e-12);
    CHECK(y[5] > x0[5]);
  }
}

TEST_CASE("mass is non-increasing under any control") {
  for (auto model : {oracles::sun_model(), oracles::earth_moon_model(), oracles::earth_model()}) {
    std::array<double, 7> x;
    if (model.kind() == ModelKind::TwoBodyCartesian) x = oracles::earth_departure(model);
    else if (model.kind() == ModelKind::Cr3bp) x = halo_state();
    else x = leo_state(model);
    for (int k = 0; k < 10; ++k) {
      auto y = propagate_stage(model, {0.01, 5}, x, random_control(model));
      CHECK(y[6] <= x[6]);
      x = y;
    }
  }
}

TEST_CASE("expansion constant part equals real propagation bit for bit") {
  const auto& ctx = da::DaContext::get(10, 2);
  for (auto model : {oracles::sun_model(), oracles::earth_moon_model(), oracles::earth_model()}) {
    std::array<double, 7> x;
    if (model.kind() == ModelKind::TwoBodyCartesian) x = oracles::earth_departure(model);
    else if (model.kind() == ModelKind::Cr3bp) x = halo_state();
    else x = gto_state(model);
    const auto u = random_control(model);
    const StageSpec st{0.02, 7};
    auto real = propagate_stage(model, st, x, u);
    auto map = expand_stage(model, st, x, u, ctx);
    for (int i = 0; i < 7; ++i) CHECK(map[i].constant() == real[i]);
  }
  CHECK_THROWS_AS(expand_stage(oracles::sun_model(), {1, 1}, std::array<double, 7>{1, 0, 0, 0, 1, 0, 1},
                               std::array<double, 3>{0, 0, 0}, da::DaContext::get(7, 2)),
                  ArgumentError);
}

TEST_CASE("expansion derivatives match finite differences") {
  const auto sun = oracles::sun_model();
  const StageSpec em{sun.days_to_tu(348.79) / 40.0, 10};
  auto rep = oracles::fd_check_stage(sun, em, oracles::earth_departure(sun), {0.03, -0.02, 0.01});
  CHECK(rep.grad_err <= 1e-6);
  CHECK(rep.hess_err <= 1e-6);

  const auto cr = oracles::earth_moon_model();
  rep = oracles::fd_check_stage(cr, {cr.days_to_tu(32.25) / 150.0, 10}, halo_state(), {0.02, 0.05, -0.03});
  CHECK(rep.grad_err <= 1e-6);
  CHECK(rep.hess_err <= 1e-6);

  const auto eq = oracles::earth_model();
  rep = oracles::fd_check_stage(eq, {eq.days_to_tu(90.0) / 1200.0, 5}, gto_state(eq), {0.01, 0.02, 0.015});
  CHECK(rep.grad_err <= 1e-6);
  CHECK(rep.hess_err <= 1e-6);
}

TEST_CASE("expansion is accurate inside its convergence radius") {
  const auto& ctx = da::DaContext::get(10, 2);
  const double eps = 1e-6;
  struct Case {
    Model model;
    StageSpec stage;
    std::array<double, 7> x;
  };
  const auto sun = oracles::sun_model();
  const auto cr = oracles::earth_moon_model();
  const auto eq = oracles::earth_model();
  std::vector<Case> cases{{sun, {sun.days_to_tu(348.79) / 40.0, 50}, oracles::earth_departure(sun)},
                          {cr, {cr.days_to_tu(32.25) / 150.0, 100}, halo_state()},
                          {eq, {eq.days_to_tu(35.0) / 1000.0, 20}, leo_state(eq)}};
  for (const auto& c : cases) {
    const std::array<double, 3> u{0.3 * c.model.u_max(), -0.2 * c.model.u_max(), 0.1 * c.model.u_max()};
    auto map = expand_stage(c.model, c.stage, c.x, u, ctx);
    const double R = da::convergence_radius(map, eps);
    REQUIRE(std::isfinite(R));
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      std::array<double, 10> d;
      double n2 = 0.0;
      for (auto& v : d) {
        v = testing::uniform(-1.0, 1.0);
        n2 += v * v;
      }
      const double scale = testing::uniform(0.0, 1.0) * R / std::sqrt(n2);
      for (auto& v : d) v *= scale;
      std::array<double, 7> xp;
      std::array<double, 3> up;
      for (int i = 0; i < 7; ++i) xp[i] = c.x[i] + d[i];
      for (int i = 0; i < 3; ++i) up[i] = u[i] + d[7 + i];
      auto truth = propagate_stage(c.model, c.stage, xp, up);
      auto approx = da::evaluate(map, d);
      double e2 = 0.0;
      for (int i = 0; i < 7; ++i) e2 += (truth[i] - approx[i]) * (truth[i] - approx[i]);
      worst = std::max(worst, std::sqrt(e2));
    }
    CHECK(worst <= 2.0 * eps);
  }
}
