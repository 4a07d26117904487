/*
 * Copyright 2026 The polyddp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "polyddp/bench/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include "polyddp/ddp/aul.hpp"
#include "polyddp/errors.hpp"

namespace polyddp::bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

ocp::ConstraintSet make_constraints(const ScenarioConfig& c, const dynamics::Model& m) {
  return ocp::ConstraintSet{m.u_max(), m.m_dry(), c.terminal_kind(), c.target};
}

}  // namespace

std::string to_string(RunOutcome outcome) { return outcome == RunOutcome::Converged ? "Converged" : "DNC"; }

dynamics::Model make_model(const ScenarioConfig& config) { return dynamics::Model(config.model, config.spacecraft); }

ddp::TransferProblem make_problem(const ScenarioConfig& config) {
  config.validate();
  const dynamics::Model m = make_model(config);
  return ddp::TransferProblem(m, config.stage_spec(m), config.stages, config.x0, make_constraints(config, m),
                              config.order);
}

Verification verify_trajectory(const ScenarioConfig& config, const std::vector<Eigen::VectorXd>& X,
                               const std::vector<Eigen::VectorXd>& U) {
  const dynamics::Model m = make_model(config);
  const dynamics::StageSpec stage = config.stage_spec(m);
  const int N = config.stages;
  if (static_cast<int>(U.size()) != N || static_cast<int>(X.size()) != N + 1)
    throw ArgumentError("verify_trajectory: expected " + std::to_string(N + 1) + " states and " + std::to_string(N) +
                        " controls");

  std::vector<dynamics::State<double>> xs(N + 1);
  std::vector<dynamics::Control<double>> us(N);
  xs[0] = config.x0;
  for (int k = 0; k < N; ++k) {
    for (int i = 0; i < dynamics::kNu; ++i) us[k][i] = U[k][i];
    xs[k + 1] = dynamics::propagate_stage<double>(m, stage, xs[k], us[k]);
  }
  Verification v;
  for (int i = 0; i < dynamics::kNx; ++i) v.defect = std::max(v.defect, std::fabs(xs[N][i] - X[N][i]));
  v.g_max = ocp::eval_constraints(make_constraints(config, m), xs, us).g_max;
  v.fuel_kg = (xs[0][6] - xs[N][6]) * config.model.units.mass_unit;
  v.passed = v.defect <= 10.0 * config.eps_n && v.g_max <= 10.0 * config.eps_n;
  return v;
}

RunReport run_scenario(const ScenarioConfig& config, const ProgressLog& log) {
  auto say = [&](const std::string& s) {
    if (log) log(s);
  };
  RunReport rep;
  rep.scenario = config.name;
  rep.variant = config.variant.name();
  rep.order = config.order;
  rep.eps_aul = config.eps_aul;
  rep.eps_da = config.eps_da;
  rep.eps_n = config.eps_n;

  ddp::TransferProblem problem = make_problem(config);
  const double mass_unit = config.model.units.mass_unit;
  const auto t0 = Clock::now();
  try {
    ddp::DdpSettings ds;
    ds.eps_ddp = config.eps_ddp;
    ds.eps_da = config.eps_da;
    ddp::AulSettings as;
    as.eps_aul = config.eps_aul;
    const Eigen::VectorXd u0 = Eigen::VectorXd::Constant(dynamics::kNu, config.u0 / problem.model().thrust_unit());
    const std::vector<Eigen::VectorXd> U0(config.stages, u0);

    int counter = 0;
    int last_phase = -1;
    const auto aul = ddp::aul_solve(problem, U0, config.variant, ds, as, config.schedule,
                                    [&](const ddp::AulIterationRecord& r) {
                                      rep.ddp_trace.push_back({++counter, r.phase, r.aul_iteration, r.ddp.J,
                                                               r.ddp.g_max, r.ddp.alpha, r.ddp.rho,
                                                               r.ddp.approx_share});
                                      if (r.phase != last_phase) {
                                        last_phase = r.phase;
                                        say("homotopy phase " + std::to_string(r.phase));
                                      }
                                    });
    rep.aul_time_s = seconds_since(t0);
    rep.ddp_iterations = aul.ddp_iterations;
    rep.aul_iterations = aul.aul_iterations;
    rep.approx_share = aul.approx.share();
    rep.aul_g_max = aul.g_max;
    if (!aul.traj.X.empty()) rep.aul_fuel_kg = (aul.traj.X.front()[6] - aul.traj.X.back()[6]) * mass_unit;
    rep.X = aul.traj.X;
    rep.U = aul.traj.U;
    say("AUL: " + std::to_string(rep.ddp_iterations) + " DDP / " + std::to_string(rep.aul_iterations) +
        " AUL iterations, g_max " + sci(rep.aul_g_max));
    if (!aul.converged) {
      rep.failure = "AUL: " + aul.failure;
    } else {
      newton::NewtonSettings ns;
      ns.eps_n = config.eps_n;
      ns.eps_cv = config.eps_cv;
      ns.tol_active = config.eps_aul;
      const auto t1 = Clock::now();
      auto polished = newton::newton_polish(problem, aul.traj.X, aul.traj.U, ns,
                                            [&](const newton::NewtonRecord& r) { rep.newton_trace.push_back(r); });
      rep.newton_time_s = seconds_since(t1);
      rep.newton_iterations = polished.iterations;
      rep.newton_expansions = polished.expansions;
      rep.X = std::move(polished.X);
      rep.U = std::move(polished.U);
      say("Newton: " + std::to_string(rep.newton_iterations) + " iterations, violation " + sci(polished.violation));
      if (!polished.converged) rep.failure = "Newton: " + polished.failure;
    }
  } catch (const DomainError& e) {
    rep.failure = std::string("domain error: ") + e.what();
  } catch (const std::runtime_error& e) {
    rep.failure = e.what();
  }
  rep.wall_time_s = seconds_since(t0);

  if (!rep.U.empty()) {
    try {
      rep.verification = verify_trajectory(config, rep.X, rep.U);
      rep.fuel_kg = rep.verification.fuel_kg;
      rep.g_max = rep.verification.g_max;
    } catch (const DomainError& e) {
      if (rep.failure.empty()) rep.failure = std::string("verification: ") + e.what();
    }
  }
  if (rep.failure.empty() && !rep.verification.passed)
    rep.failure = "verification: defect " + sci(rep.verification.defect) + ", g_max " + sci(rep.verification.g_max);
  if (rep.failure.empty() && rep.g_max > config.eps_n)
    rep.failure = "verification: g_max " + sci(rep.g_max) + " above eps_n";
  rep.outcome = rep.failure.empty() ? RunOutcome::Converged : RunOutcome::DNC;
  return rep;
}

std::vector<ComparisonRow> compare_variants(const ScenarioConfig& config, const std::vector<ddp::SolverVariant>& variants,
                                            const ProgressLog& log, std::vector<RunReport>* reports) {
  if (variants.empty()) throw ArgumentError("compare_variants: empty variant list");
  std::vector<ComparisonRow> rows;
  for (const auto& v : variants) {
    ScenarioConfig c = config;
    c.variant = v;
    if (log) log("variant " + v.name());
    RunReport r = run_scenario(c, log);
    ComparisonRow row;
    row.variant = v.name();
    row.converged = r.outcome == RunOutcome::Converged;
    row.fuel_kg = r.fuel_kg;
    row.wall_time_s = r.wall_time_s;
    row.approx_share = r.approx_share;
    row.ddp_iterations = r.ddp_iterations;
    rows.push_back(row);
    if (reports) reports->push_back(std::move(r));
  }
  const ComparisonRow& ref = rows.front();
  for (auto& row : rows) {
    const bool ok = ref.converged && row.converged;
    row.J_norm = ok ? row.fuel_kg / ref.fuel_kg : std::numeric_limits<double>::quiet_NaN();
    row.time_norm = row.wall_time_s / ref.wall_time_s;
  }
  return rows;
}

double bang_bang_fraction(const ScenarioConfig& config, const std::vector<Eigen::VectorXd>& U) {
  if (U.empty()) return 0.0;
  const double u_max = make_model(config).u_max();
  int n = 0;
  for (const auto& u : U) {
    const double r = u.norm() / u_max;
    if (r <= 0.02 || r >= 0.98) ++n;
  }
  return static_cast<double>(n) / static_cast<double>(U.size());
}

}  // namespace polyddp::bench
