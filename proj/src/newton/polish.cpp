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
#include "polyddp/newton/polish.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <optional>

#include "polyddp/errors.hpp"

namespace polyddp::newton {

void NewtonSettings::validate() const {
  if (!(eps_n > 0.0)) throw ArgumentError("NewtonSettings: eps_n must be positive");
  if (!(eps_cv > 0.0)) throw ArgumentError("NewtonSettings: eps_cv must be positive");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ArgumentError("NewtonSettings: gamma must lie in (0, 1)");
  if (!(min_alpha > 0.0 && min_alpha <= 1.0)) throw ArgumentError("NewtonSettings: min_alpha must lie in (0, 1]");
  if (!(tol_active >= 0.0)) throw ArgumentError("NewtonSettings: tol_active must be non-negative");
  if (max_iterations < 0) throw ArgumentError("NewtonSettings: max_iterations must be non-negative");
}

namespace {

double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

NewtonResult newton_solve(NewtonSystem& system, Eigen::VectorXd y, const NewtonSettings& settings,
                          const NewtonCallback& on_step) {
  settings.validate();
  NewtonResult res;
  auto fail = [&](NewtonOutcome outcome, std::string why) {
    res.outcome = outcome;
    res.failure = std::move(why);
  };

  for (;;) {
    Eigen::VectorXd d = system.expand(y);
    ++res.expansions;
    res.d_max = max_abs(d);
    if (res.d_max <= settings.eps_n) break;

    std::optional<BlockCholeskyFactor> pi;
    double rate = std::numeric_limits<double>::infinity();
    try {
      pi = block_cholesky(system.sigma());
    } catch (const FactorizationError& e) {
      fail(NewtonOutcome::FactorizationFailed, e.what());
      break;
    }

    // Every expansion takes at least one step.
    for (bool first = true; first || (res.d_max > settings.eps_n && rate > settings.eps_cv); first = false) {
      if (res.iterations >= settings.max_iterations) {
        fail(NewtonOutcome::IterationLimit, "no convergence after " + std::to_string(res.iterations) + " iterations");
        break;
      }
      const Eigen::VectorXd step = -system.delta_transpose(tridiag_solve(*pi, d));
      double alpha = 1.0;
      Eigen::VectorXd trial = system.surrogate(step);
      while (!(max_abs(trial) < res.d_max)) {
        alpha *= settings.gamma;
        if (alpha < settings.min_alpha) break;
        trial = system.surrogate(alpha * step);
      }
      if (alpha < settings.min_alpha) {
        fail(NewtonOutcome::LineSearchStalled, "line search stalled at max |d| = " + std::to_string(res.d_max));
        break;
      }
      const Eigen::VectorXd accepted = alpha * step;
      y += accepted;
      system.recenter(accepted);
      d = std::move(trial);
      const double d_new = max_abs(d);
      rate = std::log(d_new) / std::log(res.d_max);
      res.d_max = d_new;
      ++res.iterations;
      if (on_step) on_step({res.iterations, res.expansions, res.d_max, alpha, rate});
    }
    // A surrogate below eps_n is confirmed by the next from-scratch expansion.
    if (!res.failure.empty()) break;
  }
  if (res.failure.empty()) res.outcome = NewtonOutcome::Converged;
  res.y = std::move(y);
  return res;
}

namespace {

class TransferSystem final : public NewtonSystem {
 public:
  TransferSystem(const ddp::TransferProblem& problem, double tol_active)
      : problem_(problem), tol_active_(tol_active) {
    stack_.path.resize(problem.num_stages());
  }

  const ActiveConstraintStack& stack() const { return stack_; }

  Eigen::VectorXd expand(const Eigen::VectorXd& y) override {
    std::vector<Eigen::VectorXd> X, U;
    unpack(y, problem_.initial_state(), X, U);
    // Inequalities that became active along the way join the frozen set.
    merge(build_active_set(problem_.constraints(), X, U, tol_active_));
    gamma_ = expand_gamma(problem_.model(), problem_.stage(), problem_.constraints(), stack_, X, U,
                          problem_.context().order());
    jac_ = jacobian(gamma_);
    return gamma_.constants();
  }
  BlockTriDiagonal sigma() const override { return assemble_sigma(jac_); }
  Eigen::VectorXd delta_transpose(const Eigen::VectorXd& z) const override { return apply_delta_transpose(jac_, z); }
  Eigen::VectorXd surrogate(const Eigen::VectorXd& dy) const override { return gamma_.evaluate(dy); }
  void recenter(const Eigen::VectorXd& dy) override { gamma_.recenter(dy); }

 private:
  void merge(const ActiveConstraintStack& other) {
    auto join = [](std::vector<int>& a, const std::vector<int>& b) {
      std::vector<int> out;
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      a = std::move(out);
    };
    for (int k = 0; k < stack_.num_stages(); ++k) join(stack_.path[k], other.path[k]);
    join(stack_.terminal, other.terminal);
  }

  const ddp::TransferProblem& problem_;
  double tol_active_;
  ActiveConstraintStack stack_;
  GammaPolys gamma_;
  GammaJacobian jac_;
};

}  // namespace

double true_violation(const ddp::TransferProblem& problem, const std::vector<Eigen::VectorXd>& X,
                      const std::vector<Eigen::VectorXd>& U) {
  double v = 0.0;
  std::vector<dynamics::State<double>> xs;
  std::vector<dynamics::Control<double>> us;
  for (std::size_t k = 0; k < U.size(); ++k) {
    v = std::max(v, max_abs(X[k + 1] - problem.propagate(static_cast<int>(k), X[k], U[k])));
    us.push_back(ddp::to_control(U[k]));
  }
  for (const auto& x : X) xs.push_back(ddp::to_state(x));
  return std::max(v, ocp::eval_constraints(problem.constraints(), xs, us).g_max);
}

PolishResult newton_polish(const ddp::TransferProblem& problem, const std::vector<Eigen::VectorXd>& X,
                           const std::vector<Eigen::VectorXd>& U, const NewtonSettings& settings,
                           const NewtonCallback& on_step) {
  settings.validate();
  if (static_cast<int>(U.size()) != problem.num_stages() || X.size() != U.size() + 1)
    throw ArgumentError("newton_polish: trajectory does not match the problem's stage count");
  PolishResult out;
  out.X = X;
  out.U = U;

  double tol = settings.tol_active;
  NewtonResult res;
  for (int attempt = 0; attempt < 2; ++attempt) {
    TransferSystem system(problem, tol);
    try {
      res = newton_solve(system, pack(X, U), settings, on_step);
      out.active_rows = system.stack().size();
    } catch (const DomainError& e) {
      out.failure = std::string("newton: ") + e.what();
      out.violation = true_violation(problem, out.X, out.U);
      return out;
    }
    if (res.outcome != NewtonOutcome::FactorizationFailed) break;
    tol /= 100.0;
  }
  out.iterations = res.iterations;
  out.expansions = res.expansions;
  out.d_max = res.d_max;
  unpack(res.y, problem.initial_state(), out.X, out.U);
  try {
    out.violation = true_violation(problem, out.X, out.U);
  } catch (const DomainError& e) {
    out.failure = std::string("newton verification: ") + e.what();
    return out;
  }
  if (res.outcome != NewtonOutcome::Converged) {
    out.failure = "newton: " + res.failure;
  } else if (out.violation > 10.0 * settings.eps_n) {
    out.failure = "newton: surrogate converged but the propagated violation is " + std::to_string(out.violation);
  } else {
    out.converged = true;
  }
  return out;
}

}  // namespace polyddp::newton
