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
#ifndef POLYDDP_NEWTON_POLISH_HPP
#define POLYDDP_NEWTON_POLISH_HPP

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyddp/ddp/transfer_problem.hpp"
#include "polyddp/newton/block_tridiag.hpp"
#include "polyddp/newton/gamma.hpp"

namespace polyddp::newton {

struct NewtonSettings {
  double eps_n = 1e-10;   // exit when max |d| <= eps_n
  double eps_cv = 1.1;    // keep the factorization while log d* / log d exceeds this
  double gamma = 0.5;     // line-search contraction
  double min_alpha = std::ldexp(1.0, -20);
  double tol_active = 1e-6;
  int max_iterations = 100;

  void validate() const;
};

/// One accepted step.
struct NewtonRecord {
  int iteration = 0;
  int expansion = 0;  // outer iteration that produced the Jacobian in use
  double d_max = 0.0;
  double alpha = 0.0;
  double rate = 0.0;
};
using NewtonCallback = std::function<void(const NewtonRecord&)>;

/**
 * Constraint system seen by the Newton loop. expand() re-expands at y from
 * scratch; the other members refer to that expansion, shifted by every
 * recenter() since.
 */
class NewtonSystem {
 public:
  virtual ~NewtonSystem() = default;
  /// Returns the constraint values d at y.
  virtual Eigen::VectorXd expand(const Eigen::VectorXd& y) = 0;
  virtual BlockTriDiagonal sigma() const = 0;
  /// Delta' z.
  virtual Eigen::VectorXd delta_transpose(const Eigen::VectorXd& z) const = 0;
  /// Surrogate constraint values at displacement dy from the current center.
  virtual Eigen::VectorXd surrogate(const Eigen::VectorXd& dy) const = 0;
  virtual void recenter(const Eigen::VectorXd& dy) = 0;
};

enum class NewtonOutcome { Converged, LineSearchStalled, IterationLimit, FactorizationFailed };

struct NewtonResult {
  Eigen::VectorXd y;  // best iterate
  double d_max = 0.0;
  int iterations = 0;
  int expansions = 0;
  NewtonOutcome outcome = NewtonOutcome::Converged;
  std::string failure;
};

/**
 * Damped minimum-norm Newton iteration on d(y) = 0. Each outer iteration
 * expands and factorizes Sigma = Delta Delta'; inner steps reuse the factor
 * while the convergence rate stays above eps_cv, updating d through the
 * surrogate. Steps are halved until max |d| strictly decreases. Convergence
 * is declared on a from-scratch expansion only.
 */
NewtonResult newton_solve(NewtonSystem& system, Eigen::VectorXd y, const NewtonSettings& settings,
                          const NewtonCallback& on_step = {});

struct PolishResult {
  std::vector<Eigen::VectorXd> X, U;
  bool converged = false;
  std::string failure;
  int iterations = 0;
  int expansions = 0;
  int active_rows = 0;
  double d_max = 0.0;      // surrogate value at exit
  double violation = 0.0;  // from-scratch check: continuity defects and constraints
};

/**
 * Restores feasibility of an AUL iterate. Inequalities within tol_active
 * (relative to the bound) are frozen as equalities, and the frozen set
 * grows at every re-expansion; duals and costs are not touched.
 * On a singular Sigma the active set is rebuilt once with tol_active / 100.
 * Converged requires violation <= 10 eps_n.
 */
PolishResult newton_polish(const ddp::TransferProblem& problem, const std::vector<Eigen::VectorXd>& X,
                           const std::vector<Eigen::VectorXd>& U, const NewtonSettings& settings,
                           const NewtonCallback& on_step = {});

/// Largest continuity defect and constraint violation of (X, U), propagated from scratch.
double true_violation(const ddp::TransferProblem& problem, const std::vector<Eigen::VectorXd>& X,
                      const std::vector<Eigen::VectorXd>& U);

}  // namespace polyddp::newton

#endif  // POLYDDP_NEWTON_POLISH_HPP
