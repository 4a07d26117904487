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
#ifndef POLYDDP_NEWTON_GAMMA_HPP
#define POLYDDP_NEWTON_GAMMA_HPP

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "polyddp/da/poly_map.hpp"
#include "polyddp/dynamics/propagate.hpp"
#include "polyddp/newton/block_tridiag.hpp"
#include "polyddp/ocp/constraints.hpp"

namespace polyddp::newton {

// Decision vector Y = [u_0, x_1, u_1, ..., x_{N-1}, u_{N-1}, x_N]; x_0 is fixed.
inline constexpr int kNx = dynamics::kNx;
inline constexpr int kNu = dynamics::kNu;
inline constexpr int kLocalVars = 2 * kNx + kNu;  // (dx_k, du_k, dx_{k+1})

inline int decision_size(int num_stages) { return num_stages * (kNx + kNu); }
/// Offset of x_k in Y, k >= 1.
inline int x_offset(int k) { return kNu + (k - 1) * (kNx + kNu); }
/// Offset of u_k in Y.
inline int u_offset(int k) { return k * (kNx + kNu); }

Eigen::VectorXd pack(std::span<const Eigen::VectorXd> X, std::span<const Eigen::VectorXd> U);
/// Inverse of pack; X[0] is x0.
void unpack(const Eigen::VectorXd& y, const Eigen::VectorXd& x0, std::vector<Eigen::VectorXd>& X,
            std::vector<Eigen::VectorXd>& U);

/**
 * Constraints kept in the Newton system. Stage k < N contributes its active
 * path constraints followed by the nx continuity residuals
 * h_k = x_{k+1} - f(x_k, u_k); stage N contributes the terminal constraints.
 */
struct ActiveConstraintStack {
  std::vector<std::vector<int>> path;  // per stage, indices into ConstraintSet::path
  std::vector<int> terminal;           // indices into ConstraintSet::terminal_residual

  int num_stages() const { return static_cast<int>(path.size()); }
  int block_rows(int k) const;
  int size() const;
};

/// Equalities always; path inequality i iff g_i >= -tol_active * path_scale(i).
ActiveConstraintStack build_active_set(const ocp::ConstraintSet& set, std::span<const Eigen::VectorXd> X,
                                       std::span<const Eigen::VectorXd> U, double tol_active);

/**
 * Per-stage expansions of the active constraints. stage[k] lives in a
 * 17-variable context over (dx_k, du_k, dx_{k+1}); terminal in an
 * nx-variable context over dx_N and is empty when no terminal row is active.
 */
struct GammaPolys {
  std::vector<da::PolyMap> stage;
  da::PolyMap terminal;

  Eigen::VectorXd constants() const;
  /// Values at a global displacement dY.
  Eigen::VectorXd evaluate(const Eigen::VectorXd& dy) const;
  /// Re-centers every map at dY by composition.
  void recenter(const Eigen::VectorXd& dy);
};

GammaPolys expand_gamma(const dynamics::Model& model, const dynamics::StageSpec& stage, const ocp::ConstraintSet& set,
                        const ActiveConstraintStack& stack, std::span<const Eigen::VectorXd> X,
                        std::span<const Eigen::VectorXd> U, int order);

/// Gradient blocks of one stage. Rows: active path constraints (G), continuity (H).
struct StageJacobian {
  Eigen::MatrixXd Gx, Gu, Hx, Hu;
};

struct GammaJacobian {
  std::vector<StageJacobian> stage;
  Eigen::MatrixXd terminal;  // rows x nx; zero rows when absent
};

GammaJacobian jacobian(const GammaPolys& gamma);

/// Sigma = Delta Delta' from its closed-form blocks; block k < N holds stage k's rows.
BlockTriDiagonal assemble_sigma(const GammaJacobian& jac);

/// Delta' z.
Eigen::VectorXd apply_delta_transpose(const GammaJacobian& jac, const Eigen::VectorXd& z);

}  // namespace polyddp::newton

#endif  // POLYDDP_NEWTON_GAMMA_HPP
