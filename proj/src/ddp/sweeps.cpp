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
#include "polyddp/ddp/sweeps.hpp"

namespace polyddp::ddp {

namespace {

// Gradient blocks of the quadratic model of Q and the resulting gains.
struct QModel {
  Eigen::VectorXd qx, qu;
  Eigen::MatrixXd qxx, qxu, quu;
};

struct Gains {
  Eigen::VectorXd a;
  Eigen::MatrixXd b;
};

std::optional<Gains> solve_gains(const QModel& q, double rho) {
  const Eigen::LLT<Eigen::MatrixXd> llt(regularize(q.quu, rho));
  if (llt.info() != Eigen::Success) return std::nullopt;
  Gains g;
  g.a = -llt.solve(q.qu);
  g.b = -llt.solve(q.qxu.transpose());
  if (!g.a.allFinite() || !g.b.allFinite()) return std::nullopt;
  return g;
}

Eigen::MatrixXd jacobian(const da::PolyMap& f, int nv) {
  const auto& ctx = f.context();
  Eigen::MatrixXd J(static_cast<Eigen::Index>(f.size()), nv);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (int v = 0; v < nv; ++v) J(static_cast<Eigen::Index>(i), v) = f[i].coefficients()[ctx.linear_index(v)];
  return J;
}

}  // namespace

std::optional<ControlLaw> backward_sweep(const Trajectory& traj, Sweep kind, double rho) {
  const int N = traj.num_stages();
  const int nx = static_cast<int>(traj.X.front().size());
  const int nu = static_cast<int>(traj.U.front().size());

  const auto term = da::extract_derivatives(traj.terminal, nx, 0);
  Eigen::VectorXd vx = term.gx;
  Eigen::MatrixXd vxx = term.hxx;

  ControlLaw law;
  law.a.resize(N);
  law.b.resize(N);
  for (int k = N - 1; k >= 0; --k) {
    const auto& f = traj.dyn[k];
    const Eigen::MatrixXd J = jacobian(f, nx + nu);
    const auto fx = J.leftCols(nx);
    const auto fu = J.rightCols(nu);
    const auto l = da::extract_derivatives(traj.cost[k], nx, nu);

    QModel q;
    q.qx = l.gx + fx.transpose() * vx;
    q.qu = l.gu + fu.transpose() * vx;
    const Eigen::MatrixXd vfx = vxx * fx;
    q.qxx = l.hxx + fx.transpose() * vfx;
    q.qxu = l.hxu + vfx.transpose() * fu;
    q.quu = l.huu + fu.transpose() * vxx * fu;
    if (kind == Sweep::DDP) {
      // sum_i V_x^i f^i, whose Hessian carries the second-order dynamics terms.
      da::TruncatedPoly weighted(f.context());
      for (int i = 0; i < nx; ++i) weighted.add_scaled(vx[i], f[i]);
      const Eigen::MatrixXd H = da::hessian(weighted);
      q.qxx += H.topLeftCorner(nx, nx);
      q.qxu += H.topRightCorner(nx, nu);
      q.quu += H.block(nx, nx, nu, nu);
    }

    const auto gains = solve_gains(q, rho);
    if (!gains) return std::nullopt;
    const auto& a = gains->a;
    const auto& b = gains->b;
    vx = q.qx + b.transpose() * q.quu * a + b.transpose() * q.qu + q.qxu * a;
    vxx = q.qxx + b.transpose() * q.quu * b + b.transpose() * q.qxu.transpose() + q.qxu * b;
    vxx = 0.5 * (vxx + vxx.transpose()).eval();
    law.a[k] = a;
    law.b[k] = b;
  }
  return law;
}

std::optional<ControlLaw> backward_sweep_q(const Trajectory& traj, double rho) {
  const int N = traj.num_stages();
  const int nx = static_cast<int>(traj.X.front().size());
  const int nu = static_cast<int>(traj.U.front().size());
  const auto& ctx = traj.terminal.context();

  ControlLaw law;
  law.a.resize(N);
  law.b.resize(N);
  da::TruncatedPoly pv = traj.terminal;
  std::vector<da::TruncatedPoly> inner(nx + nu, da::TruncatedPoly(ctx));
  for (int k = N - 1; k >= 0; --k) {
    for (int i = 0; i < nx; ++i) inner[i] = traj.dyn[k][i] - traj.X[k + 1][i];
    for (int j = 0; j < nu; ++j) inner[nx + j] = da::TruncatedPoly(ctx);
    const da::TruncatedPoly pq = traj.cost[k] + da::compose(pv, inner);

    const auto d = da::extract_derivatives(pq, nx, nu);
    const QModel q{d.gx, d.gu, d.hxx, d.hxu, d.huu};
    const auto gains = solve_gains(q, rho);
    if (!gains) return std::nullopt;

    // P_V = P_Q(dx, a + b dx)
    for (int i = 0; i < nx; ++i) inner[i] = da::TruncatedPoly::variable(ctx, i, 0.0);
    for (int j = 0; j < nu; ++j) {
      da::TruncatedPoly du(ctx, gains->a[j]);
      auto c = du.coefficients();
      for (int i = 0; i < nx; ++i) c[ctx.linear_index(i)] = gains->b(j, i);
      inner[nx + j] = std::move(du);
    }
    pv = da::compose(pq, inner);
    law.a[k] = gains->a;
    law.b[k] = gains->b;
  }
  return law;
}

std::optional<ControlLaw> sweep(const Trajectory& traj, Sweep kind, double rho) {
  return kind == Sweep::Q ? backward_sweep_q(traj, rho) : backward_sweep(traj, kind, rho);
}

}  // namespace polyddp::ddp
