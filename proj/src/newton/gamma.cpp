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
#include "polyddp/newton/gamma.hpp"

#include "polyddp/ddp/transfer_problem.hpp"
#include "polyddp/errors.hpp"

namespace polyddp::newton {

using da::TruncatedPoly;

Eigen::VectorXd pack(std::span<const Eigen::VectorXd> X, std::span<const Eigen::VectorXd> U) {
  const int n = static_cast<int>(U.size());
  if (n < 1 || static_cast<int>(X.size()) != n + 1) throw ArgumentError("pack: need N + 1 states and N >= 1 controls");
  Eigen::VectorXd y(decision_size(n));
  for (int k = 0; k < n; ++k) {
    if (k > 0) y.segment(x_offset(k), kNx) = X[k];
    y.segment(u_offset(k), kNu) = U[k];
  }
  y.segment(x_offset(n), kNx) = X[n];
  return y;
}

void unpack(const Eigen::VectorXd& y, const Eigen::VectorXd& x0, std::vector<Eigen::VectorXd>& X,
            std::vector<Eigen::VectorXd>& U) {
  if (y.size() % (kNx + kNu) != 0 || y.size() == 0) throw ArgumentError("unpack: bad decision vector length");
  const int n = static_cast<int>(y.size()) / (kNx + kNu);
  X.assign(n + 1, Eigen::VectorXd());
  U.assign(n, Eigen::VectorXd());
  X[0] = x0;
  for (int k = 0; k < n; ++k) {
    if (k > 0) X[k] = y.segment(x_offset(k), kNx);
    U[k] = y.segment(u_offset(k), kNu);
  }
  X[n] = y.segment(x_offset(n), kNx);
}

int ActiveConstraintStack::block_rows(int k) const {
  return k < num_stages() ? static_cast<int>(path[k].size()) + kNx : static_cast<int>(terminal.size());
}

int ActiveConstraintStack::size() const {
  int n = 0;
  for (int k = 0; k <= num_stages(); ++k) n += block_rows(k);
  return n;
}

ActiveConstraintStack build_active_set(const ocp::ConstraintSet& set, std::span<const Eigen::VectorXd> X,
                                       std::span<const Eigen::VectorXd> U, double tol_active) {
  std::vector<dynamics::State<double>> xs;
  std::vector<dynamics::Control<double>> us;
  for (const auto& x : X) xs.push_back(ddp::to_state(x));
  for (const auto& u : U) us.push_back(ddp::to_control(u));
  const auto values = ocp::eval_constraints(set, xs, us);
  const int n = static_cast<int>(U.size());
  ActiveConstraintStack stack;
  stack.path.resize(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < set.path_size(); ++i)
      if (set.path_is_equality(i) || values.g[k][i] >= -tol_active * set.path_scale(i)) stack.path[k].push_back(i);
  for (int i = 0; i < set.terminal_size(); ++i)
    if (set.terminal_is_equality(i) || values.g[n][i] >= -tol_active) stack.terminal.push_back(i);
  return stack;
}

namespace {

// (dx_k, du_k, dx_{k+1}) slice of a global displacement; dx_0 is zero.
Eigen::VectorXd local_point(const Eigen::VectorXd& dy, int k) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(kLocalVars);
  if (k > 0) p.head(kNx) = dy.segment(x_offset(k), kNx);
  p.segment(kNx, kNu) = dy.segment(u_offset(k), kNu);
  p.tail(kNx) = dy.segment(x_offset(k + 1), kNx);
  return p;
}

int stages_of(const GammaPolys& g) { return static_cast<int>(g.stage.size()); }

}  // namespace

Eigen::VectorXd GammaPolys::constants() const {
  return evaluate(Eigen::VectorXd::Zero(decision_size(stages_of(*this))));
}

Eigen::VectorXd GammaPolys::evaluate(const Eigen::VectorXd& dy) const {
  const int n = stages_of(*this);
  if (dy.size() != decision_size(n)) throw ArgumentError("GammaPolys::evaluate: bad displacement length");
  int rows = static_cast<int>(terminal.size());
  for (const auto& m : stage) rows += static_cast<int>(m.size());
  Eigen::VectorXd out(rows);
  int off = 0;
  for (int k = 0; k < n; ++k) {
    const Eigen::VectorXd p = local_point(dy, k);
    for (double v : da::evaluate(stage[k], std::span<const double>(p.data(), p.size()))) out[off++] = v;
  }
  if (!terminal.empty()) {
    const Eigen::VectorXd p = dy.segment(x_offset(n), kNx);
    for (double v : da::evaluate(terminal, std::span<const double>(p.data(), p.size()))) out[off++] = v;
  }
  return out;
}

void GammaPolys::recenter(const Eigen::VectorXd& dy) {
  const int n = stages_of(*this);
  if (dy.size() != decision_size(n)) throw ArgumentError("GammaPolys::recenter: bad displacement length");
  for (int k = 0; k < n; ++k) {
    const Eigen::VectorXd p = local_point(dy, k);
    const auto vars = da::shifted_variables(stage[k].context(), std::span<const double>(p.data(), p.size()));
    stage[k] = da::compose(stage[k], vars);
  }
  if (!terminal.empty()) {
    const Eigen::VectorXd p = dy.segment(x_offset(n), kNx);
    const auto vars = da::shifted_variables(terminal.context(), std::span<const double>(p.data(), p.size()));
    terminal = da::compose(terminal, vars);
  }
}

GammaPolys expand_gamma(const dynamics::Model& model, const dynamics::StageSpec& stage, const ocp::ConstraintSet& set,
                        const ActiveConstraintStack& stack, std::span<const Eigen::VectorXd> X,
                        std::span<const Eigen::VectorXd> U, int order) {
  const int n = static_cast<int>(U.size());
  if (static_cast<int>(X.size()) != n + 1 || stack.num_stages() != n)
    throw ArgumentError("expand_gamma: trajectory and active set disagree on the number of stages");
  const auto& ctx10 = da::DaContext::get(kNx + kNu, order);
  const auto& ctx = da::DaContext::get(kLocalVars, order);
  const auto embed = da::shifted_variables(ctx, std::vector<double>(kLocalVars, 0.0));
  const std::span<const TruncatedPoly> head(embed.data(), kNx + kNu);

  GammaPolys out;
  out.stage.reserve(n);
  for (int k = 0; k < n; ++k) {
    da::PolyMap f;
    try {
      f = da::compose(dynamics::expand_stage(model, stage, std::span<const double>(X[k].data(), kNx),
                                             std::span<const double>(U[k].data(), kNu), ctx10),
                      head);
    } catch (const DomainError& e) {
      throw e.in_context("stage " + std::to_string(k));
    }
    dynamics::State<TruncatedPoly> xs;
    dynamics::Control<TruncatedPoly> us;
    for (int i = 0; i < kNx; ++i) xs[i] = TruncatedPoly::variable(ctx, i, X[k][i]);
    for (int j = 0; j < kNu; ++j) us[j] = TruncatedPoly::variable(ctx, kNx + j, U[k][j]);
    const auto g = set.path(xs, us);

    std::vector<TruncatedPoly> rows;
    rows.reserve(stack.block_rows(k));
    for (int i : stack.path[k]) rows.push_back(g[i]);
    for (int i = 0; i < kNx; ++i) rows.push_back(TruncatedPoly::variable(ctx, kNx + kNu + i, X[k + 1][i]) - f[i]);
    out.stage.emplace_back(std::move(rows));
  }
  if (!stack.terminal.empty()) {
    const auto& ctx7 = da::DaContext::get(kNx, order);
    dynamics::State<TruncatedPoly> xs;
    for (int i = 0; i < kNx; ++i) xs[i] = TruncatedPoly::variable(ctx7, i, X[n][i]);
    const auto r = set.terminal_residual(xs);
    std::vector<TruncatedPoly> rows;
    for (int i : stack.terminal) rows.push_back(r[i]);
    out.terminal = da::PolyMap(std::move(rows));
  }
  return out;
}

GammaJacobian jacobian(const GammaPolys& gamma) {
  GammaJacobian jac;
  jac.stage.reserve(gamma.stage.size());
  for (const auto& map : gamma.stage) {
    const int rows = static_cast<int>(map.size());
    const int a = rows - kNx;
    Eigen::MatrixXd J(rows, kLocalVars);
    for (int r = 0; r < rows; ++r) J.row(r) = da::gradient(map[r]).transpose();
    StageJacobian s;
    s.Gx = J.topLeftCorner(a, kNx);
    s.Gu = J.block(0, kNx, a, kNu);
    s.Hx = J.bottomLeftCorner(kNx, kNx);
    s.Hu = J.block(a, kNx, kNx, kNu);
    jac.stage.push_back(std::move(s));
  }
  jac.terminal.resize(static_cast<Eigen::Index>(gamma.terminal.size()), kNx);
  for (std::size_t r = 0; r < gamma.terminal.size(); ++r) jac.terminal.row(r) = da::gradient(gamma.terminal[r]).transpose();
  return jac;
}

namespace {

Eigen::MatrixXd stacked(const Eigen::MatrixXd& top, const Eigen::MatrixXd& bottom) {
  Eigen::MatrixXd out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

}  // namespace

BlockTriDiagonal assemble_sigma(const GammaJacobian& jac) {
  const int n = static_cast<int>(jac.stage.size());
  BlockTriDiagonal sigma;
  for (int k = 0; k < n; ++k) {
    const auto& s = jac.stage[k];
    const int a = static_cast<int>(s.Gu.rows());
    const Eigen::MatrixXd ju = stacked(s.Gu, s.Hu);
    Eigen::MatrixXd d = ju * ju.transpose();
    if (k > 0) {
      // x_0 is not a decision variable.
      const Eigen::MatrixXd jx = stacked(s.Gx, s.Hx);
      d.noalias() += jx * jx.transpose();
      // Coupling through x_k: the previous block's continuity rows carry +I there.
      Eigen::MatrixXd l = Eigen::MatrixXd::Zero(a + kNx, sigma.D.back().rows());
      l.rightCols(kNx) = jx;
      sigma.L.push_back(std::move(l));
    }
    d.bottomRightCorner(kNx, kNx).diagonal().array() += 1.0;
    sigma.D.push_back(std::move(d));
  }
  if (jac.terminal.rows() > 0) {
    sigma.D.push_back(jac.terminal * jac.terminal.transpose());
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(jac.terminal.rows(), sigma.D[n - 1].rows());
    l.rightCols(kNx) = jac.terminal;
    sigma.L.push_back(std::move(l));
  }
  return sigma;
}

Eigen::VectorXd apply_delta_transpose(const GammaJacobian& jac, const Eigen::VectorXd& z) {
  const int n = static_cast<int>(jac.stage.size());
  Eigen::Index rows = jac.terminal.rows();
  for (const auto& s : jac.stage) rows += s.Gu.rows() + kNx;
  if (z.size() != rows) throw ArgumentError("apply_delta_transpose: multiplier length mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(decision_size(n));
  int off = 0;
  for (int k = 0; k < n; ++k) {
    const auto& s = jac.stage[k];
    const int a = static_cast<int>(s.Gu.rows());
    const auto zg = z.segment(off, a);
    const auto zh = z.segment(off + a, kNx);
    if (k > 0) out.segment(x_offset(k), kNx) += s.Gx.transpose() * zg + s.Hx.transpose() * zh;
    out.segment(u_offset(k), kNu) += s.Gu.transpose() * zg + s.Hu.transpose() * zh;
    out.segment(x_offset(k + 1), kNx) += zh;
    off += a + kNx;
  }
  if (jac.terminal.rows() > 0) out.segment(x_offset(n), kNx) += jac.terminal.transpose() * z.segment(off, jac.terminal.rows());
  return out;
}

}  // namespace polyddp::newton
