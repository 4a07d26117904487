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
#include "polyddp/newton/block_tridiag.hpp"

#include "polyddp/errors.hpp"

namespace polyddp::newton {

namespace {

template <class M>
int total_rows(const std::vector<M>& diag) {
  int n = 0;
  for (const auto& b : diag) n += static_cast<int>(b.rows());
  return n;
}

}  // namespace

int BlockTriDiagonal::size() const { return total_rows(D); }

int BlockTriDiagonal::offset(int k) const {
  int off = 0;
  for (int i = 0; i < k; ++i) off += static_cast<int>(D[i].rows());
  return off;
}

void BlockTriDiagonal::validate() const {
  if (D.empty()) {
    if (!L.empty()) throw ArgumentError("BlockTriDiagonal: off-diagonal blocks without diagonal");
    return;
  }
  if (L.size() + 1 != D.size()) throw ArgumentError("BlockTriDiagonal: need D.size() - 1 off-diagonal blocks");
  for (std::size_t k = 0; k < D.size(); ++k)
    if (D[k].rows() != D[k].cols()) throw ArgumentError("BlockTriDiagonal: diagonal block " + std::to_string(k) + " not square");
  for (std::size_t k = 0; k < L.size(); ++k)
    if (L[k].rows() != D[k + 1].rows() || L[k].cols() != D[k].rows())
      throw ArgumentError("BlockTriDiagonal: off-diagonal block " + std::to_string(k) + " has the wrong shape");
}

int BlockCholeskyFactor::size() const { return total_rows(D); }

BlockCholeskyFactor block_cholesky(const BlockTriDiagonal& sigma) {
  sigma.validate();
  BlockCholeskyFactor pi;
  const int m = sigma.num_blocks();
  pi.D.reserve(m);
  pi.L.reserve(m > 0 ? m - 1 : 0);
  for (int k = 0; k < m; ++k) {
    Eigen::MatrixXd pivot = sigma.D[k];
    if (k > 0) {
      // L_k Pi_D(k-1)^{-T}, computed as (Pi_D(k-1)^{-1} L_k')'.
      const Eigen::MatrixXd lk =
          pi.D[k - 1].triangularView<Eigen::Lower>().solve(sigma.L[k - 1].transpose()).transpose();
      pivot.noalias() -= lk * lk.transpose();
      pi.L.push_back(lk);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(pivot);
    if (llt.info() != Eigen::Success)
      throw FactorizationError("block_cholesky: pivot block " + std::to_string(k) + " is not positive definite", k);
    pi.D.push_back(llt.matrixL());
  }
  return pi;
}

Eigen::VectorXd tridiag_solve(const BlockCholeskyFactor& pi, const Eigen::VectorXd& rhs) {
  if (rhs.size() != pi.size()) throw ArgumentError("tridiag_solve: right-hand side size does not match the factor");
  const int m = pi.num_blocks();
  std::vector<int> off(m + 1, 0);
  for (int k = 0; k < m; ++k) off[k + 1] = off[k] + static_cast<int>(pi.D[k].rows());

  Eigen::VectorXd y(rhs.size());
  for (int k = 0; k < m; ++k) {
    Eigen::VectorXd r = rhs.segment(off[k], pi.D[k].rows());
    if (k > 0) r.noalias() -= pi.L[k - 1] * y.segment(off[k - 1], pi.D[k - 1].rows());
    y.segment(off[k], r.size()) = pi.D[k].triangularView<Eigen::Lower>().solve(r);
  }
  Eigen::VectorXd z(rhs.size());
  for (int k = m - 1; k >= 0; --k) {
    Eigen::VectorXd r = y.segment(off[k], pi.D[k].rows());
    if (k + 1 < m) r.noalias() -= pi.L[k].transpose() * z.segment(off[k + 1], pi.D[k + 1].rows());
    z.segment(off[k], r.size()) = pi.D[k].transpose().triangularView<Eigen::Upper>().solve(r);
  }
  return z;
}

Eigen::MatrixXd to_dense(const BlockTriDiagonal& m) {
  m.validate();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.size(), m.size());
  int off = 0;
  for (int k = 0; k < m.num_blocks(); ++k) {
    const int n = static_cast<int>(m.D[k].rows());
    out.block(off, off, n, n) = m.D[k];
    if (k + 1 < m.num_blocks()) {
      const int n1 = static_cast<int>(m.D[k + 1].rows());
      out.block(off + n, off, n1, n) = m.L[k];
      out.block(off, off + n, n, n1) = m.L[k].transpose();
    }
    off += n;
  }
  return out;
}

Eigen::MatrixXd to_dense(const BlockCholeskyFactor& pi) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(pi.size(), pi.size());
  int off = 0;
  for (int k = 0; k < pi.num_blocks(); ++k) {
    const int n = static_cast<int>(pi.D[k].rows());
    out.block(off, off, n, n) = pi.D[k];
    if (k > 0) {
      const int np = static_cast<int>(pi.D[k - 1].rows());
      out.block(off, off - np, n, np) = pi.L[k - 1];
    }
    off += n;
  }
  return out;
}

}  // namespace polyddp::newton
