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
#ifndef POLYDDP_NEWTON_BLOCK_TRIDIAG_HPP
#define POLYDDP_NEWTON_BLOCK_TRIDIAG_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace polyddp::newton {

/**
 * Symmetric block tri-diagonal matrix. D[k] are the diagonal blocks and
 * L[k] the block at (k + 1, k); the upper part is implied by symmetry.
 */
struct BlockTriDiagonal {
  std::vector<Eigen::MatrixXd> D;
  std::vector<Eigen::MatrixXd> L;  // D.size() - 1 entries

  int num_blocks() const { return static_cast<int>(D.size()); }
  int size() const;
  /// Row offset of block k.
  int offset(int k) const;
  void validate() const;
};

/// Lower block-bidiagonal factor: Sigma = Pi Pi'. D[k] lower triangular.
struct BlockCholeskyFactor {
  std::vector<Eigen::MatrixXd> D;
  std::vector<Eigen::MatrixXd> L;

  int num_blocks() const { return static_cast<int>(D.size()); }
  int size() const;
};

/// A pivot block was not positive definite.
class FactorizationError : public std::runtime_error {
 public:
  FactorizationError(const std::string& what, int block) : std::runtime_error(what), block_(block) {}
  int block() const { return block_; }

 private:
  int block_;
};

BlockCholeskyFactor block_cholesky(const BlockTriDiagonal& sigma);

/// Solves Pi Pi' z = rhs.
Eigen::VectorXd tridiag_solve(const BlockCholeskyFactor& pi, const Eigen::VectorXd& rhs);

Eigen::MatrixXd to_dense(const BlockTriDiagonal& m);
Eigen::MatrixXd to_dense(const BlockCholeskyFactor& pi);

}  // namespace polyddp::newton

#endif  // POLYDDP_NEWTON_BLOCK_TRIDIAG_HPP
