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
#ifndef POLYDDP_DA_KERNELS_HPP
#define POLYDDP_DA_KERNELS_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace polyddp::da::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/**
 * Dense coefficient kernels. Every variant produces bit-identical results:
 * element-wise kernels perform the same IEEE operations, and the reductions
 * use a fixed 4-lane interleaved summation order in the scalar reference too.
 */
struct KernelTable {
  Isa isa;
  // out[p] = a[ia[p]] * b[ib[p]]
  void (*pair_products)(const double* a, const double* b, const std::int32_t* ia,
                        const std::int32_t* ib, double* out, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y = alpha * x
  void (*scale)(double alpha, const double* x, double* y, std::size_t n);
  // out = x + y
  void (*add)(const double* x, const double* y, double* out, std::size_t n);
  // out = x - y
  void (*sub)(const double* x, const double* y, double* out, std::size_t n);
  // sum x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum |x[i]|
  double (*abs_sum)(const double* x, std::size_t n);
};

bool supported(Isa isa);
const KernelTable& table(Isa isa);

/// Kernels used by the polynomial algebra. Chosen once at startup from CPU
/// features; the POLYDDP_SIMD environment variable ("scalar" or "avx2")
/// overrides the choice.
const KernelTable& active();
void set_active(Isa isa);

namespace detail {
extern const KernelTable kScalar;
#ifdef POLYDDP_HAVE_AVX2
extern const KernelTable kAvx2;
#endif
}  // namespace detail

}  // namespace polyddp::da::kernels

#endif  // POLYDDP_DA_KERNELS_HPP
