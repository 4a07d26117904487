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
#include "polyddp/da/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

#include "polyddp/errors.hpp"

namespace polyddp::da::kernels {

namespace {

void pair_products_scalar(const double* a, const double* b, const std::int32_t* ia,
                          const std::int32_t* ib, double* out, std::size_t n) {
  for (std::size_t p = 0; p < n; ++p) out[p] = a[ia[p]] * b[ib[p]];
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = alpha * x[i];
}

void add_scalar(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + y[i];
}

void sub_scalar(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - y[i];
}

// Reductions keep four interleaved partial sums so the vector variants can
// reproduce them exactly.
double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l) s[l] += x[i + l] * y[i + l];
  double total = (s[0] + s[1]) + (s[2] + s[3]);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

double abs_sum_scalar(const double* x, std::size_t n) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l) s[l] += std::fabs(x[i + l]);
  double total = (s[0] + s[1]) + (s[2] + s[3]);
  for (; i < n; ++i) total += std::fabs(x[i]);
  return total;
}

bool cpu_has_avx2() {
#if defined(POLYDDP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* initial_table() {
  const char* env = std::getenv("POLYDDP_SIMD");
  if (env != nullptr) {
    const std::string choice(env);
    if (choice == "scalar") return &detail::kScalar;
    if (choice == "avx2" && supported(Isa::Avx2)) return &table(Isa::Avx2);
  }
  return supported(Isa::Avx2) ? &table(Isa::Avx2) : &detail::kScalar;
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

namespace detail {
const KernelTable kScalar{Isa::Scalar, pair_products_scalar, axpy_scalar, scale_scalar,
                          add_scalar,  sub_scalar,           dot_scalar,  abs_sum_scalar};
}  // namespace detail

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool supported(Isa isa) { return isa == Isa::Scalar || cpu_has_avx2(); }

const KernelTable& table(Isa isa) {
  if (!supported(isa))
    throw CapabilityError("kernel ISA not available: " + std::string(isa_name(isa)));
#ifdef POLYDDP_HAVE_AVX2
  if (isa == Isa::Avx2) return detail::kAvx2;
#endif
  return detail::kScalar;
}

const KernelTable& active() { return *active_slot().load(std::memory_order_relaxed); }

void set_active(Isa isa) { active_slot().store(&table(isa), std::memory_order_relaxed); }

}  // namespace polyddp::da::kernels
