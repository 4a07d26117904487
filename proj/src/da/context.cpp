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
#include "polyddp/da/context.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <utility>

#include "polyddp/errors.hpp"

namespace polyddp::da {

MultiIndex::MultiIndex(std::initializer_list<int> exponents) {
  exps_.reserve(exponents.size());
  for (int e : exponents) {
    if (e < 0 || e > 255) throw ArgumentError("MultiIndex: exponent out of range");
    exps_.push_back(static_cast<std::uint8_t>(e));
  }
}

int MultiIndex::degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < exps_.size(); ++i) os << (i ? "," : "") << int(exps_[i]);
  os << ')';
  return os.str();
}

namespace {

// Appends all exponent vectors of total degree `d` over `n` variables in
// descending lexicographic order.
void enumerate_degree(int n, int d, std::vector<std::uint8_t>& current, int pos,
                      std::vector<std::uint8_t>& out) {
  if (pos == n - 1) {
    current[pos] = static_cast<std::uint8_t>(d);
    out.insert(out.end(), current.begin(), current.end());
    return;
  }
  for (int e = d; e >= 0; --e) {
    current[pos] = static_cast<std::uint8_t>(e);
    enumerate_degree(n, d - e, current, pos + 1, out);
  }
}

}  // namespace

const DaContext& DaContext::get(int num_vars, int order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<DaContext>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{num_vars, order}];
  if (!slot) slot.reset(new DaContext(num_vars, order));
  return *slot;
}

DaContext::DaContext(int num_vars, int order) : num_vars_(num_vars), order_(order) {
  if (num_vars < 1) throw ArgumentError("DaContext: num_vars must be >= 1");
  if (order < 1) throw ArgumentError("DaContext: order must be >= 1");
  if (num_vars * std::log(order + 1.0) > 63 * std::log(2.0))
    throw ArgumentError("DaContext: too many variables for this order");

  std::vector<std::uint8_t> current(num_vars, 0);
  degree_begin_.push_back(0);
  for (int d = 0; d <= order; ++d) {
    enumerate_degree(num_vars, d, current, 0, exponents_);
    const std::size_t count = exponents_.size() / num_vars;
    degree_.resize(count, d);
    degree_begin_.push_back(count);
  }
  const std::size_t m = size();

  lookup_.reserve(m * 2);
  for (std::size_t k = 0; k < m; ++k) lookup_.emplace(key(exponents(k)), k);

  parent_.assign(m, 0);
  parent_var_.assign(m, -1);
  std::vector<std::uint8_t> tmp(num_vars);
  for (std::size_t k = 1; k < m; ++k) {
    auto e = exponents(k);
    tmp.assign(e.begin(), e.end());
    int v = 0;
    while (tmp[v] == 0) ++v;
    --tmp[v];
    parent_[k] = lookup_.at(key(tmp));
    parent_var_[k] = v;
  }

  if (order >= 2) {
    quadratic_.assign(static_cast<std::size_t>(num_vars) * num_vars, 0);
    for (int i = 0; i < num_vars; ++i)
      for (int j = 0; j < num_vars; ++j) {
        std::fill(tmp.begin(), tmp.end(), 0);
        ++tmp[i];
        ++tmp[j];
        quadratic_[i * num_vars + j] = lookup_.at(key(tmp));
      }
  }

  // Bucket every ordered pair (i, j) with deg(i) + deg(j) <= order by the
  // index of the product monomial. Iteration order is fixed, so the plan
  // (and every sum built from it) is deterministic.
  std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> buckets(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t jend = degree_begin_[order - degree_[i] + 1];
    auto ei = exponents(i);
    for (std::size_t j = 0; j < jend; ++j) {
      auto ej = exponents(j);
      for (int v = 0; v < num_vars; ++v) tmp[v] = static_cast<std::uint8_t>(ei[v] + ej[v]);
      buckets[lookup_.at(key(tmp))].emplace_back(static_cast<std::int32_t>(i),
                                                 static_cast<std::int32_t>(j));
    }
  }
  plan_.offsets.reserve(m + 1);
  plan_.offsets.push_back(0);
  for (const auto& b : buckets) {
    for (const auto& [i, j] : b) {
      plan_.lhs.push_back(i);
      plan_.rhs.push_back(j);
    }
    plan_.offsets.push_back(static_cast<std::uint32_t>(plan_.lhs.size()));
  }
}

std::uint64_t DaContext::key(std::span<const std::uint8_t> exps) const {
  std::uint64_t k = 0;
  for (auto e : exps) k = k * static_cast<std::uint64_t>(order_ + 1) + e;
  return k;
}

MultiIndex DaContext::multi_index(std::size_t k) const {
  auto e = exponents(k);
  return MultiIndex(std::vector<std::uint8_t>(e.begin(), e.end()));
}

std::size_t DaContext::index_of(const MultiIndex& m) const {
  if (m.size() != num_vars_)
    throw ArgumentError("MultiIndex " + m.to_string() + " has wrong length for context");
  if (m.degree() > order_)
    throw ArgumentError("MultiIndex " + m.to_string() + " exceeds truncation order");
  return lookup_.at(key(m.exponents()));
}

}  // namespace polyddp::da
