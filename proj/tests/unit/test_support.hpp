// Shared helpers for the unit tests.
#ifndef POLYDDP_TEST_SUPPORT_HPP
#define POLYDDP_TEST_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "polyddp/da/poly_map.hpp"

namespace testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20260415ULL);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

// Random polynomial with every coefficient in [-1, 1] and roughly `density` of them nonzero.
inline polyddp::da::TruncatedPoly random_poly(const polyddp::da::DaContext& ctx, double density = 1.0) {
  polyddp::da::TruncatedPoly p(ctx);
  for (auto& c : p.coefficients()) c = uniform(0.0, 1.0) < density ? uniform(-1.0, 1.0) : 0.0;
  return p;
}

inline double rel_err(double a, double b, double floor = 1.0) {
  return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), floor});
}

template <class VecA, class VecB>
double max_abs_diff(const VecA& a, const VecB& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(a.size()); ++i)
    m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace testing

#endif
