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
#ifndef POLYDDP_DYNAMICS_MODELS_HPP
#define POLYDDP_DYNAMICS_MODELS_HPP

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "polyddp/da/poly_map.hpp"
#include "polyddp/errors.hpp"

namespace polyddp::dynamics {

inline constexpr int kNx = 7;
inline constexpr int kNu = 3;

template <class T>
using State = std::array<T, kNx>;
template <class T>
using Control = std::array<T, kNu>;

enum class ModelKind { TwoBodyCartesian, Cr3bp, EquinoctialGauss };

std::string to_string(ModelKind kind);

struct NormalizationUnits {
  double lu = 1.0;         // km
  double tu = 1.0;         // s
  double vu = 1.0;         // km/s
  double mass_unit = 1.0;  // kg

  void validate() const;
};

struct Spacecraft {
  double isp = 2000.0;    // s
  double g0 = 9.81;       // m/s^2
  double m_dry = 500.0;   // kg
  double u_max = 0.5;     // N
  double m0 = 1000.0;     // kg

  void validate() const;
};

struct ModelSpec {
  ModelKind kind = ModelKind::TwoBodyCartesian;
  NormalizationUnits units;
  // Two-body and equinoctial: gravitational parameter in km^3/s^2.
  // CR3BP: mass ratio of the secondary.
  double mu = 1.0;

  void validate() const;
};

struct StageSpec {
  double dt = 1.0;  // TU
  int substeps = 1;

  void validate() const;
};

/// Smoothing of |u| inside the mass-flow term, in normalized thrust units.
inline constexpr double kThrustSmoothing = 1e-12;
/// Equinoctial states with 1 - p^2 - q^2 at or below this are rejected.
inline constexpr double kEquinoctialGuard = 1e-10;

/**
 * Normalized equations of motion. Mass is scaled by the spacecraft's wet
 * mass m0 and thrust by m0 * LU / TU^2, so controls and the mass state are
 * O(1). All member templates accept double or da::TruncatedPoly scalars and
 * perform the same sequence of floating-point operations for both.
 */
class Model {
 public:
  Model(ModelSpec spec, Spacecraft sc);

  const ModelSpec& spec() const { return spec_; }
  const Spacecraft& spacecraft() const { return sc_; }
  ModelKind kind() const { return spec_.kind; }

  /// Gravitational parameter (or mass ratio) in normalized units.
  double mu() const { return mu_; }
  /// |dm/dt| per unit normalized thrust.
  double mass_flow() const { return mass_flow_; }
  /// Newtons per normalized thrust unit.
  double thrust_unit() const { return thrust_unit_; }
  double u_max() const { return sc_.u_max / thrust_unit_; }
  double m_dry() const { return sc_.m_dry / spec_.units.mass_unit; }
  double m0() const { return sc_.m0 / spec_.units.mass_unit; }
  double days_to_tu(double days) const { return days * 86400.0 / spec_.units.tu; }

  template <class T>
  State<T> rhs(const State<T>& x, const Control<T>& u) const;

 private:
  template <class T>
  State<T> two_body(const State<T>& x, const Control<T>& u) const;
  template <class T>
  State<T> cr3bp(const State<T>& x, const Control<T>& u) const;
  template <class T>
  State<T> equinoctial(const State<T>& x, const Control<T>& u) const;
  template <class T>
  T mass_rate(const Control<T>& u) const;

  ModelSpec spec_;
  Spacecraft sc_;
  double mu_;
  double mass_flow_;
  double thrust_unit_;
};

// ---- template definitions --------------------------------------------------

namespace detail {

template <class T>
void require_positive(const T& v, const char* what) {
  const double c = da::value_of(v);
  if (!(c > 0.0)) throw DomainError(what, c);
}

}  // namespace detail

template <class T>
T Model::mass_rate(const Control<T>& u) const {
  using std::sqrt;
  const T uu = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
  return sqrt(uu + kThrustSmoothing * kThrustSmoothing) * (-mass_flow_);
}

template <class T>
State<T> Model::two_body(const State<T>& x, const Control<T>& u) const {
  using std::pow;
  const T r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  detail::require_positive(r2, "two-body: |r| must be > 0");
  detail::require_positive(x[6], "mass must be > 0");
  const T rinv3 = pow(r2, -1.5);
  const T minv = da::reciprocal(x[6]);
  return State<T>{x[3],
                  x[4],
                  x[5],
                  x[0] * (-mu_) * rinv3 + u[0] * minv,
                  x[1] * (-mu_) * rinv3 + u[1] * minv,
                  x[2] * (-mu_) * rinv3 + u[2] * minv,
                  mass_rate(u)};
}

template <class T>
State<T> Model::cr3bp(const State<T>& x, const Control<T>& u) const {
  using std::pow;
  const double m1 = 1.0 - mu_;
  const T dx1 = x[0] + mu_;
  const T dx2 = x[0] - m1;
  const T yz = x[1] * x[1] + x[2] * x[2];
  const T r1sq = dx1 * dx1 + yz;
  const T r2sq = dx2 * dx2 + yz;
  detail::require_positive(r1sq, "cr3bp: distance to primary must be > 0");
  detail::require_positive(r2sq, "cr3bp: distance to secondary must be > 0");
  detail::require_positive(x[6], "mass must be > 0");
  const T k1 = pow(r1sq, -1.5) * m1;
  const T k2 = pow(r2sq, -1.5) * mu_;
  const T k12 = k1 + k2;
  const T minv = da::reciprocal(x[6]);
  return State<T>{x[3],
                  x[4],
                  x[5],
                  x[4] * 2.0 + x[0] - dx1 * k1 - dx2 * k2 + u[0] * minv,
                  x[3] * (-2.0) + x[1] - x[1] * k12 + u[1] * minv,
                  x[2] * (-1.0) * k12 + u[2] * minv,
                  mass_rate(u)};
}

template <class T>
State<T> Model::equinoctial(const State<T>& x, const Control<T>& u) const {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const T& a = x[0];
  const T& p = x[1];
  const T& q = x[2];
  const T& r = x[3];
  const T& s = x[4];
  const T& L = x[5];
  detail::require_positive(a, "equinoctial: a must be > 0");
  detail::require_positive(x[6], "mass must be > 0");
  const T radicand = 1.0 - p * p - q * q;
  if (!(da::value_of(radicand) > kEquinoctialGuard))
    throw DomainError("equinoctial: 1 - p^2 - q^2 too small", da::value_of(radicand));
  const T sL = sin(L);
  const T cL = cos(L);
  const T psi = 1.0 + p * sL + q * cL;
  if (da::value_of(psi) == 0.0) throw DomainError("equinoctial: Psi must be nonzero", 0.0);
  const T B = sqrt(radicand);
  const T minv = da::reciprocal(x[6]);
  const T uR = u[0] * minv;
  const T uT = u[1] * minv;
  const T uN = u[2] * minv;
  const T a_mu = a * (1.0 / mu_);
  const T sq_a_mu = sqrt(a_mu);        // sqrt(a / mu)
  const T sq_a3_mu = a * sq_a_mu;      // sqrt(a^3 / mu)
  const T psi_inv = da::reciprocal(psi);
  const T B_inv = da::reciprocal(B);
  const T rcs = r * cL - s * sL;
  const T Bk = B * sq_a_mu;
  const T nrm = (1.0 + r * r + s * s) * 0.5;
  return State<T>{
      sq_a3_mu * B_inv * 2.0 * ((q * sL - p * cL) * uR + psi * uT),
      Bk * (cL * (-1.0) * uR + ((p + sL) * psi_inv + sL) * uT - q * rcs * psi_inv * uN),
      Bk * (sL * uR + ((q + cL) * psi_inv + cL) * uT + p * rcs * psi_inv * uN),
      Bk * nrm * sL * psi_inv * uN,
      Bk * nrm * cL * psi_inv * uN,
      da::reciprocal(sq_a_mu) * psi * psi * B_inv * B_inv * B_inv - Bk * psi_inv * rcs * uN,
      mass_rate(u)};
}

template <class T>
State<T> Model::rhs(const State<T>& x, const Control<T>& u) const {
  switch (spec_.kind) {
    case ModelKind::TwoBodyCartesian: return two_body(x, u);
    case ModelKind::Cr3bp: return cr3bp(x, u);
    case ModelKind::EquinoctialGauss: return equinoctial(x, u);
  }
  throw ArgumentError("unknown model kind");
}

// ---- invariants used by tests and diagnostics ----------------------------

/// Specific orbital energy v^2/2 - mu/r (two-body, normalized).
double orbital_energy(const Model& model, std::span<const double> x);
/// |r x v| (two-body, normalized).
double angular_momentum(std::span<const double> x);
/// Jacobi constant 2*Omega - v^2 (CR3BP, normalized).
double jacobi_constant(const Model& model, std::span<const double> x);

/// Keplerian elements [a km, e, i, RAAN, argp, true anomaly] (angles in
/// degrees) to normalized equinoctial [a, p, q, r, s, L].
std::array<double, 6> keplerian_to_equinoctial(const std::array<double, 6>& kep, double lu_km);

}  // namespace polyddp::dynamics

#endif  // POLYDDP_DYNAMICS_MODELS_HPP
