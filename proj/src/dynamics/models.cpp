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
#include "polyddp/dynamics/models.hpp"

#include <cmath>
#include <numbers>

namespace polyddp::dynamics {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::TwoBodyCartesian: return "two_body";
    case ModelKind::Cr3bp: return "cr3bp";
    case ModelKind::EquinoctialGauss: return "equinoctial";
  }
  return "unknown";
}

void NormalizationUnits::validate() const {
  if (!(lu > 0.0 && tu > 0.0 && vu > 0.0 && mass_unit > 0.0))
    throw ArgumentError("NormalizationUnits: all units must be > 0");
  if (std::fabs(vu - lu / tu) > 1e-9 * vu)
    throw ArgumentError("NormalizationUnits: vu must equal lu / tu");
}

void Spacecraft::validate() const {
  if (!(m0 > m_dry && m_dry > 0.0)) throw ArgumentError("Spacecraft: need m0 > m_dry > 0");
  if (!(u_max > 0.0)) throw ArgumentError("Spacecraft: u_max must be > 0");
  if (!(isp > 0.0)) throw ArgumentError("Spacecraft: isp must be > 0");
  if (!(g0 > 0.0)) throw ArgumentError("Spacecraft: g0 must be > 0");
}

void ModelSpec::validate() const {
  units.validate();
  if (kind == ModelKind::Cr3bp) {
    if (!(mu > 0.0 && mu < 0.5)) throw ArgumentError("ModelSpec: CR3BP mass ratio must be in (0, 0.5)");
  } else if (!(mu > 0.0)) {
    throw ArgumentError("ModelSpec: gravitational parameter must be > 0");
  }
}

void StageSpec::validate() const {
  if (!(dt > 0.0)) throw ArgumentError("StageSpec: dt must be > 0");
  if (substeps < 1) throw ArgumentError("StageSpec: substeps must be >= 1");
}

Model::Model(ModelSpec spec, Spacecraft sc) : spec_(spec), sc_(sc) {
  spec_.validate();
  sc_.validate();
  const auto& u = spec_.units;
  mu_ = spec_.kind == ModelKind::Cr3bp ? spec_.mu : spec_.mu * u.tu * u.tu / (u.lu * u.lu * u.lu);
  const double lu_m = u.lu * 1000.0;
  thrust_unit_ = u.mass_unit * lu_m / (u.tu * u.tu);
  mass_flow_ = lu_m / (u.tu * sc_.g0 * sc_.isp);
}

double orbital_energy(const Model& model, std::span<const double> x) {
  const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  const double v2 = x[3] * x[3] + x[4] * x[4] + x[5] * x[5];
  return 0.5 * v2 - model.mu() / r;
}

double angular_momentum(std::span<const double> x) {
  const double hx = x[1] * x[5] - x[2] * x[4];
  const double hy = x[2] * x[3] - x[0] * x[5];
  const double hz = x[0] * x[4] - x[1] * x[3];
  return std::sqrt(hx * hx + hy * hy + hz * hz);
}

double jacobi_constant(const Model& model, std::span<const double> x) {
  const double mu = model.mu();
  const double r1 = std::sqrt((x[0] + mu) * (x[0] + mu) + x[1] * x[1] + x[2] * x[2]);
  const double r2 = std::sqrt((x[0] - 1.0 + mu) * (x[0] - 1.0 + mu) + x[1] * x[1] + x[2] * x[2]);
  const double omega = 0.5 * (x[0] * x[0] + x[1] * x[1]) + (1.0 - mu) / r1 + mu / r2;
  return 2.0 * omega - (x[3] * x[3] + x[4] * x[4] + x[5] * x[5]);
}

std::array<double, 6> keplerian_to_equinoctial(const std::array<double, 6>& kep, double lu_km) {
  const double deg = std::numbers::pi / 180.0;
  const double e = kep[1], i = kep[2] * deg, raan = kep[3] * deg, argp = kep[4] * deg, nu = kep[5] * deg;
  const double t = std::tan(0.5 * i);
  return {kep[0] / lu_km,          e * std::sin(raan + argp), e * std::cos(raan + argp),
          t * std::sin(raan),      t * std::cos(raan),        raan + argp + nu};
}

}  // namespace polyddp::dynamics
