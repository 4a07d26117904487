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
#ifndef POLYDDP_BENCH_SCENARIO_HPP
#define POLYDDP_BENCH_SCENARIO_HPP

#include <filesystem>
#include <string>

#include "polyddp/ddp/settings.hpp"
#include "polyddp/dynamics/models.hpp"
#include "polyddp/ocp/costs.hpp"
#include "polyddp/ocp/homotopy.hpp"

namespace polyddp::bench {

/**
 * Everything needed to reproduce one transfer. States are stored
 * normalized (mass component = 1); the mass unit is the wet mass m0.
 */
struct ScenarioConfig {
  std::string name;
  bool long_running = false;

  dynamics::ModelSpec model;
  dynamics::Spacecraft spacecraft;

  dynamics::State<double> x0{};
  dynamics::State<double> target{};  // mass entry unused
  double tof_days = 0.0;
  int stages = 0;
  int substeps = 1;

  ddp::SolverVariant variant;
  int order = 2;
  double eps_ddp = 1e-4;
  double eps_aul = 1e-6;
  double eps_da = 1e-6;
  double eps_n = 1e-10;
  double eps_cv = 1.1;
  double u0 = 1e-6;  // first-guess thrust per component, N
  ocp::HomotopySchedule schedule = ocp::HomotopySchedule::standard();

  /// Throws ConfigError naming the failed invariant.
  void validate() const;

  ocp::TerminalKind terminal_kind() const;
  dynamics::StageSpec stage_spec(const dynamics::Model& model) const;
};

/**
 * Parses the bracketed-section key = value format; `origin` prefixes error
 * messages. Unknown sections or keys, duplicates and malformed values are
 * rejected with their line number.
 */
ScenarioConfig parse_scenario(const std::string& text, const std::string& origin = "<string>");
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Shortest decimal text that parses back to exactly v.
std::string format_number(double v);

/// Normalized, fully explicit form that parse_scenario reads back exactly.
std::string format_scenario(const ScenarioConfig& config);

}  // namespace polyddp::bench

#endif  // POLYDDP_BENCH_SCENARIO_HPP
