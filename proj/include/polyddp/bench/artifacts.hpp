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
#ifndef POLYDDP_BENCH_ARTIFACTS_HPP
#define POLYDDP_BENCH_ARTIFACTS_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "polyddp/bench/runner.hpp"

namespace polyddp::bench {

// Run directory layout.
inline constexpr const char* kTrajectoryFile = "trajectory.csv";
inline constexpr const char* kConvergenceFile = "convergence.csv";
inline constexpr const char* kReportFile = "report.txt";
inline constexpr const char* kScenarioFile = "scenario.scn";

/**
 * stage,t_days,x0..x6,u0..u2,thrust_N,mass_kg. States and controls are
 * normalized and printed in shortest round-trip form; the control columns
 * of the final node are empty.
 */
std::string trajectory_csv(const ScenarioConfig& config, const RunReport& report);

/// DDP rows, a blank line, then the "# newton" section (header only when no step was taken).
std::string convergence_csv(const RunReport& report);

/// `key: value` lines covering every scalar RunReport field.
std::string report_txt(const RunReport& report);

std::string comparison_csv(const std::vector<ComparisonRow>& rows);

/// Writes the four run files into dir (created if needed). Throws std::runtime_error naming the path on I/O failure.
void write_artifacts(const std::filesystem::path& dir, const ScenarioConfig& config, const RunReport& report);

void write_file(const std::filesystem::path& path, const std::string& contents);

/// Trajectory and report read back from a run directory.
struct StoredRun {
  ScenarioConfig config;
  std::vector<Eigen::VectorXd> X, U;
  std::map<std::string, std::string> report;
};

StoredRun read_run(const std::filesystem::path& dir);

struct VerifyResult {
  Verification verification;
  double fuel_mismatch_kg = 0.0;  // |reported fuel - re-propagated fuel|
  bool converged_claim = false;   // report says Converged
  bool passed = false;
  std::string message;
};

/// Re-propagates the stored controls and checks them against the stored report.
VerifyResult verify_run(const std::filesystem::path& dir);

}  // namespace polyddp::bench

#endif  // POLYDDP_BENCH_ARTIFACTS_HPP
