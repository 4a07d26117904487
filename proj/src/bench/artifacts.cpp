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
#include "polyddp/bench/artifacts.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "polyddp/errors.hpp"

namespace polyddp::bench {

namespace {

std::string num(double v) { return format_number(v); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::string trajectory_csv(const ScenarioConfig& config, const RunReport& report) {
  const dynamics::Model m = make_model(config);
  const double dt_days = config.tof_days / config.stages;
  std::ostringstream out;
  out << "stage,t_days,x0,x1,x2,x3,x4,x5,x6,u0,u1,u2,thrust_N,mass_kg\n";
  for (std::size_t k = 0; k < report.X.size(); ++k) {
    out << k << ',' << num(dt_days * static_cast<double>(k));
    for (int i = 0; i < dynamics::kNx; ++i) out << ',' << num(report.X[k][i]);
    if (k < report.U.size()) {
      for (int i = 0; i < dynamics::kNu; ++i) out << ',' << num(report.U[k][i]);
      out << ',' << num(report.U[k].norm() * m.thrust_unit());
    } else {
      out << ",,,,";
    }
    out << ',' << num(report.X[k][6] * config.model.units.mass_unit) << '\n';
  }
  return out.str();
}

std::string convergence_csv(const RunReport& report) {
  std::ostringstream out;
  out << "iteration,phase,aul_iteration,J,g_max,alpha,reg,approx_share\n";
  for (const auto& r : report.ddp_trace)
    out << r.iteration << ',' << r.phase << ',' << r.aul_iteration << ',' << num(r.J) << ',' << num(r.g_max) << ','
        << num(r.alpha) << ',' << num(r.reg) << ',' << num(r.approx_share) << '\n';
  out << "\n# newton\niteration,expansion,d_max,alpha,rate\n";
  for (const auto& r : report.newton_trace)
    out << r.iteration << ',' << r.expansion << ',' << num(r.d_max) << ',' << num(r.alpha) << ',' << num(r.rate)
        << '\n';
  return out.str();
}

std::string report_txt(const RunReport& r) {
  std::ostringstream out;
  auto line = [&](const char* key, const std::string& value) { out << key << ": " << value << '\n'; };
  line("scenario", r.scenario);
  line("variant", r.variant);
  line("order", std::to_string(r.order));
  line("eps_aul", num(r.eps_aul));
  line("eps_da", num(r.eps_da));
  line("eps_n", num(r.eps_n));
  line("outcome", to_string(r.outcome));
  line("failure", r.failure);
  line("fuel_kg", num(r.fuel_kg));
  line("g_max", num(r.g_max));
  line("aul_fuel_kg", num(r.aul_fuel_kg));
  line("aul_g_max", num(r.aul_g_max));
  line("ddp_iterations", std::to_string(r.ddp_iterations));
  line("aul_iterations", std::to_string(r.aul_iterations));
  line("newton_iterations", std::to_string(r.newton_iterations));
  line("newton_expansions", std::to_string(r.newton_expansions));
  line("approx_share", num(r.approx_share));
  line("wall_time_s", num(r.wall_time_s));
  line("aul_time_s", num(r.aul_time_s));
  line("newton_time_s", num(r.newton_time_s));
  line("verification_defect", num(r.verification.defect));
  line("verification_g_max", num(r.verification.g_max));
  line("verification_passed", r.verification.passed ? "true" : "false");
  return out.str();
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << "variant,status,fuel_kg,J_norm,wall_time_s,time_norm,approx_share,ddp_iterations\n";
  for (const auto& r : rows)
    out << r.variant << ',' << (r.converged ? "converged" : "DNC") << ',' << num(r.fuel_kg) << ','
        << num(r.J_norm) << ',' << num(r.wall_time_s) << ',' << num(r.time_norm) << ',' << num(r.approx_share)
        << ',' << r.ddp_iterations << '\n';
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << contents;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_artifacts(const std::filesystem::path& dir, const ScenarioConfig& config, const RunReport& report) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / kScenarioFile, format_scenario(config));
  write_file(dir / kTrajectoryFile, trajectory_csv(config, report));
  write_file(dir / kConvergenceFile, convergence_csv(report));
  write_file(dir / kReportFile, report_txt(report));
}

StoredRun read_run(const std::filesystem::path& dir) {
  StoredRun run;
  run.config = load_scenario(dir / kScenarioFile);

  std::istringstream rep(read_file(dir / kReportFile));
  for (std::string line; std::getline(rep, line);) {
    const auto colon = line.find(": ");
    if (colon == std::string::npos) {
      if (!line.empty() && line.back() == ':') run.report[line.substr(0, line.size() - 1)] = "";
      continue;
    }
    run.report[line.substr(0, colon)] = line.substr(colon + 2);
  }

  const auto path = dir / kTrajectoryFile;
  std::istringstream csv(read_file(path));
  std::string line;
  std::getline(csv, line);  // header
  for (int row = 2; std::getline(csv, line); ++row) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 14) throw std::runtime_error(path.string() + ":" + std::to_string(row) + ": expected 14 columns");
    auto value = [&](int i) {
      char* end = nullptr;
      const double v = std::strtod(cells[i].c_str(), &end);
      if (cells[i].empty() || *end != '\0')
        throw std::runtime_error(path.string() + ":" + std::to_string(row) + ": bad number in column " +
                                 std::to_string(i + 1));
      return v;
    };
    Eigen::VectorXd x(dynamics::kNx);
    for (int i = 0; i < dynamics::kNx; ++i) x[i] = value(2 + i);
    run.X.push_back(x);
    if (!cells[9].empty()) {
      Eigen::VectorXd u(dynamics::kNu);
      for (int i = 0; i < dynamics::kNu; ++i) u[i] = value(9 + i);
      run.U.push_back(u);
    }
  }
  return run;
}

VerifyResult verify_run(const std::filesystem::path& dir) {
  const StoredRun run = read_run(dir);
  VerifyResult res;
  try {
    res.verification = verify_trajectory(run.config, run.X, run.U);
  } catch (const DomainError& e) {
    res.message = std::string("propagation failed: ") + e.what();
    return res;
  }
  res.converged_claim = run.report.count("outcome") && run.report.at("outcome") == "Converged";
  const auto fuel = run.report.find("fuel_kg");
  if (fuel == run.report.end()) throw std::runtime_error((dir / kReportFile).string() + ": missing fuel_kg");
  res.fuel_mismatch_kg = std::fabs(std::strtod(fuel->second.c_str(), nullptr) - res.verification.fuel_kg);

  std::ostringstream msg;
  msg << "defect " << num(res.verification.defect) << ", g_max " << num(res.verification.g_max) << ", fuel "
      << num(res.verification.fuel_kg) << " kg (report differs by " << num(res.fuel_mismatch_kg) << " kg)";
  res.message = msg.str();
  res.passed = res.verification.passed && res.fuel_mismatch_kg <= 1e-9;
  return res;
}

}  // namespace polyddp::bench
