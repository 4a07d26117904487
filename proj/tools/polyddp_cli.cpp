// Command-line front end: solve, compare and verify scenario runs.
//
// Exit codes: 0 converged / verified, 2 did not converge / verification
// failed, 1 usage or configuration error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyddp/bench/artifacts.hpp"
#include "polyddp/bench/runner.hpp"
#include "polyddp/bench/scenario.hpp"
#include "polyddp/errors.hpp"

namespace fs = std::filesystem;
using namespace polyddp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDnc = 2;

struct Overrides {
  std::string variant;
  int order = 0;
  double eps_aul = 0.0;
  double eps_da = 0.0;
};

bench::ScenarioConfig load(const std::string& path, const Overrides& o) {
  bench::ScenarioConfig c = bench::load_scenario(path);
  if (!o.variant.empty()) c.variant = ddp::SolverVariant::parse(o.variant);
  if (o.order) c.order = o.order;
  if (o.eps_aul > 0.0) c.eps_aul = o.eps_aul;
  if (o.eps_da > 0.0) c.eps_da = o.eps_da;
  c.validate();
  return c;
}

void add_overrides(CLI::App* cmd, Overrides& o, bool with_variant) {
  if (with_variant)
    cmd->add_option("--variant", o.variant, "Solver variant")
        ->check(CLI::IsMember({"iLQR", "DDP", "Q", "iLQRDyn", "DDPDyn", "QDyn"}));
  cmd->add_option("--order", o.order, "Taylor expansion order")->check(CLI::IsMember({2, 3, 4}));
  cmd->add_option("--eps-aul", o.eps_aul, "AUL constraint tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--eps-da", o.eps_da, "Accuracy of re-centered dynamics expansions")->check(CLI::PositiveNumber);
}

void print_summary(const bench::RunReport& r) {
  std::printf("%-8s %-9s fuel %.6f kg  g_max %.3e  DDP %d  AUL %d  Newton %d  share %.3f  %.2f s\n",
              r.variant.c_str(), bench::to_string(r.outcome).c_str(), r.fuel_kg, r.g_max, r.ddp_iterations,
              r.aul_iterations, r.newton_iterations, r.approx_share, r.wall_time_s);
  if (!r.failure.empty()) std::printf("  %s\n", r.failure.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-thrust trajectory optimization with polynomial DDP"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress progress messages");

  std::string scenario, out_dir, run_dir, variants_arg;
  Overrides ov;

  auto* solve = app.add_subcommand("solve", "Solve a scenario and write run artifacts");
  solve->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  add_overrides(solve, ov, true);
  solve->add_option("--out", out_dir, "Output directory (default: runs/<scenario name>)");

  auto* compare = app.add_subcommand("compare", "Run several variants on one scenario");
  compare->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  compare->add_option("--variants", variants_arg, "Comma-separated variants, the first is the reference")
      ->required();
  add_overrides(compare, ov, false);
  compare->add_option("--out", out_dir, "Directory for per-variant runs and compare.csv");

  auto* verify = app.add_subcommand("verify", "Re-propagate a run directory and check its report");
  verify->add_option("run_dir", run_dir, "Directory written by solve")->required()->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const bench::ProgressLog log = [&](const std::string& s) {
    if (!quiet) std::fprintf(stderr, "  %s\n", s.c_str());
  };

  try {
    if (*solve) {
      const auto config = load(scenario, ov);
      const auto report = bench::run_scenario(config, log);
      const fs::path dir = out_dir.empty() ? fs::path("runs") / config.name : fs::path(out_dir);
      bench::write_artifacts(dir, config, report);
      print_summary(report);
      std::printf("artifacts in %s\n", dir.string().c_str());
      return report.outcome == bench::RunOutcome::Converged ? kExitOk : kExitDnc;
    }
    if (*compare) {
      auto config = load(scenario, ov);
      std::vector<ddp::SolverVariant> variants;
      std::stringstream in(variants_arg);
      for (std::string name; std::getline(in, name, ',');) variants.push_back(ddp::SolverVariant::parse(name));
      std::vector<bench::RunReport> reports;
      const auto rows = bench::compare_variants(config, variants, log, &reports);
      const fs::path dir = out_dir.empty() ? fs::path("runs") / (config.name + "_compare") : fs::path(out_dir);
      for (const auto& r : reports) {
        auto c = config;
        c.variant = ddp::SolverVariant::parse(r.variant);
        bench::write_artifacts(dir / r.variant, c, r);
      }
      bench::write_file(dir / "compare.csv", bench::comparison_csv(rows));
      std::printf("%-8s %-9s %14s %9s %10s %9s\n", "variant", "status", "fuel [kg]", "J norm", "time [s]", "RT norm");
      bool all = true;
      for (const auto& r : rows) {
        std::printf("%-8s %-9s %14.6f %9.5f %10.2f %9.3f\n", r.variant.c_str(), r.converged ? "converged" : "DNC",
                    r.fuel_kg, r.J_norm, r.wall_time_s, r.time_norm);
        all = all && r.converged;
      }
      return all ? kExitOk : kExitDnc;
    }
    if (*verify) {
      const auto res = bench::verify_run(run_dir);
      std::printf("%s: %s\n", res.passed ? "verified" : "FAILED", res.message.c_str());
      if (!res.converged_claim) std::printf("report outcome is not Converged\n");
      return res.passed && res.converged_claim ? kExitOk : kExitDnc;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const ArgumentError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
