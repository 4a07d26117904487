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
#include "polyddp/bench/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "polyddp/errors.hpp"

namespace polyddp::bench {

namespace {

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"scenario", {"name", "long_running"}},
      {"model", {"kind", "mu", "lu", "tu", "vu"}},
      {"spacecraft", {"isp", "g0", "m_dry", "u_max", "m0"}},
      {"transfer", {"tof_days", "stages", "substeps", "state_units", "initial", "target"}},
      {"solver", {"variant", "order", "eps_ddp", "eps_aul", "eps_da", "eps_n", "eps_cv", "u0", "homotopy"}},
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) { return format_number(v); }

class Reader {
 public:
  Reader(std::map<std::string, Section> sections, std::string origin)
      : sections_(std::move(sections)), origin_(std::move(origin)) {}

  [[noreturn]] void fail(const std::string& section, const std::string& key, const std::string& what) const {
    std::string where = origin_;
    if (auto* e = find(section, key)) where += ":" + std::to_string(e->line);
    throw ConfigError(where + ": [" + section + "] " + key + ": " + what);
  }

  Entry* find(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto e = s->second.find(key);
    return e == s->second.end() ? nullptr : const_cast<Entry*>(&e->second);
  }

  std::optional<std::string> optional(const std::string& section, const std::string& key) {
    Entry* e = find(section, key);
    if (!e) return std::nullopt;
    e->used = true;
    return e->value;
  }

  std::string required(const std::string& section, const std::string& key) {
    auto v = optional(section, key);
    if (!v) throw ConfigError(origin_ + ": missing required key '" + key + "' in [" + section + "]");
    return *v;
  }

  double to_double(const std::string& section, const std::string& key, const std::string& text) const {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || *end != '\0' || !std::isfinite(v)) fail(section, key, "expected a number, got '" + text + "'");
    return v;
  }

  double number(const std::string& section, const std::string& key) {
    return to_double(section, key, required(section, key));
  }

  void number(const std::string& section, const std::string& key, double& out) {
    if (auto v = optional(section, key)) out = to_double(section, key, *v);
  }

  void integer(const std::string& section, const std::string& key, int& out, bool needed) {
    auto v = needed ? std::optional(required(section, key)) : optional(section, key);
    if (!v) return;
    const std::string t = trim(*v);
    char* end = nullptr;
    const long n = std::strtol(t.c_str(), &end, 10);
    if (t.empty() || *end != '\0') fail(section, key, "expected an integer, got '" + *v + "'");
    out = static_cast<int>(n);
  }

  // Six whitespace-separated values; '-' stands for an angle the orbit leaves undefined.
  std::array<double, 6> six(const std::string& section, const std::string& key, bool allow_dash) {
    std::istringstream in(required(section, key));
    std::array<double, 6> out{};
    std::string tok;
    int n = 0;
    while (in >> tok) {
      if (n == 6) fail(section, key, "expected 6 values");
      out[n++] = (allow_dash && tok == "-") ? 0.0 : to_double(section, key, tok);
    }
    if (n != 6) fail(section, key, "expected 6 values, got " + std::to_string(n));
    return out;
  }

  void reject_unused() const {
    for (const auto& [name, section] : sections_)
      for (const auto& [key, entry] : section)
        if (!entry.used) throw ConfigError(origin_ + ":" + std::to_string(entry.line) + ": [" + name + "] " + key +
                                           ": key not used by this scenario");
  }

 private:
  std::map<std::string, Section> sections_;
  std::string origin_;
};

// Half a unit in the last printed digit of a decimal literal.
double printed_resolution(const std::string& text) {
  const std::string t = trim(text);
  const auto epos = t.find_first_of("eE");
  const std::string mant = t.substr(0, epos);
  const int exponent = epos == std::string::npos ? 0 : std::atoi(t.c_str() + epos + 1);
  const auto dot = mant.find('.');
  const int decimals = dot == std::string::npos ? 0 : static_cast<int>(mant.size() - dot - 1);
  return 0.5 * std::pow(10.0, exponent - decimals);
}

dynamics::ModelKind parse_kind(const std::string& s) {
  if (s == "two_body") return dynamics::ModelKind::TwoBodyCartesian;
  if (s == "cr3bp") return dynamics::ModelKind::Cr3bp;
  if (s == "equinoctial") return dynamics::ModelKind::EquinoctialGauss;
  throw ArgumentError("expected two_body, cr3bp or equinoctial, got '" + s + "'");
}

std::string kind_name(dynamics::ModelKind k) {
  switch (k) {
    case dynamics::ModelKind::TwoBodyCartesian: return "two_body";
    case dynamics::ModelKind::Cr3bp: return "cr3bp";
    case dynamics::ModelKind::EquinoctialGauss: return "equinoctial";
  }
  return "?";
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void ScenarioConfig::validate() const {
  auto check = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid scenario: " + what);
  };
  check(!name.empty(), "name must not be empty");
  check(stages >= 2, "stages must be >= 2");
  check(substeps >= 1, "substeps must be >= 1");
  check(tof_days > 0.0, "tof_days must be > 0");
  check(order >= 2 && order <= 4, "order must be 2, 3 or 4");
  for (auto [v, key] : {std::pair{eps_ddp, "eps_ddp"}, {eps_aul, "eps_aul"}, {eps_da, "eps_da"}, {eps_n, "eps_n"},
                        {eps_cv, "eps_cv"}})
    check(v > 0.0, std::string(key) + " must be > 0");
  check(u0 >= 0.0, "u0 must be >= 0");
  check(x0[6] == 1.0, "initial mass must equal the wet mass");
  try {
    model.validate();
    spacecraft.validate();
    schedule.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("invalid scenario: ") + e.what());
  }
  check(spacecraft.m_dry < spacecraft.m0, "m_dry must be below m0");
}

ocp::TerminalKind ScenarioConfig::terminal_kind() const {
  return model.kind == dynamics::ModelKind::EquinoctialGauss ? ocp::TerminalKind::Equinoctial
                                                             : ocp::TerminalKind::Cartesian;
}

dynamics::StageSpec ScenarioConfig::stage_spec(const dynamics::Model& m) const {
  return dynamics::StageSpec{m.days_to_tu(tof_days) / stages, substeps};
}

ScenarioConfig parse_scenario(const std::string& text, const std::string& origin) {
  std::map<std::string, Section> sections;
  {
    std::istringstream in(text);
    std::string raw, current;
    for (int line = 1; std::getline(in, raw); ++line) {
      const std::string s = trim(raw.substr(0, raw.find('#')));
      if (s.empty()) continue;
      const std::string at = origin + ":" + std::to_string(line) + ": ";
      if (s.front() == '[') {
        if (s.back() != ']') throw ConfigError(at + "unterminated section header");
        current = trim(s.substr(1, s.size() - 2));
        if (!known_keys().count(current)) throw ConfigError(at + "unknown section [" + current + "]");
        if (sections.count(current)) throw ConfigError(at + "duplicate section [" + current + "]");
        sections[current];
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError(at + "expected key = value");
      if (current.empty()) throw ConfigError(at + "key outside of any section");
      const std::string key = trim(s.substr(0, eq));
      if (!known_keys().at(current).count(key))
        throw ConfigError(at + "unknown key '" + key + "' in [" + current + "]");
      if (sections[current].count(key)) throw ConfigError(at + "duplicate key '" + key + "'");
      sections[current][key] = Entry{trim(s.substr(eq + 1)), line, false};
    }
  }

  Reader r(std::move(sections), origin);
  ScenarioConfig c;
  c.name = r.required("scenario", "name");
  if (auto v = r.optional("scenario", "long_running")) {
    if (*v != "true" && *v != "false") r.fail("scenario", "long_running", "expected true or false");
    c.long_running = *v == "true";
  }

  try {
    c.model.kind = parse_kind(r.required("model", "kind"));
  } catch (const ArgumentError& e) {
    r.fail("model", "kind", e.what());
  }
  c.model.mu = r.number("model", "mu");
  c.model.units.lu = r.number("model", "lu");
  c.model.units.tu = r.number("model", "tu");
  c.model.units.vu = c.model.units.lu / c.model.units.tu;
  if (auto v = r.optional("model", "vu")) {
    const double given = r.to_double("model", "vu", *v);
    const double tol = printed_resolution(*v) + 1e-12 * std::fabs(given);
    if (!(std::fabs(given - c.model.units.vu) <= tol))
      r.fail("model", "vu", "inconsistent with lu / tu = " + fmt(c.model.units.vu));
  }

  c.spacecraft.isp = r.number("spacecraft", "isp");
  c.spacecraft.g0 = r.number("spacecraft", "g0");
  c.spacecraft.m_dry = r.number("spacecraft", "m_dry");
  c.spacecraft.u_max = r.number("spacecraft", "u_max");
  c.spacecraft.m0 = r.number("spacecraft", "m0");
  c.model.units.mass_unit = c.spacecraft.m0;

  c.tof_days = r.number("transfer", "tof_days");
  r.integer("transfer", "stages", c.stages, true);
  r.integer("transfer", "substeps", c.substeps, true);
  const std::string units = r.required("transfer", "state_units");
  const double lu = c.model.units.lu, vu = c.model.units.vu;
  auto convert = [&](const std::string& key) -> dynamics::State<double> {
    const bool keplerian = units == "keplerian";
    const auto v = r.six("transfer", key, keplerian);
    if (units == "normalized") return {v[0], v[1], v[2], v[3], v[4], v[5], 1.0};
    if (units == "km") {
      if (c.model.kind == dynamics::ModelKind::EquinoctialGauss)
        r.fail("transfer", "state_units", "km states need a Cartesian model");
      return {v[0] / lu, v[1] / lu, v[2] / lu, v[3] / vu, v[4] / vu, v[5] / vu, 1.0};
    }
    if (keplerian) {
      if (c.model.kind != dynamics::ModelKind::EquinoctialGauss)
        r.fail("transfer", "state_units", "keplerian states need the equinoctial model");
      const auto e = dynamics::keplerian_to_equinoctial(v, lu);
      return {e[0], e[1], e[2], e[3], e[4], e[5], 1.0};
    }
    r.fail("transfer", "state_units", "expected normalized, km or keplerian, got '" + units + "'");
  };
  c.x0 = convert("initial");
  c.target = convert("target");
  c.target[6] = 0.0;

  if (auto v = r.optional("solver", "variant")) {
    try {
      c.variant = ddp::SolverVariant::parse(*v);
    } catch (const ArgumentError& e) {
      r.fail("solver", "variant", e.what());
    }
  }
  r.integer("solver", "order", c.order, false);
  r.number("solver", "eps_ddp", c.eps_ddp);
  r.number("solver", "eps_aul", c.eps_aul);
  r.number("solver", "eps_da", c.eps_da);
  r.number("solver", "eps_n", c.eps_n);
  r.number("solver", "eps_cv", c.eps_cv);
  r.number("solver", "u0", c.u0);
  if (auto v = r.optional("solver", "homotopy")) {
    c.schedule.steps.clear();
    std::istringstream in(*v);
    std::string pair;
    while (std::getline(in, pair, ',')) {
      std::istringstream p(pair);
      std::string eta, sigma, extra;
      if (!(p >> eta >> sigma) || (p >> extra)) r.fail("solver", "homotopy", "expected 'eta sigma' pairs separated by commas");
      c.schedule.steps.push_back({r.to_double("solver", "homotopy", eta), r.to_double("solver", "homotopy", sigma)});
    }
  }

  r.reject_unused();
  try {
    c.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str(), path.string());
}

std::string format_scenario(const ScenarioConfig& c) {
  std::ostringstream out;
  auto state = [&](const dynamics::State<double>& x) {
    std::string s;
    for (int i = 0; i < 6; ++i) s += (i ? " " : "") + fmt(x[i]);
    return s;
  };
  out << "[scenario]\n"
      << "name = " << c.name << "\n"
      << "long_running = " << (c.long_running ? "true" : "false") << "\n\n"
      << "[model]\n"
      << "kind = " << kind_name(c.model.kind) << "\n"
      << "mu = " << fmt(c.model.mu) << "\n"
      << "lu = " << fmt(c.model.units.lu) << "\n"
      << "tu = " << fmt(c.model.units.tu) << "\n\n"
      << "[spacecraft]\n"
      << "isp = " << fmt(c.spacecraft.isp) << "\n"
      << "g0 = " << fmt(c.spacecraft.g0) << "\n"
      << "m_dry = " << fmt(c.spacecraft.m_dry) << "\n"
      << "u_max = " << fmt(c.spacecraft.u_max) << "\n"
      << "m0 = " << fmt(c.spacecraft.m0) << "\n\n"
      << "[transfer]\n"
      << "tof_days = " << fmt(c.tof_days) << "\n"
      << "stages = " << c.stages << "\n"
      << "substeps = " << c.substeps << "\n"
      << "state_units = normalized\n"
      << "initial = " << state(c.x0) << "\n"
      << "target = " << state(c.target) << "\n\n"
      << "[solver]\n"
      << "variant = " << c.variant.name() << "\n"
      << "order = " << c.order << "\n"
      << "eps_ddp = " << fmt(c.eps_ddp) << "\n"
      << "eps_aul = " << fmt(c.eps_aul) << "\n"
      << "eps_da = " << fmt(c.eps_da) << "\n"
      << "eps_n = " << fmt(c.eps_n) << "\n"
      << "eps_cv = " << fmt(c.eps_cv) << "\n"
      << "u0 = " << fmt(c.u0) << "\n"
      << "homotopy = ";
  for (std::size_t i = 0; i < c.schedule.steps.size(); ++i)
    out << (i ? ", " : "") << fmt(c.schedule.steps[i].eta) << " " << fmt(c.schedule.steps[i].sigma);
  out << "\n";
  return out.str();
}

}  // namespace polyddp::bench
