#include "lrvm/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

namespace lrvm {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

double parse_double(int line, const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size() || v.empty())
    fail(line, "invalid number '" + v + "' for key '" + key + "'");
  return x;
}

long long parse_int(int line, const std::string& key, const std::string& v) {
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size() || v.empty())
    fail(line, "invalid integer '" + v + "' for key '" + key + "'");
  return x;
}

bool parse_bool(int line, const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail(line, "invalid boolean '" + v + "' for key '" + key + "' (use true/false)");
}

std::vector<double> parse_list(int line, const std::string& key, const std::string& v) {
  std::vector<double> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(parse_double(line, key, trim(item)));
  return out;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> seen;
  bool have_scenario = false;

  std::stringstream stream(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(stream, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(lineno, "empty key");
    if (!seen.insert(key).second) fail(lineno, "duplicate key '" + key + "'");

    auto as_int = [&](int lo) {
      const long long x = parse_int(lineno, key, value);
      if (x < lo) fail(lineno, "key '" + key + "' must be >= " + std::to_string(lo));
      return int(x);
    };
    auto as_double = [&] { return parse_double(lineno, key, value); };

    if (key == "scenario") {
      try {
        cfg.scenario = scenario_from_name(value);
      } catch (const ConfigError& e) {
        fail(lineno, e.what());
      }
      have_scenario = true;
    } else if (key == "rank") {
      cfg.rank = as_int(1);
    } else if (key == "n_x") {
      cfg.n_x = as_int(1);
    } else if (key == "n_v1") {
      cfg.n_v1 = as_int(1);
    } else if (key == "n_v2") {
      cfg.n_v2 = as_int(1);
    } else if (key == "tau") {
      cfg.tau = as_double();
    } else if (key == "t_final") {
      cfg.t_final = as_double();
    } else if (key == "correction") {
      cfg.correction = parse_bool(lineno, key, value);
    } else if (key == "eps_dissipation") {
      if (value == "1e-2h2") {
        cfg.eps_dissipation = EpsSpec{true, 0.0};
      } else {
        const double e = as_double();
        if (e < 0) fail(lineno, "eps_dissipation must be >= 0");
        cfg.eps_dissipation = EpsSpec{false, e};
      }
    } else if (key == "diag_cadence") {
      cfg.diag_cadence = as_int(1);
    } else if (key == "snapshot_times") {
      cfg.snapshot_times = parse_list(lineno, key, value);
    } else if (key == "out_dir") {
      if (value.empty()) fail(lineno, "out_dir must not be empty");
      cfg.out_dir = value;
    } else if (key == "seed") {
      cfg.seed = std::uint64_t(parse_int(lineno, key, value));
    } else if (key == "substeps") {
      cfg.substeps = as_int(1);
    } else if (key == "rk_scheme") {
      if (value == "rk4")
        cfg.rk_scheme = RkScheme::rk4_fixed;
      else if (value == "dopri5")
        cfg.rk_scheme = RkScheme::dopri5_fixed;
      else
        fail(lineno, "rk_scheme must be rk4 or dopri5");
    } else if (key == "oracle") {
      cfg.oracle = parse_bool(lineno, key, value);
    } else if (key == "alpha") {
      cfg.alpha = as_double();
    } else if (key == "beta") {
      cfg.beta = as_double();
    } else if (key == "gamma") {
      cfg.gamma = as_double();
    } else if (key == "k") {
      cfg.k = as_double();
    } else if (key == "v_th") {
      cfg.v_th = as_double();
    } else if (key == "t_r") {
      cfg.t_r = as_double();
    } else if (key == "x_max") {
      cfg.x_max = as_double();
    } else if (key == "v1_min") {
      cfg.v1_min = as_double();
    } else if (key == "v1_max") {
      cfg.v1_max = as_double();
    } else if (key == "v2_min") {
      cfg.v2_min = as_double();
    } else if (key == "v2_max") {
      cfg.v2_max = as_double();
    } else {
      fail(lineno, "unknown key '" + key + "'");
    }
  }
  if (!have_scenario) throw ConfigError("missing required key 'scenario'");
  return cfg;
}

RunConfig resolve_config(const RunConfig& cfg) {
  RunConfig r = cfg;

  const ScenarioParams defaults = default_params(r.scenario);
  if (!r.alpha) r.alpha = defaults.alpha;
  if (!r.beta) r.beta = defaults.beta;
  if (!r.gamma) r.gamma = defaults.gamma;
  if (!r.k) r.k = defaults.k;
  if (!r.v_th) r.v_th = defaults.v_th;
  if (!r.t_r) r.t_r = defaults.t_r;

  const GridSpec g = default_grid(r.scenario);
  if (!r.n_x) r.n_x = g.n_x;
  if (!r.n_v1) r.n_v1 = g.n_v1;
  if (!r.n_v2) r.n_v2 = g.n_v2;
  if (!r.x_max) {
    // the perturbation wavelength sets the box for the k-driven scenarios
    switch (r.scenario) {
      case ScenarioKind::landau:
      case ScenarioKind::weibel:
        r.x_max = 2 * M_PI / *r.k;
        break;
      default:
        r.x_max = g.x_domain.hi;
    }
  }
  if (!r.v1_min) r.v1_min = g.v1_domain.lo;
  if (!r.v1_max) r.v1_max = g.v1_domain.hi;
  if (!r.v2_min) r.v2_min = g.v2_domain.lo;
  if (!r.v2_max) r.v2_max = g.v2_domain.hi;

  if (r.tau <= 0) throw ConfigError("tau must be > 0");
  if (r.t_final < r.tau) throw ConfigError("t_final must be >= tau");
  if (r.rank < 1) throw ConfigError("rank must be >= 1");
  for (double t : r.snapshot_times)
    if (t < 0 || t > r.t_final)
      throw ConfigError("snapshot time " + fmt17(t) + " outside [0, t_final]");

  // validates sizes, domains and the odd-n_x rule before any compute
  scenario_spec_from(r);
  return r;
}

ScenarioSpec scenario_spec_from(const RunConfig& r) {
  GridSpec grid(*r.n_x, *r.n_v1, *r.n_v2, {0.0, *r.x_max}, {*r.v1_min, *r.v1_max},
                {*r.v2_min, *r.v2_max});
  ScenarioParams p;
  p.alpha = *r.alpha;
  p.beta = *r.beta;
  p.gamma = *r.gamma;
  p.k = *r.k;
  p.v_th = *r.v_th;
  p.t_r = *r.t_r;
  return ScenarioSpec{r.scenario, r.rank, grid, p, r.seed};
}

std::string format_config(const RunConfig& r) {
  std::ostringstream out;
  out << "scenario = " << scenario_name(r.scenario) << '\n';
  out << "rank = " << r.rank << '\n';
  out << "n_x = " << *r.n_x << '\n';
  out << "n_v1 = " << *r.n_v1 << '\n';
  out << "n_v2 = " << *r.n_v2 << '\n';
  out << "tau = " << fmt17(r.tau) << '\n';
  out << "t_final = " << fmt17(r.t_final) << '\n';
  out << "correction = " << (r.correction ? "true" : "false") << '\n';
  if (r.eps_dissipation.symbolic)
    out << "eps_dissipation = 1e-2h2\n";
  else
    out << "eps_dissipation = " << fmt17(r.eps_dissipation.value) << '\n';
  out << "diag_cadence = " << r.diag_cadence << '\n';
  out << "snapshot_times = ";
  for (size_t i = 0; i < r.snapshot_times.size(); ++i)
    out << (i ? "," : "") << fmt17(r.snapshot_times[i]);
  out << '\n';
  out << "out_dir = " << r.out_dir << '\n';
  out << "seed = " << r.seed << '\n';
  out << "substeps = " << r.substeps << '\n';
  out << "rk_scheme = " << (r.rk_scheme == RkScheme::rk4_fixed ? "rk4" : "dopri5")
      << '\n';
  out << "oracle = " << (r.oracle ? "true" : "false") << '\n';
  out << "alpha = " << fmt17(*r.alpha) << '\n';
  out << "beta = " << fmt17(*r.beta) << '\n';
  out << "gamma = " << fmt17(*r.gamma) << '\n';
  out << "k = " << fmt17(*r.k) << '\n';
  out << "v_th = " << fmt17(*r.v_th) << '\n';
  out << "t_r = " << fmt17(*r.t_r) << '\n';
  out << "x_max = " << fmt17(*r.x_max) << '\n';
  out << "v1_min = " << fmt17(*r.v1_min) << '\n';
  out << "v1_max = " << fmt17(*r.v1_max) << '\n';
  out << "v2_min = " << fmt17(*r.v2_min) << '\n';
  out << "v2_max = " << fmt17(*r.v2_max) << '\n';
  return out.str();
}

}  // namespace lrvm
