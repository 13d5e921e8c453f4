#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lrvm/integrator.hpp"
#include "lrvm/scenarios.hpp"

namespace lrvm {

// Artificial-dissipation strength; the literal token "1e-2h2" keeps its
// symbolic meaning (0.01 * h_x^2, resolved once the grid is known).
struct EpsSpec {
  bool symbolic = false;
  double value = 0.0;
  double resolve(double h_x) const { return symbolic ? 1e-2 * h_x * h_x : value; }
  bool operator==(const EpsSpec&) const = default;
};

struct RunConfig {
  ScenarioKind scenario = ScenarioKind::landau;
  int rank = 15;
  std::optional<int> n_x, n_v1, n_v2;
  double tau = 0.1;
  double t_final = 25.0;
  bool correction = false;
  EpsSpec eps_dissipation;
  int diag_cadence = 1;
  std::vector<double> snapshot_times;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  int substeps = 5;
  RkScheme rk_scheme = RkScheme::rk4_fixed;
  bool oracle = false;

  // physical overrides; unset means the scenario default
  std::optional<double> alpha, beta, gamma, k, v_th, t_r;
  std::optional<double> x_max, v1_min, v1_max, v2_min, v2_max;

  bool operator==(const RunConfig&) const = default;
};

// Parses the flat `key = value` format ('#' starts a comment). Unknown and
// duplicate keys are errors; messages carry the line number.
RunConfig parse_config(const std::string& text);

// Fills every unset field from the scenario defaults and validates. The
// returned config is fully concrete.
RunConfig resolve_config(const RunConfig& cfg);

// Echo of a resolved config in the same key = value format; parsing it back
// reproduces the config exactly.
std::string format_config(const RunConfig& resolved);

// Scenario spec (grid included) for a resolved config.
ScenarioSpec scenario_spec_from(const RunConfig& resolved);

}  // namespace lrvm
