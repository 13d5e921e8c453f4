#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "lrvm/lowrank.hpp"
#include "lrvm/maxwell.hpp"

namespace lrvm {

enum class ScenarioKind { landau, two_stream, bump_on_tail, weibel };

ScenarioKind scenario_from_name(const std::string& name);
std::string scenario_name(ScenarioKind kind);

// Physical parameters; the same slots are reused across scenarios with the
// conventional meaning for each test problem.
struct ScenarioParams {
  double alpha = 0.0;  // density perturbation (landau, weibel) / B3 amplitude (two_stream) / bulk weight (bump_on_tail)
  double beta = 0.0;   // thermal width (two_stream) / beam weight (bump_on_tail) / B3 amplitude (weibel)
  double gamma = 0.0;  // beam perturbation (bump_on_tail)
  double k = 0.0;      // perturbation wavenumber
  double v_th = 0.0;   // thermal speed (weibel)
  double t_r = 0.0;    // temperature ratio (weibel)
};

ScenarioParams default_params(ScenarioKind kind);
GridSpec default_grid(ScenarioKind kind);

// Exact rank of the separable initial condition before padding.
int intrinsic_rank(ScenarioKind kind);

struct ScenarioSpec {
  ScenarioKind kind;
  int rank;
  GridSpec grid;
  ScenarioParams params;
  std::uint64_t seed = 0;

  static ScenarioSpec with_defaults(ScenarioKind kind, int rank);
};

// Builds the low-rank state (exact factorization of the separable initial
// density, orthonormalized, padded to the requested rank with near-null
// directions) and the initial fields for the scenario.
std::pair<LowRankState, EMField> build(const ScenarioSpec& spec);

}  // namespace lrvm
