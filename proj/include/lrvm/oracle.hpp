#pragma once

#include "lrvm/diagnostics.hpp"
#include "lrvm/integrator.hpp"
#include "lrvm/lowrank.hpp"
#include "lrvm/maxwell.hpp"

namespace lrvm {

// Brute-force Eulerian reference on the full n_x x n_v1 x n_v2 tensor. Small
// grids only; the point is an error model independent of the projector
// splitting, sharing the same spectral kernels.
struct FullTensorState {
  Basis f;  // n_x rows, each a flattened v-grid function
  GridSpec grid;
};

FullTensorState materialize(const LowRankState& st);

struct Moments {
  GridFunction1D rho, j1, j2;
};

Moments moments_full(const FullTensorState& st);

// One staggered-time step with the phase-space flow integrated unsplit:
// a single RK flow of -v1 dx f + E . grad_v f + B3 (v2 d_v1 - v1 d_v2) f with
// fields frozen at E^{1/2}, B^{1/2}; the Maxwell updates match the low-rank
// path exactly. The mid-step current comes from a separate integration of f
// to tau/2 from the same initial value.
void oracle_strang_step(FullTensorState& st, EMField& field, double tau,
                        const SubstepConfig& cfg, bool correction = false);

// Full-tensor counterpart of measure(); sigma_min comes from the weighted
// x-v unfolding so the value is comparable with the low-rank one.
DiagnosticsRecord measure_full(const FullTensorState& st, const EMField& field,
                               double time);

}  // namespace lrvm
