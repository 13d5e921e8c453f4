#pragma once

#include <utility>

#include "lrvm/grid.hpp"

namespace lrvm {

// Reduced electromagnetic field on the x grid. E1, E2 live at integer time
// levels; in the staggered scheme B3 is carried at half-integer levels (the
// +tau/2 offset is a driver convention, not stored here). There is no
// magnetic divergence constraint to violate: B has a single component
// depending on x1 only.
struct EMField {
  GridFunction1D E1, E2, B3;
  double eps_dissipation = 0.0;
};

struct GaussReport {
  double l2_residual = 0.0;
  double numerical_n0 = 0.0;  // current mean of rho, never the analytic value
};

// E1 with dx E1 = n0 - rho solved spectrally (zero-mean gauge).
GridFunction1D init_E_from_gauss(const GridSpec& g, const GridFunction1D& rho);

// E^{1/2} = E^0 + (tau/2) curl B^{1/2} - (tau/2) j^0, written out in the
// reduced geometry. Returns (E1_half, E2_half); the field is not mutated.
std::pair<GridFunction1D, GridFunction1D> half_step_E(
    const GridSpec& g, const EMField& field,
    const std::pair<GridFunction1D, GridFunction1D>& j0, double tau);

// Leapfrog update: E advanced to t+tau from B^{1/2} and j^{1/2}, then B
// advanced to t+3tau/2 from the new E. With eps_dissipation > 0 each update
// is followed by an implicit diffusion solve.
void advance_fields_staggered(const GridSpec& g, EMField& field,
                              const std::pair<GridFunction1D, GridFunction1D>& j_half,
                              double tau);

// Non-staggered first-order update used by the Lie stepper:
// E^1 = E^0 + tau curl B^0 - tau j^0, then B^1 = B^0 - tau curl E^1.
void advance_fields_first_order(const GridSpec& g, EMField& field,
                                const std::pair<GridFunction1D, GridFunction1D>& j0,
                                double tau);

// B^{1/2} = B^0 - (tau/2) dx E2^0, the half forward-Euler bootstrap for the
// staggered time grid.
GridFunction1D bootstrap_half_step_B(const GridSpec& g, const GridFunction1D& b0,
                                     const GridFunction1D& e2_0, double tau);

// Lagrange-multiplier correction restoring Gauss' law: solves
//   -lap phi = (n0_bar - rho_new - dx E1_bar) / tau
// and returns E1 = E1_bar - tau dx phi. The right-hand side uses the
// actually-produced E1_bar, so the correction stays exact when the update
// included dissipation. n0_bar is the numerical mean of rho_new. E2 never
// needs correcting: in this geometry the divergence only sees E1.
GridFunction1D divergence_correction(const GridSpec& g, const GridFunction1D& e1_bar,
                                     const GridFunction1D& rho_new, double tau);

// Discrete L2 norm of dx E1 - (n0 - rho) with n0 = mean(rho).
GaussReport gauss_residual(const GridSpec& g, const EMField& field,
                           const GridFunction1D& rho);

}  // namespace lrvm
