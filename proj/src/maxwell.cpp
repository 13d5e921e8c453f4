#include "lrvm/maxwell.hpp"

#include <cmath>

namespace lrvm {

GridFunction1D init_E_from_gauss(const GridSpec& g, const GridFunction1D& rho) {
  // dx E1 = n0 - rho; solve -phi'' = n0 - rho and take E1 = -dx phi.
  const double n0 = rho.mean();
  const GridFunction1D rhs = (n0 - rho.array()).matrix();
  const GridFunction1D phi = poisson_solve_periodic(g, rhs);
  return -spectral_deriv_x(g, phi, 1);
}

std::pair<GridFunction1D, GridFunction1D> half_step_E(
    const GridSpec& g, const EMField& field,
    const std::pair<GridFunction1D, GridFunction1D>& j0, double tau) {
  GridFunction1D e1 = field.E1 - (tau / 2) * j0.first;
  GridFunction1D e2 =
      field.E2 - (tau / 2) * spectral_deriv_x(g, field.B3, 1) - (tau / 2) * j0.second;
  return {std::move(e1), std::move(e2)};
}

void advance_fields_staggered(const GridSpec& g, EMField& field,
                              const std::pair<GridFunction1D, GridFunction1D>& j_half,
                              double tau) {
  field.E1 -= tau * j_half.first;
  field.E2 -= tau * spectral_deriv_x(g, field.B3, 1) + tau * j_half.second;
  if (field.eps_dissipation > 0) {
    field.E1 = implicit_diffusion_step(g, field.E1, field.eps_dissipation, tau);
    field.E2 = implicit_diffusion_step(g, field.E2, field.eps_dissipation, tau);
  }
  field.B3 -= tau * spectral_deriv_x(g, field.E2, 1);
  if (field.eps_dissipation > 0)
    field.B3 = implicit_diffusion_step(g, field.B3, field.eps_dissipation, tau);
}

void advance_fields_first_order(const GridSpec& g, EMField& field,
                                const std::pair<GridFunction1D, GridFunction1D>& j0,
                                double tau) {
  // identical shape to the staggered update; B is non-staggered here and the
  // curl still uses the already-updated E2
  advance_fields_staggered(g, field, j0, tau);
}

GridFunction1D bootstrap_half_step_B(const GridSpec& g, const GridFunction1D& b0,
                                     const GridFunction1D& e2_0, double tau) {
  return b0 - (tau / 2) * spectral_deriv_x(g, e2_0, 1);
}

GridFunction1D divergence_correction(const GridSpec& g, const GridFunction1D& e1_bar,
                                     const GridFunction1D& rho_new, double tau) {
  const double n0 = rho_new.mean();
  const GridFunction1D div_e = spectral_deriv_x(g, e1_bar, 1);
  const GridFunction1D rhs = ((n0 - rho_new.array() - div_e.array()) / tau).matrix();
  const GridFunction1D phi = poisson_solve_periodic(g, rhs);
  return e1_bar - tau * spectral_deriv_x(g, phi, 1);
}

GaussReport gauss_residual(const GridSpec& g, const EMField& field,
                           const GridFunction1D& rho) {
  GaussReport rep;
  rep.numerical_n0 = rho.mean();
  const GridFunction1D div_e = spectral_deriv_x(g, field.E1, 1);
  const Eigen::ArrayXd res = div_e.array() - rep.numerical_n0 + rho.array();
  rep.l2_residual = std::sqrt(quad_x(g, res.square().matrix()));
  return rep;
}

}  // namespace lrvm
