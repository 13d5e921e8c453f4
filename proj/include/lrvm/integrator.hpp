#pragma once

#include <string>

#include "lrvm/lowrank.hpp"
#include "lrvm/maxwell.hpp"

namespace lrvm {

enum class RkScheme { rk4_fixed, dopri5_fixed };

struct SubstepConfig {
  int n_substeps = 5;
  RkScheme scheme = RkScheme::rk4_fixed;
};

namespace detail {

template <class Mat>
void check_finite(const Mat& m, int substep, const char* what) {
  if (!m.allFinite())
    throw NumericalError(std::string("non-finite value in ") + what + " at substep " +
                         std::to_string(substep) + " (reduce the time step)");
}

// Fixed-step explicit RK over an autonomous right-hand side. The substep
// ODEs all freeze their fields and coefficients, so autonomy is exact.
template <class Mat, class Rhs>
Mat rk_integrate(Mat y, Rhs&& rhs, double t_total, const SubstepConfig& cfg,
                 const char* what) {
  if (cfg.n_substeps < 1) throw std::invalid_argument("n_substeps must be >= 1");
  const double h = t_total / cfg.n_substeps;
  for (int s = 0; s < cfg.n_substeps; ++s) {
    if (cfg.scheme == RkScheme::rk4_fixed) {
      Mat k1 = rhs(y);
      check_finite(k1, s, what);
      Mat k2 = rhs(y + (h / 2) * k1);
      check_finite(k2, s, what);
      Mat k3 = rhs(y + (h / 2) * k2);
      check_finite(k3, s, what);
      Mat k4 = rhs(y + h * k3);
      check_finite(k4, s, what);
      y += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    } else {
      // Dormand-Prince 5(4), fifth-order weights, run at a fixed step
      Mat k1 = rhs(y);
      check_finite(k1, s, what);
      Mat k2 = rhs(y + h * (1.0 / 5) * k1);
      check_finite(k2, s, what);
      Mat k3 = rhs(y + h * ((3.0 / 40) * k1 + (9.0 / 40) * k2));
      check_finite(k3, s, what);
      Mat k4 = rhs(y + h * ((44.0 / 45) * k1 - (56.0 / 15) * k2 + (32.0 / 9) * k3));
      check_finite(k4, s, what);
      Mat k5 = rhs(y + h * ((19372.0 / 6561) * k1 - (25360.0 / 2187) * k2 +
                            (64448.0 / 6561) * k3 - (212.0 / 729) * k4));
      check_finite(k5, s, what);
      Mat k6 = rhs(y + h * ((9017.0 / 3168) * k1 - (355.0 / 33) * k2 +
                            (46732.0 / 5247) * k3 + (49.0 / 176) * k4 -
                            (5103.0 / 18656) * k5));
      check_finite(k6, s, what);
      y += h * ((35.0 / 384) * k1 + (500.0 / 1113) * k3 + (125.0 / 192) * k4 -
                (2187.0 / 6784) * k5 + (11.0 / 84) * k6);
    }
  }
  return y;
}

}  // namespace detail

// K step: K_j = sum_i X_i S_ij advanced by
//   dt K_j = -sum_l c1_jl dx K_l + sum_l (c2_jl . E) K_l + sum_l c3_jl B3 K_l
// with fields frozen, then re-factored by QR into new X and S. V is untouched.
void k_step(LowRankState& st, const GridFunction1D& e1, const GridFunction1D& e2,
            const GridFunction1D& b3, double tau, const SubstepConfig& cfg);

// S step:
//   dt S_ij = sum_kl (c1_jl d2_ik - c2_jl . d1_ik - c3_jl d3_ik) S_kl
// The plus sign on the transport term is the central (backward-in-character)
// flow of the projector splitting.
void s_step(Eigen::MatrixXd& s, const CMatrices& c, const DMatrices& d, double tau,
            const SubstepConfig& cfg);

// L step: L_i = sum_j S_ij V_j advanced by
//   dt L_i = -sum_k d2_ik v1 L_k + sum_k d1_ik . grad_v L_k
//            + sum_k d3_ik (v2 d_v1 L_k - v1 d_v2 L_k)
// then re-factored by QR into new S and V. X is untouched. When l_half is
// non-null it receives L integrated to tau/2 from the same initial value
// (needed for the mid-step current); the full update always re-integrates
// from the initial value to tau.
void l_step(LowRankState& st, const GridFunction1D& e1, const GridFunction1D& e2,
            const GridFunction1D& b3, double tau, const SubstepConfig& cfg,
            Basis* l_half = nullptr);

// First-order Lie splitting: K(tau), S(tau), L(tau) with fields frozen at the
// step start, then the first-order Maxwell update with j evaluated at the
// step start. E and B live on the same time level.
void lie_step(LowRankState& st, EMField& field, double tau, const SubstepConfig& cfg);

// Second-order staggered-time step. On entry field.E holds E^n and field.B3
// holds B^{n+1/2}; on exit E^{n+1} and B^{n+3/2}. All substeps see the fields
// frozen at E^{1/2}, B^{1/2}. With correction enabled, the electric update is
// followed by the Lagrange-multiplier divergence correction against the
// post-step charge density.
void strang_step(LowRankState& st, EMField& field, double tau, const SubstepConfig& cfg,
                 bool correction = false);

}  // namespace lrvm
