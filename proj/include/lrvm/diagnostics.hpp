#pragma once

#include <utility>

#include "lrvm/lowrank.hpp"
#include "lrvm/maxwell.hpp"

namespace lrvm {

struct DiagnosticsRecord {
  double time = 0.0;
  double mass = 0.0;
  double electric_energy = 0.0;
  double magnetic_energy = 0.0;
  double kinetic_energy = 0.0;
  double total_energy = 0.0;
  double gauss_l2 = 0.0;
  double sigma_min = 0.0;
  double mode1_E1 = 0.0;
  double mode1_E2 = 0.0;
  double mode1_B3 = 0.0;
};

struct Energies {
  double electric = 0.0;
  double magnetic = 0.0;
  double kinetic = 0.0;
};

// m(t) = ∫∫ f dx dv, evaluated in factored form.
double mass(const LowRankState& st);

// Electric and magnetic field energies plus the kinetic energy
// (1/2) sum_ij (∫ X_i dx) S_ij (∫ |v|^2 V_j dv); f is never materialized.
Energies energies(const LowRankState& st, const EMField& field);

// (|m(t)-m(0)|/m(0), |E_tot(t)-E_tot(0)|/E_tot(0)). Throws if a reference
// value is zero.
std::pair<double, double> relative_errors(const DiagnosticsRecord& now,
                                          const DiagnosticsRecord& ref);

// Smallest singular value of the coupling matrix; the rank-truncation proxy.
double sigma_min(const Eigen::MatrixXd& s);

// |u_hat(mode)| / n. Modes at or above n/2 are not resolved and are rejected.
double fourier_mode_amplitude(const GridFunction1D& u, int mode);

// One full record; pure readers only.
DiagnosticsRecord measure(const LowRankState& st, const EMField& field, double time);

}  // namespace lrvm
