#include "lrvm/diagnostics.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace lrvm {

double mass(const LowRankState& st) { return quad_x(st.grid, charge_density(st)); }

Energies energies(const LowRankState& st, const EMField& field) {
  const GridSpec& g = st.grid;
  Energies e;
  e.electric = 0.5 * (quad_x(g, field.E1.array().square().matrix()) +
                      quad_x(g, field.E2.array().square().matrix()));
  e.magnetic = 0.5 * quad_x(g, field.B3.array().square().matrix());

  const Eigen::VectorXd x_int = g.weight_x() * st.X.rowwise().sum();
  const Eigen::VectorXd speed2 =
      (g.v1_flat().array().square() + g.v2_flat().array().square()).matrix();
  const Eigen::VectorXd v_int = g.weight_v() * (st.V * speed2);
  e.kinetic = 0.5 * x_int.dot(st.S * v_int);
  return e;
}

std::pair<double, double> relative_errors(const DiagnosticsRecord& now,
                                          const DiagnosticsRecord& ref) {
  if (ref.mass == 0.0 || ref.total_energy == 0.0)
    throw std::invalid_argument("relative_errors: zero reference value");
  return {std::abs(now.mass - ref.mass) / std::abs(ref.mass),
          std::abs(now.total_energy - ref.total_energy) / std::abs(ref.total_energy)};
}

double sigma_min(const Eigen::MatrixXd& s) {
  if (!s.allFinite()) throw std::invalid_argument("sigma_min: non-finite matrix");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(s);
  return svd.singularValues().tail(1)(0);
}

double fourier_mode_amplitude(const GridFunction1D& u, int mode) {
  const int n = int(u.size());
  if (mode < 0 || 2 * mode >= n)
    throw std::invalid_argument("fourier_mode_amplitude: mode not resolved");
  const Eigen::VectorXcd spectrum = dft_half_spectrum(u);
  return std::abs(spectrum[mode]) / n;
}

DiagnosticsRecord measure(const LowRankState& st, const EMField& field, double time) {
  DiagnosticsRecord rec;
  rec.time = time;
  rec.mass = mass(st);
  const Energies e = energies(st, field);
  rec.electric_energy = e.electric;
  rec.magnetic_energy = e.magnetic;
  rec.kinetic_energy = e.kinetic;
  rec.total_energy = e.electric + e.magnetic + e.kinetic;
  rec.gauss_l2 = gauss_residual(st.grid, field, charge_density(st)).l2_residual;
  rec.sigma_min = sigma_min(st.S);
  rec.mode1_E1 = fourier_mode_amplitude(field.E1, 1);
  rec.mode1_E2 = fourier_mode_amplitude(field.E2, 1);
  rec.mode1_B3 = fourier_mode_amplitude(field.B3, 1);
  return rec;
}

}  // namespace lrvm
