#include "lrvm/oracle.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace lrvm {

namespace {

Basis scale_cols(const Basis& m, const Eigen::VectorXd& w) {
  return m.array().rowwise() * w.transpose().array();
}

void check_size(const GridSpec& g) {
  if (Eigen::Index(g.n_x) * g.n_v() > (Eigen::Index(1) << 24))
    throw std::domain_error("full-tensor oracle: grid exceeds the 2^24 entry guard");
}

}  // namespace

FullTensorState materialize(const LowRankState& st) {
  check_size(st.grid);
  return FullTensorState{reconstruct_full(st), st.grid};
}

Moments moments_full(const FullTensorState& st) {
  const GridSpec& g = st.grid;
  const double w = g.weight_v();
  Moments m;
  m.rho = w * st.f.rowwise().sum();
  m.j1 = w * (st.f * g.v1_flat());
  m.j2 = w * (st.f * g.v2_flat());
  return m;
}

void oracle_strang_step(FullTensorState& st, EMField& field, double tau,
                        const SubstepConfig& cfg, bool correction) {
  check_size(st.grid);
  const GridSpec& g = st.grid;
  const Eigen::VectorXd v1 = g.v1_flat();
  const Eigen::VectorXd v2 = g.v2_flat();

  const Moments m0 = moments_full(st);
  const auto [e1_half, e2_half] = half_step_E(g, field, {m0.j1, m0.j2}, tau);
  const GridFunction1D& b3_half = field.B3;

  auto rhs = [&](const Basis& f) -> Basis {
    const Basis dx = spectral_deriv_x_cols(g, f, 1);
    const Basis dv1 = spectral_deriv_v_rows(g, f, VAxis::v1);
    const Basis dv2 = spectral_deriv_v_rows(g, f, VAxis::v2);
    Basis out = -scale_cols(dx, v1);
    out += e1_half.asDiagonal() * dv1 + e2_half.asDiagonal() * dv2;
    out += b3_half.asDiagonal() * (scale_cols(dv1, v2) - scale_cols(dv2, v1));
    return out;
  };

  const Basis f_half = detail::rk_integrate(Basis(st.f), rhs, tau / 2, cfg, "oracle");
  const Moments mh = moments_full(FullTensorState{f_half, g});
  st.f = detail::rk_integrate(std::move(st.f), rhs, tau, cfg, "oracle");

  if (correction) {
    const Moments m1 = moments_full(st);
    advance_fields_staggered(g, field, {mh.j1, mh.j2}, tau);
    field.E1 = divergence_correction(g, field.E1, m1.rho, tau);
  } else {
    advance_fields_staggered(g, field, {mh.j1, mh.j2}, tau);
  }
}

DiagnosticsRecord measure_full(const FullTensorState& st, const EMField& field,
                               double time) {
  const GridSpec& g = st.grid;
  const Moments m = moments_full(st);

  DiagnosticsRecord rec;
  rec.time = time;
  rec.mass = quad_x(g, m.rho);
  rec.electric_energy = 0.5 * (quad_x(g, field.E1.array().square().matrix()) +
                               quad_x(g, field.E2.array().square().matrix()));
  rec.magnetic_energy = 0.5 * quad_x(g, field.B3.array().square().matrix());
  const Eigen::VectorXd speed2 =
      (g.v1_flat().array().square() + g.v2_flat().array().square()).matrix();
  rec.kinetic_energy = 0.5 * g.weight_x() * g.weight_v() * (st.f * speed2).sum();
  rec.total_energy = rec.electric_energy + rec.magnetic_energy + rec.kinetic_energy;
  rec.gauss_l2 = gauss_residual(g, field, m.rho).l2_residual;

  Eigen::BDCSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(st.f));
  rec.sigma_min =
      std::sqrt(g.weight_x() * g.weight_v()) * svd.singularValues().tail(1)(0);
  rec.mode1_E1 = fourier_mode_amplitude(field.E1, 1);
  rec.mode1_E2 = fourier_mode_amplitude(field.E2, 1);
  rec.mode1_B3 = fourier_mode_amplitude(field.B3, 1);
  return rec;
}

}  // namespace lrvm
