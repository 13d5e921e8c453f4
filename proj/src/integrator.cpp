#include "lrvm/integrator.hpp"

namespace lrvm {

namespace {

Basis scale_cols(const Basis& m, const Eigen::VectorXd& w) {
  return m.array().rowwise() * w.transpose().array();
}

}  // namespace

void k_step(LowRankState& st, const GridFunction1D& e1, const GridFunction1D& e2,
            const GridFunction1D& b3, double tau, const SubstepConfig& cfg) {
  const GridSpec& g = st.grid;
  const CMatrices c = compute_c_coefficients(st.V, g);

  Basis k0 = st.S.transpose() * st.X;
  auto rhs = [&](const Basis& k) -> Basis {
    const Basis dk = spectral_deriv_x_rows(g, k, 1);
    return -c.c1 * dk + scale_cols(c.c2_v1 * k, e1) + scale_cols(c.c2_v2 * k, e2) +
           scale_cols(c.c3 * k, b3);
  };
  const Basis k1 = detail::rk_integrate(std::move(k0), rhs, tau, cfg, "K step");

  const QRResult qr = qr_orthonormalize(k1, g.weight_x());
  st.X = qr.q;
  st.S = qr.r.transpose();
}

void s_step(Eigen::MatrixXd& s, const CMatrices& c, const DMatrices& d, double tau,
            const SubstepConfig& cfg) {
  auto rhs = [&](const Eigen::MatrixXd& m) -> Eigen::MatrixXd {
    return d.d2 * m * c.c1.transpose() - d.d1_e1 * m * c.c2_v1.transpose() -
           d.d1_e2 * m * c.c2_v2.transpose() - d.d3 * m * c.c3.transpose();
  };
  s = detail::rk_integrate(Eigen::MatrixXd(s), rhs, tau, cfg, "S step");
}

void l_step(LowRankState& st, const GridFunction1D& e1, const GridFunction1D& e2,
            const GridFunction1D& b3, double tau, const SubstepConfig& cfg,
            Basis* l_half) {
  const GridSpec& g = st.grid;
  const DMatrices d = compute_d_coefficients(st.X, e1, e2, b3, g);
  const Eigen::VectorXd v1 = g.v1_flat();
  const Eigen::VectorXd v2 = g.v2_flat();

  auto rhs = [&](const Basis& l) -> Basis {
    const Basis dv1 = spectral_deriv_v_rows(g, l, VAxis::v1);
    const Basis dv2 = spectral_deriv_v_rows(g, l, VAxis::v2);
    return -scale_cols(d.d2 * l, v1) + d.d1_e1 * dv1 + d.d1_e2 * dv2 +
           d.d3 * (scale_cols(dv1, v2) - scale_cols(dv2, v1));
  };

  const Basis l0 = st.S * st.V;
  if (l_half) *l_half = detail::rk_integrate(Basis(l0), rhs, tau / 2, cfg, "L step");
  const Basis l1 = detail::rk_integrate(Basis(l0), rhs, tau, cfg, "L step");

  const QRResult qr = qr_orthonormalize(l1, g.weight_v());
  st.V = qr.q;
  st.S = qr.r;
}

void lie_step(LowRankState& st, EMField& field, double tau, const SubstepConfig& cfg) {
  const GridSpec& g = st.grid;
  const auto j0 = current_density(st);
  const GridFunction1D e1 = field.E1, e2 = field.E2, b3 = field.B3;

  k_step(st, e1, e2, b3, tau, cfg);
  const CMatrices c = compute_c_coefficients(st.V, g);
  const DMatrices d = compute_d_coefficients(st.X, e1, e2, b3, g);
  s_step(st.S, c, d, tau, cfg);
  l_step(st, e1, e2, b3, tau, cfg);

  advance_fields_first_order(g, field, j0, tau);
}

void strang_step(LowRankState& st, EMField& field, double tau, const SubstepConfig& cfg,
                 bool correction) {
  const GridSpec& g = st.grid;

  const auto j0 = current_density(st);
  const auto [e1_half, e2_half] = half_step_E(g, field, j0, tau);
  const GridFunction1D& b3_half = field.B3;

  k_step(st, e1_half, e2_half, b3_half, tau / 2, cfg);
  {
    const CMatrices c = compute_c_coefficients(st.V, g);
    const DMatrices d = compute_d_coefficients(st.X, e1_half, e2_half, b3_half, g);
    s_step(st.S, c, d, tau / 2, cfg);
  }

  Basis l_half;
  l_step(st, e1_half, e2_half, b3_half, tau, cfg, &l_half);

  // mid-step current from X^{1/2} and L^{1/2}
  const double wv = g.weight_v();
  const Eigen::VectorXd m1 = wv * (l_half * g.v1_flat());
  const Eigen::VectorXd m2 = wv * (l_half * g.v2_flat());
  const std::pair<GridFunction1D, GridFunction1D> j_half{st.X.transpose() * m1,
                                                         st.X.transpose() * m2};

  {
    const CMatrices c = compute_c_coefficients(st.V, g);
    const DMatrices d = compute_d_coefficients(st.X, e1_half, e2_half, b3_half, g);
    s_step(st.S, c, d, tau / 2, cfg);
  }
  k_step(st, e1_half, e2_half, b3_half, tau / 2, cfg);

  if (correction) {
    const GridFunction1D rho_new = charge_density(st);
    advance_fields_staggered(g, field, j_half, tau);
    // the B update reads only E2, so correcting E1 afterwards commutes with it
    field.E1 = divergence_correction(g, field.E1, rho_new, tau);
  } else {
    advance_fields_staggered(g, field, j_half, tau);
  }
}

}  // namespace lrvm
