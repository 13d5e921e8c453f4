#include "lrvm/lowrank.hpp"

#include <cmath>

namespace lrvm {

double orthonormality_residual(const Basis& m, double weight) {
  Eigen::MatrixXd gram = weight * (m * m.transpose());
  gram.diagonal().array() -= 1.0;
  return gram.cwiseAbs().maxCoeff();
}

namespace {

constexpr double kDeficiencyTol = 1e-14;

// Projects `row` onto the orthogonal complement of rows 0..count-1 of q,
// accumulating the coefficients. Two passes keep orthogonality at roundoff
// even for ill-conditioned input.
void project_out(const Basis& q, Eigen::Index count, double weight,
                 Eigen::VectorXd& row, Eigen::VectorXd* coeffs) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index k = 0; k < count; ++k) {
      const double c = weight * q.row(k).dot(row);
      row -= c * q.row(k).transpose();
      if (coeffs) (*coeffs)[k] += c;
    }
  }
}

// Deterministic fill directions for rank-deficient rows: canonical basis
// vectors visited in a fixed order.
Eigen::VectorXd fill_candidate(Eigen::Index n, int attempt) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  v[(7 * Eigen::Index(attempt) + 1) % n] = 1.0;
  return v;
}

}  // namespace

QRResult qr_orthonormalize(const Basis& m, double weight) {
  const Eigen::Index r = m.rows();
  const Eigen::Index n = m.cols();
  if (weight <= 0) throw std::invalid_argument("qr_orthonormalize: weight must be > 0");
  if (r > n) throw std::invalid_argument("qr_orthonormalize: more rows than grid points");

  QRResult out;
  out.q = Basis::Zero(r, n);
  out.r = Eigen::MatrixXd::Zero(r, r);

  double max_norm = 0.0;
  for (Eigen::Index i = 0; i < r; ++i)
    max_norm = std::max(max_norm, std::sqrt(weight) * m.row(i).norm());
  const double tol = kDeficiencyTol * max_norm;

  int fill_attempt = 0;
  for (Eigen::Index i = 0; i < r; ++i) {
    Eigen::VectorXd row = m.row(i).transpose();
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(r);
    project_out(out.q, i, weight, row, &coeffs);
    const double pivot = std::sqrt(weight) * row.norm();
    if (pivot <= tol) {
      out.rank_deficient = true;
      // replace with a fill direction; its R row stays zero so the direction
      // carries no weight in the reconstruction
      Eigen::VectorXd fill;
      double fnorm = 0.0;
      do {
        fill = fill_candidate(n, fill_attempt++);
        project_out(out.q, i, weight, fill, nullptr);
        fnorm = std::sqrt(weight) * fill.norm();
      } while (fnorm <= kDeficiencyTol);
      out.q.row(i) = fill.transpose() / fnorm;
    } else {
      out.q.row(i) = row.transpose() / pivot;
      out.r.row(i).head(i) = coeffs.head(i);
      out.r(i, i) = pivot;
    }
  }
  return out;
}

CMatrices compute_c_coefficients(const Basis& v_basis, const GridSpec& g) {
  if (v_basis.cols() != g.n_v())
    throw std::invalid_argument("compute_c_coefficients: basis/grid mismatch");
  const double w = g.weight_v();
  const Eigen::VectorXd v1 = g.v1_flat();
  const Eigen::VectorXd v2 = g.v2_flat();

  const Basis dv1 = spectral_deriv_v_rows(g, v_basis, VAxis::v1);
  const Basis dv2 = spectral_deriv_v_rows(g, v_basis, VAxis::v2);

  CMatrices c;
  const Basis v_scaled = v_basis.array().rowwise() * v1.transpose().array();
  c.c1 = w * (v_basis * v_scaled.transpose());
  c.c2_v1 = w * (v_basis * dv1.transpose());
  c.c2_v2 = w * (v_basis * dv2.transpose());
  const Basis rot = (dv1.array().rowwise() * v2.transpose().array()) -
                    (dv2.array().rowwise() * v1.transpose().array());
  c.c3 = w * (v_basis * rot.transpose());
  return c;
}

DMatrices compute_d_coefficients(const Basis& x_basis, const GridFunction1D& e1,
                                 const GridFunction1D& e2, const GridFunction1D& b3,
                                 const GridSpec& g) {
  if (x_basis.cols() != g.n_x || e1.size() != g.n_x || e2.size() != g.n_x ||
      b3.size() != g.n_x)
    throw std::invalid_argument("compute_d_coefficients: basis/grid mismatch");
  const double w = g.weight_x();
  const Basis dx = spectral_deriv_x_rows(g, x_basis, 1);

  DMatrices d;
  d.d1_e1 = w * (x_basis * (x_basis.array().rowwise() * e1.transpose().array())
                               .matrix()
                               .transpose());
  d.d1_e2 = w * (x_basis * (x_basis.array().rowwise() * e2.transpose().array())
                               .matrix()
                               .transpose());
  d.d2 = w * (x_basis * dx.transpose());
  d.d3 = w * (x_basis * (x_basis.array().rowwise() * b3.transpose().array())
                            .matrix()
                            .transpose());
  return d;
}

GridFunction1D charge_density(const LowRankState& st) {
  const Eigen::VectorXd v_integrals = st.grid.weight_v() * st.V.rowwise().sum();
  return st.X.transpose() * (st.S * v_integrals);
}

std::pair<GridFunction1D, GridFunction1D> current_density(const LowRankState& st) {
  const double w = st.grid.weight_v();
  const Eigen::VectorXd m1 = w * (st.V * st.grid.v1_flat());
  const Eigen::VectorXd m2 = w * (st.V * st.grid.v2_flat());
  return {st.X.transpose() * (st.S * m1), st.X.transpose() * (st.S * m2)};
}

Eigen::MatrixXd reconstruct_full(const LowRankState& st) {
  const Eigen::Index entries = Eigen::Index(st.grid.n_x) * st.grid.n_v();
  if (entries > (Eigen::Index(1) << 24))
    throw std::domain_error(
        "reconstruct_full: refusing to materialize more than 2^24 entries");
  return st.X.transpose() * st.S * st.V;
}

}  // namespace lrvm
