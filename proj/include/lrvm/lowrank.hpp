#pragma once

#include <Eigen/Core>
#include <utility>

#include "lrvm/grid.hpp"

namespace lrvm {

// f(x,v) ~ sum_ij X_i(x) S_ij V_j(v) with rows of X and V orthonormal under
// the discrete weighted inner products (weight h_x, resp. h_v1*h_v2).
struct LowRankState {
  int rank;
  Basis X;            // rank x n_x
  Eigen::MatrixXd S;  // rank x rank
  Basis V;            // rank x (n_v1*n_v2)
  GridSpec grid;
};

// Largest deviation of the weighted Gram matrix from the identity.
double orthonormality_residual(const Basis& m, double weight);

struct QRResult {
  Basis q;            // rows orthonormal under the weighted inner product
  Eigen::MatrixXd r;  // lower triangular, non-negative diagonal; m = r * q
  bool rank_deficient = false;
};

// Gram-Schmidt with reorthogonalization under the weighted inner product.
// A row whose pivot falls below 1e-14 of the largest row norm is replaced by
// a deterministic orthonormal fill vector and its R row is zeroed; the
// deficiency is flagged, not fatal.
QRResult qr_orthonormalize(const Basis& m, double weight);

// Velocity-side coefficient matrices (all r x r):
//   c1_jl = ∫ v1 V_j V_l dv
//   c2_jl = ∫ V_j grad_v V_l dv          (components c2_v1, c2_v2)
//   c3_jl = ∫ V_j (v2 d_v1 V_l - v1 d_v2 V_l) dv
struct CMatrices {
  Eigen::MatrixXd c1, c2_v1, c2_v2, c3;
};

// Space-side coefficient matrices (all r x r):
//   d1_ik = ∫ X_i E X_k dx               (components d1_e1, d1_e2)
//   d2_ik = ∫ X_i dx X_k dx
//   d3_ik = ∫ X_i B3 X_k dx
struct DMatrices {
  Eigen::MatrixXd d1_e1, d1_e2, d2, d3;
};

struct CoefficientSet {
  CMatrices c;
  DMatrices d;
};

CMatrices compute_c_coefficients(const Basis& v_basis, const GridSpec& g);
DMatrices compute_d_coefficients(const Basis& x_basis, const GridFunction1D& e1,
                                 const GridFunction1D& e2, const GridFunction1D& b3,
                                 const GridSpec& g);

// rho(x) = ∫ f dv, evaluated in factored form; f is never materialized.
GridFunction1D charge_density(const LowRankState& st);

// (j1, j2)(x) = ∫ v f dv in factored form.
std::pair<GridFunction1D, GridFunction1D> current_density(const LowRankState& st);

// Test/debug materialization of the full tensor as an n_x x (n_v1*n_v2)
// matrix. Guarded to at most 2^24 entries.
Eigen::MatrixXd reconstruct_full(const LowRankState& st);

}  // namespace lrvm
