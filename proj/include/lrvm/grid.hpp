#pragma once

#include <Eigen/Core>
#include <stdexcept>

namespace lrvm {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a non-finite value is detected mid-integration. The usual
// remedy is a smaller time step.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using GridFunction1D = Eigen::VectorXd;  // one value per x grid point
using GridFunction2V = Eigen::VectorXd;  // length n_v1*n_v2, index iv1*n_v2 + iv2

// Rows are independent grid functions (row i = function i), kept contiguous
// for batched transforms.
using Basis = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
};

enum class VAxis { v1, v2 };

// Uniform periodic grids for x, v1, v2 with the left-closed right-open point
// convention x_i = lo + i*h. n_x must be odd: an even point count cannot store
// the imaginary part of the Nyquist mode, and the resulting error grows over
// long integrations.
struct GridSpec {
  GridSpec(int n_x, int n_v1, int n_v2, Interval x_domain, Interval v1_domain,
           Interval v2_domain);

  int n_x, n_v1, n_v2;
  Interval x_domain, v1_domain, v2_domain;
  double h_x, h_v1, h_v2;

  Eigen::Index n_v() const { return Eigen::Index(n_v1) * n_v2; }
  double x(int i) const { return x_domain.lo + i * h_x; }
  double v1(int i) const { return v1_domain.lo + i * h_v1; }
  double v2(int i) const { return v2_domain.lo + i * h_v2; }

  double weight_x() const { return h_x; }
  double weight_v() const { return h_v1 * h_v2; }

  Eigen::VectorXd x_coords() const;
  // v coordinates flattened in the GridFunction2V layout
  Eigen::VectorXd v1_flat() const;
  Eigen::VectorXd v2_flat() const;
};

// Rectangle-rule quadrature (trapezoid on a periodic grid); spectrally
// accurate for smooth periodic data.
double quad_x(const GridSpec& g, const GridFunction1D& u);
double quad_v(const GridSpec& g, const GridFunction2V& u);

// (ik)^order multiplication in Fourier space; order is 1 or 2.
GridFunction1D spectral_deriv_x(const GridSpec& g, const GridFunction1D& u, int order);

// Partial derivative along one velocity axis, applied line by line.
GridFunction2V spectral_deriv_v(const GridSpec& g, const GridFunction2V& u, VAxis axis);

// Zero-mean phi with -phi'' = g - mean(g); the k=0 mode of the right-hand
// side is projected out before inversion.
GridFunction1D poisson_solve_periodic(const GridSpec& g, const GridFunction1D& rhs);

// (I - tau*eps*d^2/dx^2)^{-1} u, i.e. u_k / (1 + tau*eps*k^2).
GridFunction1D implicit_diffusion_step(const GridSpec& g, const GridFunction1D& u,
                                       double eps, double tau);

// Batched variants operating on every row of a basis matrix.
Basis spectral_deriv_x_rows(const GridSpec& g, const Basis& m, int order);
Basis spectral_deriv_v_rows(const GridSpec& g, const Basis& m, VAxis axis);

// Derivative along x for a full-tensor unfolding (n_x rows, x varies with the
// row index, so the transform runs down the columns).
Basis spectral_deriv_x_cols(const GridSpec& g, const Basis& f, int order);

// Half-spectrum DFT of a real grid function (bins 0..n/2), unnormalized
// FFTW convention. Used by diagnostics and tests.
Eigen::VectorXcd dft_half_spectrum(const Eigen::VectorXd& u);

}  // namespace lrvm
