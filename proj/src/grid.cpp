#include "lrvm/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

namespace lrvm {

GridSpec::GridSpec(int n_x_, int n_v1_, int n_v2_, Interval x_dom, Interval v1_dom,
                   Interval v2_dom)
    : n_x(n_x_),
      n_v1(n_v1_),
      n_v2(n_v2_),
      x_domain(x_dom),
      v1_domain(v1_dom),
      v2_domain(v2_dom) {
  if (n_x < 1 || n_v1 < 1 || n_v2 < 1)
    throw ConfigError("grid sizes must be positive");
  if (n_x % 2 == 0)
    throw ConfigError("n_x must be odd (even grids lose the Nyquist-mode phase)");
  if (x_domain.length() <= 0 || v1_domain.length() <= 0 || v2_domain.length() <= 0)
    throw ConfigError("grid domains must have positive length");
  h_x = x_domain.length() / n_x;
  h_v1 = v1_domain.length() / n_v1;
  h_v2 = v2_domain.length() / n_v2;
}

Eigen::VectorXd GridSpec::x_coords() const {
  Eigen::VectorXd out(n_x);
  for (int i = 0; i < n_x; ++i) out[i] = x(i);
  return out;
}

Eigen::VectorXd GridSpec::v1_flat() const {
  Eigen::VectorXd out(n_v());
  for (int i = 0; i < n_v1; ++i)
    for (int j = 0; j < n_v2; ++j) out[Eigen::Index(i) * n_v2 + j] = v1(i);
  return out;
}

Eigen::VectorXd GridSpec::v2_flat() const {
  Eigen::VectorXd out(n_v());
  for (int i = 0; i < n_v1; ++i)
    for (int j = 0; j < n_v2; ++j) out[Eigen::Index(i) * n_v2 + j] = v2(j);
  return out;
}

double quad_x(const GridSpec& g, const GridFunction1D& u) {
  if (u.size() != g.n_x) throw std::invalid_argument("quad_x: size mismatch");
  return g.h_x * u.sum();
}

double quad_v(const GridSpec& g, const GridFunction2V& u) {
  if (u.size() != g.n_v()) throw std::invalid_argument("quad_v: size mismatch");
  return g.weight_v() * u.sum();
}

namespace {

using Symbol = std::vector<std::complex<double>>;

// Plans are cached per (n, howmany, stride, dist, direction) and executed via
// the new-array interface on per-call buffers, so execution stays re-entrant
// and deterministic (FFTW_ESTIMATE picks plans without timing).
struct PlanCache {
  std::mutex mtx;
  std::map<std::tuple<int, int, int, int, bool>, fftw_plan> plans;

  fftw_plan get(int n, int howmany, int stride, int dist, bool forward) {
    std::scoped_lock lock(mtx);
    auto key = std::make_tuple(n, howmany, stride, dist, forward);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;

    const int nc = n / 2 + 1;
    const size_t len_r = size_t(n - 1) * stride + size_t(howmany - 1) * dist + 1;
    const size_t len_c = size_t(nc - 1) * stride + size_t(howmany - 1) * dist + 1;
    double* re = fftw_alloc_real(len_r);
    fftw_complex* cx = fftw_alloc_complex(len_c);
    fftw_plan p;
    if (forward) {
      p = fftw_plan_many_dft_r2c(1, &n, howmany, re, nullptr, stride, dist, cx,
                                 nullptr, stride, dist, FFTW_ESTIMATE);
    } else {
      p = fftw_plan_many_dft_c2r(1, &n, howmany, cx, nullptr, stride, dist, re,
                                 nullptr, stride, dist, FFTW_ESTIMATE);
    }
    fftw_free(re);
    fftw_free(cx);
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

struct FftwRealDeleter {
  void operator()(double* p) const { fftw_free(p); }
};
struct FftwComplexDeleter {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

// Forward transform of `howmany` lines of length n, multiplication of each
// retained mode by symbol[m] (which includes the 1/n normalization), inverse
// transform. Line q starts at q*dist; element m of a line sits m*stride apart.
void transform_lines(int n, int howmany, int stride, int dist, const double* in,
                     double* out, const Symbol& symbol) {
  const int nc = n / 2 + 1;
  fftw_plan fwd = plan_cache().get(n, howmany, stride, dist, true);
  fftw_plan bwd = plan_cache().get(n, howmany, stride, dist, false);

  const size_t len_r = size_t(n - 1) * stride + size_t(howmany - 1) * dist + 1;
  const size_t len_c = size_t(nc - 1) * stride + size_t(howmany - 1) * dist + 1;
  std::unique_ptr<double[], FftwRealDeleter> re(fftw_alloc_real(len_r));
  std::unique_ptr<fftw_complex[], FftwComplexDeleter> cx(fftw_alloc_complex(len_c));

  std::copy(in, in + len_r, re.get());
  fftw_execute_dft_r2c(fwd, re.get(), cx.get());

  for (int m = 0; m < nc; ++m) {
    const std::complex<double> s = symbol[m];
    for (int q = 0; q < howmany; ++q) {
      const size_t idx = size_t(m) * stride + size_t(q) * dist;
      const std::complex<double> w = std::complex<double>(cx[idx][0], cx[idx][1]) * s;
      cx[idx][0] = w.real();
      cx[idx][1] = w.imag();
    }
  }

  fftw_execute_dft_c2r(bwd, cx.get(), re.get());
  std::copy(re.get(), re.get() + len_r, out);
}

double wavenumber(int m, double length) { return 2.0 * M_PI * m / length; }

// (ik)^order symbols with 1/n folded in. The first derivative zeroes the
// Nyquist bin on even grids; its imaginary part is not representable there.
Symbol deriv_symbol(int n, double length, int order) {
  const int nc = n / 2 + 1;
  Symbol s(nc);
  const double norm = 1.0 / n;
  for (int m = 0; m < nc; ++m) {
    const double k = wavenumber(m, length);
    if (order == 1) {
      const bool nyquist = (n % 2 == 0 && m == n / 2);
      s[m] = nyquist ? std::complex<double>(0, 0) : std::complex<double>(0, k * norm);
    } else {
      s[m] = {-k * k * norm, 0.0};
    }
  }
  return s;
}

}  // namespace

GridFunction1D spectral_deriv_x(const GridSpec& g, const GridFunction1D& u, int order) {
  if (u.size() != g.n_x) throw std::invalid_argument("spectral_deriv_x: size mismatch");
  if (order != 1 && order != 2) throw std::invalid_argument("order must be 1 or 2");
  GridFunction1D out(g.n_x);
  transform_lines(g.n_x, 1, 1, g.n_x, u.data(), out.data(),
                  deriv_symbol(g.n_x, g.x_domain.length(), order));
  return out;
}

Basis spectral_deriv_x_rows(const GridSpec& g, const Basis& m, int order) {
  if (m.cols() != g.n_x) throw std::invalid_argument("deriv_x_rows: size mismatch");
  Basis out(m.rows(), m.cols());
  transform_lines(g.n_x, int(m.rows()), 1, g.n_x, m.data(), out.data(),
                  deriv_symbol(g.n_x, g.x_domain.length(), order));
  return out;
}

Basis spectral_deriv_x_cols(const GridSpec& g, const Basis& f, int order) {
  if (f.rows() != g.n_x) throw std::invalid_argument("deriv_x_cols: size mismatch");
  const int n_lines = int(f.cols());
  Basis out(f.rows(), f.cols());
  transform_lines(g.n_x, n_lines, n_lines, 1, f.data(), out.data(),
                  deriv_symbol(g.n_x, g.x_domain.length(), order));
  return out;
}

GridFunction2V spectral_deriv_v(const GridSpec& g, const GridFunction2V& u, VAxis axis) {
  if (u.size() != g.n_v()) throw std::invalid_argument("spectral_deriv_v: size mismatch");
  GridFunction2V out(u.size());
  if (axis == VAxis::v2) {
    transform_lines(g.n_v2, g.n_v1, 1, g.n_v2, u.data(), out.data(),
                    deriv_symbol(g.n_v2, g.v2_domain.length(), 1));
  } else {
    transform_lines(g.n_v1, g.n_v2, g.n_v2, 1, u.data(), out.data(),
                    deriv_symbol(g.n_v1, g.v1_domain.length(), 1));
  }
  return out;
}

Basis spectral_deriv_v_rows(const GridSpec& g, const Basis& m, VAxis axis) {
  if (m.cols() != g.n_v()) throw std::invalid_argument("deriv_v_rows: size mismatch");
  Basis out(m.rows(), m.cols());
  if (axis == VAxis::v2) {
    // every row shares the contiguous-line layout, one batched call suffices
    transform_lines(g.n_v2, int(m.rows()) * g.n_v1, 1, g.n_v2, m.data(), out.data(),
                    deriv_symbol(g.n_v2, g.v2_domain.length(), 1));
  } else {
    const Symbol s = deriv_symbol(g.n_v1, g.v1_domain.length(), 1);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      transform_lines(g.n_v1, g.n_v2, g.n_v2, 1, m.data() + r * g.n_v(),
                      out.data() + r * g.n_v(), s);
  }
  return out;
}

GridFunction1D poisson_solve_periodic(const GridSpec& g, const GridFunction1D& rhs) {
  if (rhs.size() != g.n_x) throw std::invalid_argument("poisson: size mismatch");
  GridFunction1D out(g.n_x);
  const double length = g.x_domain.length();
  const int nc = g.n_x / 2 + 1;
  Symbol s(nc);
  s[0] = {0.0, 0.0};  // zero-mean gauge; mean of rhs projected out
  for (int m = 1; m < nc; ++m) {
    const double k = wavenumber(m, length);
    s[m] = {1.0 / (k * k * g.n_x), 0.0};
  }
  transform_lines(g.n_x, 1, 1, g.n_x, rhs.data(), out.data(), s);
  return out;
}

GridFunction1D implicit_diffusion_step(const GridSpec& g, const GridFunction1D& u,
                                       double eps, double tau) {
  if (u.size() != g.n_x) throw std::invalid_argument("diffusion: size mismatch");
  if (eps < 0) throw std::invalid_argument("diffusion: eps must be >= 0");
  if (tau <= 0) throw std::invalid_argument("diffusion: tau must be > 0");
  if (eps == 0) return u;
  GridFunction1D out(g.n_x);
  const double length = g.x_domain.length();
  const int nc = g.n_x / 2 + 1;
  Symbol s(nc);
  for (int m = 0; m < nc; ++m) {
    const double k = wavenumber(m, length);
    s[m] = {1.0 / ((1.0 + tau * eps * k * k) * g.n_x), 0.0};
  }
  transform_lines(g.n_x, 1, 1, g.n_x, u.data(), out.data(), s);
  return out;
}

Eigen::VectorXcd dft_half_spectrum(const Eigen::VectorXd& u) {
  const int n = int(u.size());
  const int nc = n / 2 + 1;
  std::unique_ptr<double[], FftwRealDeleter> re(fftw_alloc_real(n));
  std::unique_ptr<fftw_complex[], FftwComplexDeleter> cx(fftw_alloc_complex(nc));
  std::copy(u.data(), u.data() + n, re.get());
  fftw_plan p = plan_cache().get(n, 1, 1, n, true);
  fftw_execute_dft_r2c(p, re.get(), cx.get());
  Eigen::VectorXcd out(nc);
  for (int m = 0; m < nc; ++m) out[m] = std::complex<double>(cx[m][0], cx[m][1]);
  return out;
}

}  // namespace lrvm
