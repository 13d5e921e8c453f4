#include "lrvm/scenarios.hpp"

#include <cmath>
#include <vector>

namespace lrvm {

namespace {

// Value on the padded diagonal of S: keeps S invertible while staying
// dynamically negligible.
constexpr double kSigmaPad = 1e-12;

// splitmix64; used only for padding directions, fixed across platforms.
struct Pseudorandom {
  std::uint64_t state;
  explicit Pseudorandom(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }  // [0,1)
};

Eigen::VectorXd random_direction(Pseudorandom& rng, Eigen::Index n) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = 2.0 * rng.uniform() - 1.0;
  return v;
}

// Appends orthonormal completion rows below the first `filled` rows.
void complete_basis(Basis& basis, Eigen::Index filled, double weight,
                    Pseudorandom& rng) {
  for (Eigen::Index i = filled; i < basis.rows(); ++i) {
    Eigen::VectorXd v;
    double norm = 0.0;
    do {
      v = random_direction(rng, basis.cols());
      for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index k = 0; k < i; ++k)
          v -= weight * basis.row(k).dot(v) * basis.row(k).transpose();
      norm = std::sqrt(weight) * v.norm();
    } while (norm < 1e-8);
    basis.row(i) = v.transpose() / norm;
  }
}

struct SeparableFactors {
  Basis x_factors;  // m x n_x
  Basis v_factors;  // m x n_v
};

SeparableFactors analytic_factors(const ScenarioSpec& spec) {
  const GridSpec& g = spec.grid;
  const ScenarioParams& p = spec.params;
  const Eigen::VectorXd x = g.x_coords();
  const Eigen::VectorXd v1 = g.v1_flat();
  const Eigen::VectorXd v2 = g.v2_flat();

  SeparableFactors f;
  switch (spec.kind) {
    case ScenarioKind::landau: {
      f.x_factors.resize(1, g.n_x);
      f.v_factors.resize(1, g.n_v());
      f.x_factors.row(0) = (1.0 + p.alpha * (p.k * x.array()).cos()).matrix();
      f.v_factors.row(0) =
          ((-(v1.array().square() + v2.array().square()) / 2).exp() / (2 * M_PI))
              .matrix();
      break;
    }
    case ScenarioKind::two_stream: {
      f.x_factors = Basis::Ones(1, g.n_x);
      f.v_factors.resize(1, g.n_v());
      const Eigen::ArrayXd beams = (-(v1.array() - 0.2).square() / p.beta).exp() +
                                   (-(v1.array() + 0.2).square() / p.beta).exp();
      f.v_factors.row(0) =
          ((-v2.array().square() / p.beta).exp() * beams / (2 * M_PI * p.beta))
              .matrix();
      break;
    }
    case ScenarioKind::bump_on_tail: {
      f.x_factors.resize(2, g.n_x);
      f.v_factors.resize(2, g.n_v());
      const double norm = 1.0 / (std::sqrt(2.0) * M_PI);
      const Eigen::ArrayXd ev2 = (-v2.array().square()).exp();
      f.x_factors.row(0).setOnes();
      f.v_factors.row(0) =
          (norm * p.alpha * (-v1.array().square() / 2).exp() * ev2).matrix();
      f.x_factors.row(1) = (1.0 + p.gamma * (p.k * x.array()).cos()).matrix();
      f.v_factors.row(1) =
          (norm * p.beta * (-2.0 * (v1.array() - 4.5).square()).exp() * ev2).matrix();
      break;
    }
    case ScenarioKind::weibel: {
      f.x_factors.resize(1, g.n_x);
      f.v_factors.resize(1, g.n_v());
      f.x_factors.row(0) = (1.0 + p.alpha * (p.k * x.array()).cos()).matrix();
      const double vth2 = p.v_th * p.v_th;
      f.v_factors.row(0) =
          ((-(v1.array().square() + v2.array().square() / p.t_r) / vth2).exp() /
           (M_PI * vth2 * std::sqrt(p.t_r)))
              .matrix();
      break;
    }
  }
  return f;
}

}  // namespace

ScenarioKind scenario_from_name(const std::string& name) {
  if (name == "landau") return ScenarioKind::landau;
  if (name == "two_stream") return ScenarioKind::two_stream;
  if (name == "bump_on_tail") return ScenarioKind::bump_on_tail;
  if (name == "weibel") return ScenarioKind::weibel;
  throw ConfigError("unknown scenario '" + name +
                    "' (expected landau, two_stream, bump_on_tail or weibel)");
}

std::string scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::landau: return "landau";
    case ScenarioKind::two_stream: return "two_stream";
    case ScenarioKind::bump_on_tail: return "bump_on_tail";
    case ScenarioKind::weibel: return "weibel";
  }
  return {};
}

ScenarioParams default_params(ScenarioKind kind) {
  ScenarioParams p;
  switch (kind) {
    case ScenarioKind::landau:
      p.alpha = 0.01;
      p.k = 0.4;
      break;
    case ScenarioKind::two_stream:
      p.alpha = 1e-3;
      p.beta = 2e-3;
      p.k = 1.0;
      break;
    case ScenarioKind::bump_on_tail:
      p.alpha = 0.9;
      p.beta = 0.2;
      p.gamma = 0.03;
      p.k = 0.3;
      break;
    case ScenarioKind::weibel:
      p.alpha = 1e-4;
      p.beta = 1e-4;
      p.k = 1.25;
      p.v_th = 0.02;
      p.t_r = 12.0;
      break;
  }
  return p;
}

GridSpec default_grid(ScenarioKind kind) {
  const ScenarioParams p = default_params(kind);
  switch (kind) {
    case ScenarioKind::landau:
      return {33, 128, 128, {0.0, 2 * M_PI / p.k}, {-5, 5}, {-5, 5}};
    case ScenarioKind::two_stream:
      return {33, 64, 64, {0.0, 2 * M_PI}, {-0.4, 0.4}, {-0.4, 0.4}};
    case ScenarioKind::bump_on_tail:
      return {65, 128, 128, {0.0, 20 * M_PI}, {-9, 9}, {-9, 9}};
    case ScenarioKind::weibel:
      return {65, 192, 192, {0.0, 2 * M_PI / p.k}, {-0.3, 0.3}, {-0.3, 0.3}};
  }
  throw ConfigError("unknown scenario kind");
}

int intrinsic_rank(ScenarioKind kind) {
  return kind == ScenarioKind::bump_on_tail ? 2 : 1;
}

ScenarioSpec ScenarioSpec::with_defaults(ScenarioKind kind, int rank) {
  return ScenarioSpec{kind, rank, default_grid(kind), default_params(kind), 0};
}

std::pair<LowRankState, EMField> build(const ScenarioSpec& spec) {
  const GridSpec& g = spec.grid;
  const int m = intrinsic_rank(spec.kind);
  if (spec.rank < m)
    throw ConfigError("scenario '" + scenario_name(spec.kind) + "' needs rank >= " +
                      std::to_string(m));
  if (spec.rank > std::min<Eigen::Index>(g.n_x, g.n_v()))
    throw ConfigError("rank exceeds min(n_x, n_v1*n_v2)");

  const SeparableFactors f = analytic_factors(spec);
  const QRResult qx = qr_orthonormalize(f.x_factors, g.weight_x());
  const QRResult qv = qr_orthonormalize(f.v_factors, g.weight_v());

  LowRankState st{spec.rank, Basis::Zero(spec.rank, g.n_x),
                  Eigen::MatrixXd::Zero(spec.rank, spec.rank),
                  Basis::Zero(spec.rank, g.n_v()), g};
  st.X.topRows(m) = qx.q;
  st.V.topRows(m) = qv.q;
  // factors = R * Q on each side, so S carries Rx^T * Rv on the physical block
  st.S.topLeftCorner(m, m) = qx.r.transpose() * qv.r;
  for (int i = m; i < spec.rank; ++i) st.S(i, i) = kSigmaPad;

  Pseudorandom rng(spec.seed * 0x9e3779b97f4a7c15ULL + 0x51db38e5ad111bULL);
  complete_basis(st.X, m, g.weight_x(), rng);
  complete_basis(st.V, m, g.weight_v(), rng);

  EMField field{GridFunction1D::Zero(g.n_x), GridFunction1D::Zero(g.n_x),
                GridFunction1D::Zero(g.n_x), 0.0};
  const Eigen::ArrayXd kx = spec.params.k * g.x_coords().array();
  switch (spec.kind) {
    case ScenarioKind::landau:
      field.E1 = init_E_from_gauss(g, charge_density(st));
      field.B3 = (spec.params.alpha / spec.params.k) * kx.sin().matrix();
      break;
    case ScenarioKind::two_stream:
      field.B3 = spec.params.alpha * kx.sin().matrix();
      break;
    case ScenarioKind::bump_on_tail:
      field.E1 = init_E_from_gauss(g, charge_density(st));
      break;
    case ScenarioKind::weibel:
      field.E1 = init_E_from_gauss(g, charge_density(st));
      field.B3 = spec.params.beta * kx.cos().matrix();
      break;
  }
  return {std::move(st), std::move(field)};
}

}  // namespace lrvm
