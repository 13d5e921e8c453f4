#include "lrvm/driver.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <vector>

#include "lrvm/diagnostics.hpp"
#include "lrvm/oracle.hpp"

namespace lrvm {

namespace {

namespace fs = std::filesystem;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

constexpr const char* kCsvHeader =
    "time,mass,energy_e,energy_m,energy_k,energy_total,err_mass_rel,err_energy_rel,"
    "gauss_l2,sigma_min,mode1_E1,mode1_E2,mode1_B3";

void write_row(std::ofstream& out, const DiagnosticsRecord& rec,
               const DiagnosticsRecord& ref) {
  const auto [err_mass, err_energy] = relative_errors(rec, ref);
  out << fmt17(rec.time) << ',' << fmt17(rec.mass) << ',' << fmt17(rec.electric_energy)
      << ',' << fmt17(rec.magnetic_energy) << ',' << fmt17(rec.kinetic_energy) << ','
      << fmt17(rec.total_energy) << ',' << fmt17(err_mass) << ',' << fmt17(err_energy)
      << ',' << fmt17(rec.gauss_l2) << ',' << fmt17(rec.sigma_min) << ','
      << fmt17(rec.mode1_E1) << ',' << fmt17(rec.mode1_E2) << ','
      << fmt17(rec.mode1_B3) << '\n';
}

int v2_slice_index(const GridSpec& g) {
  int best = 0;
  for (int j = 1; j < g.n_v2; ++j)
    if (std::abs(g.v2(j)) < std::abs(g.v2(best))) best = j;
  return best;
}

// n_x rows x n_v1 columns of f(x, v1, v2 ~ 0), one metadata header line.
void write_snapshot(const fs::path& dir, double t, const GridSpec& g,
                    const Eigen::MatrixXd& slice) {
  const int j = v2_slice_index(g);
  std::ofstream out(dir / ("snapshot_t" + fmt_time(t) + ".csv"));
  out << "# t=" << fmt17(t) << " n_x=" << g.n_x << " x_min=" << fmt17(g.x_domain.lo)
      << " h_x=" << fmt17(g.h_x) << " n_v1=" << g.n_v1
      << " v1_min=" << fmt17(g.v1_domain.lo) << " h_v1=" << fmt17(g.h_v1)
      << " v2_slice=" << fmt17(g.v2(j)) << '\n';
  for (int i = 0; i < g.n_x; ++i) {
    for (int q = 0; q < g.n_v1; ++q)
      out << (q ? "," : "") << fmt17(slice(i, q));
    out << '\n';
  }
}

Eigen::MatrixXd slice_lowrank(const LowRankState& st) {
  const GridSpec& g = st.grid;
  const int j = v2_slice_index(g);
  Basis v_slice(st.rank, g.n_v1);
  for (int q = 0; q < g.n_v1; ++q)
    v_slice.col(q) = st.V.col(Eigen::Index(q) * g.n_v2 + j);
  return st.X.transpose() * st.S * v_slice;
}

Eigen::MatrixXd slice_full(const FullTensorState& st) {
  const GridSpec& g = st.grid;
  const int j = v2_slice_index(g);
  Eigen::MatrixXd out(g.n_x, g.n_v1);
  for (int q = 0; q < g.n_v1; ++q)
    out.col(q) = st.f.col(Eigen::Index(q) * g.n_v2 + j);
  return out;
}

// snapshot times keyed by the step index they land on (0 = initial data)
std::map<long long, std::vector<double>> snapshot_schedule(const RunConfig& cfg,
                                                           long long n_steps) {
  std::map<long long, std::vector<double>> plan;
  for (double t : cfg.snapshot_times) {
    long long step = llround(t / cfg.tau);
    step = std::max(0LL, std::min(step, n_steps));
    plan[step].push_back(t);
  }
  return plan;
}

}  // namespace

RunStatus run(const RunConfig& raw, std::ostream* progress) {
  const RunConfig cfg = resolve_config(raw);
  const ScenarioSpec spec = scenario_spec_from(cfg);
  const SubstepConfig substeps{cfg.substeps, cfg.rk_scheme};

  auto [state, field] = build(spec);
  const GridSpec& g = state.grid;
  field.eps_dissipation = cfg.eps_dissipation.resolve(g.h_x);

  FullTensorState full{Basis(), g};
  if (cfg.oracle) {
    try {
      full = materialize(state);
    } catch (const std::domain_error& e) {
      throw ConfigError(e.what());
    }
  }

  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  {
    std::ofstream meta(dir / "run_meta");
    meta << format_config(cfg);
  }

  const long long n_steps = llround(cfg.t_final / cfg.tau);
  const auto snapshots = snapshot_schedule(cfg, n_steps);

  std::ofstream ts(dir / "timeseries.csv");
  ts << kCsvHeader << '\n';

  auto measure_now = [&](double t) {
    return cfg.oracle ? measure_full(full, field, t) : measure(state, field, t);
  };

  const DiagnosticsRecord ref = measure_now(0.0);
  write_row(ts, ref, ref);
  if (auto it = snapshots.find(0); it != snapshots.end())
    for (double t : it->second)
      write_snapshot(dir, t, g, cfg.oracle ? slice_full(full) : slice_lowrank(state));

  // move B onto the staggered half-step time grid
  field.B3 = bootstrap_half_step_B(g, field.B3, field.E2, cfg.tau);

  for (long long n = 1; n <= n_steps; ++n) {
    try {
      if (cfg.oracle)
        oracle_strang_step(full, field, cfg.tau, substeps, cfg.correction);
      else
        strang_step(state, field, cfg.tau, substeps, cfg.correction);
    } catch (const NumericalError& e) {
      ts.flush();
      std::ofstream marker(dir / "FAILED");
      marker << "aborted at step " << n << " (t=" << fmt17(n * cfg.tau)
             << "): " << e.what() << '\n';
      if (progress) *progress << "aborted: " << e.what() << '\n';
      return RunStatus::numerical_abort;
    }

    const double t = n * cfg.tau;
    if (n % cfg.diag_cadence == 0 || n == n_steps) {
      const DiagnosticsRecord rec = measure_now(t);
      write_row(ts, rec, ref);
      if (progress)
        *progress << "t=" << fmt_time(t) << " mass=" << fmt_time(rec.mass)
                  << " E_e=" << fmt_time(rec.electric_energy)
                  << " gauss=" << fmt_time(rec.gauss_l2) << '\n';
    }
    if (auto it = snapshots.find(n); it != snapshots.end())
      for (double ts_time : it->second)
        write_snapshot(dir, ts_time, g,
                       cfg.oracle ? slice_full(full) : slice_lowrank(state));
  }
  return RunStatus::ok;
}

}  // namespace lrvm
