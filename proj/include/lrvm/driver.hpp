#pragma once

#include <iosfwd>

#include "lrvm/config.hpp"

namespace lrvm {

enum class RunStatus { ok = 0, config_error = 1, numerical_abort = 2 };

// Runs a full simulation into cfg.out_dir: timeseries.csv (one diagnostics
// row per cadence tick), snapshot_t<time>.csv slices at v2 ~ 0, and run_meta
// (the resolved config echo). Deterministic for a given config and seed.
// ConfigError propagates; a mid-run numerical abort keeps the partial
// timeseries, writes a FAILED marker and returns numerical_abort.
RunStatus run(const RunConfig& cfg, std::ostream* progress = nullptr);

}  // namespace lrvm
