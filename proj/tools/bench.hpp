#pragma once

#include <cstdint>

#include "report.hpp"

namespace privm::tools {

// Accuracy sweep: privatizes random input measures over a dyadic grid of the
// privacy parameter (or, in dataset mode, the dataset size) and reports the
// Monte Carlo transport error against the mechanism's own bound and a
// calibrated power-law reference.
struct AccuracyBenchConfig {
  std::string mode = "interval";  // interval | cube | synth
  int dim = 1;                    // cube / synth dimension
  int grid_lo = 4;                // lowest dyadic exponent of the sweep
  int grid_hi = 10;               // highest dyadic exponent (inclusive)
  int trials = 200;
  std::uint64_t seed = 1;
  double epsilon = 1.0;  // per-point privacy parameter (dataset mode)
  int sites = 256;       // support size of random input measures
};

BenchReport run_accuracy_bench(const AccuracyBenchConfig& cfg);

// Walk growth sweep: expected running maximum of the multiscale noise walk
// versus an i.i.d. Laplace walk with identical per-step scale.
struct WalkBenchConfig {
  int grid_lo = 6;   // walk length 2^grid_lo ...
  int grid_hi = 14;  // ... up to 2^grid_hi
  int trials = 500;
  std::uint64_t seed = 1;
};

WalkReport run_walk_bench(const WalkBenchConfig& cfg);

// Regularity audit: samples vector pairs and verifies the log-density gap of
// the noise distribution never exceeds the l1 distance (within slack).
// fault_scale != 1 multiplies the measured gap and exists so the negative
// control can prove the audit actually detects violations.
struct AuditConfig {
  int pairs = 10000;
  int level_min = 1;
  int level_max = 12;
  std::uint64_t seed = 1;
  double slack = 1e-9;
  double fault_scale = 1.0;
};

AuditReport run_audit(const AuditConfig& cfg);

}  // namespace privm::tools
