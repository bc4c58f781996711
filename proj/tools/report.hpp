#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace privm::tools {

// One benchmark configuration: the swept parameter (alpha or n), the Monte
// Carlo estimate of the transport error with its spread, the globally fitted
// log-log slope (same value in every row by design), the mechanism's own
// accuracy bound, and the calibrated power-law reference curve.
struct BenchRow {
  double param = 0.0;      // swept value (alpha, or n for dataset sweeps)
  double mean_w1 = 0.0;    // Monte Carlo mean transport error
  double stddev = 0.0;     // sample standard deviation across trials
  double stderror = 0.0;   // stddev / sqrt(trials)
  double slope = 0.0;      // global least-squares log-log slope
  double bound = 0.0;      // mechanism accuracy bound at this configuration
  double reference = 0.0;  // c * (1/alpha)^(1/d), c fixed at the largest alpha
  int trials = 0;
};

struct BenchReport {
  std::string mode;        // "interval", "cube", or "synth"
  std::string param_name;  // "alpha" or "n"
  int dim = 1;
  std::uint64_t seed = 0;
  double epsilon = 0.0;  // dataset sweeps only; 0 otherwise
  double slope = 0.0;
  double slope_stderr = 0.0;
  // Envelope constant hat-C = mean_w1 * alpha / log^{3/2}(alpha) per row
  // (alpha replaced by epsilon*n for dataset sweeps, exponent 1/d applied
  // for multi-dimensional modes); stability of this constant across the
  // sweep is a scaling-law consistency check.
  double envelope_min = 0.0;
  double envelope_max = 0.0;
  double envelope_mean = 0.0;
  bool mean_above_reference = true;  // every row's mean >= reference curve
  std::vector<BenchRow> rows;
};

// Least-squares slope of log(y) against log(x) with its standard error.
// Requires at least 2 points, all positive; the harness always uses >= 5.
double fit_loglog_slope(const std::vector<double>& xs,
                        const std::vector<double>& ys, double* stderr_out);

// Mean and sample standard deviation (n-1 denominator; 0 when n < 2).
void mean_and_sd(const std::vector<double>& v, double* mean, double* sd);

// Fixed-column CSV rendering (17 significant digits, '.' decimal,
// newline-terminated rows): param,mean_w1,stddev,stderr,slope,bound,reference,trials
std::string bench_csv(const BenchReport& report);

// Human-readable aligned table with a summary header.
std::string bench_table(const BenchReport& report);

// Versioned JSON provenance/report document.
std::string bench_json(const BenchReport& report);

// Walk-growth benchmark: expected running-maximum of the multiscale walk
// against an i.i.d. Laplace walk of the same per-step scale.
struct WalkRow {
  int n = 0;               // walk length (power of two)
  double sr_mean = 0.0;    // E max_k |S_k| for the multiscale walk
  double sr_sd = 0.0;
  double sr_ratio = 0.0;   // sr_mean / log^2 n
  double sr_ratio_se = 0.0;
  double iid_mean = 0.0;   // E max_k |S_k| for the i.i.d. baseline
  double iid_sd = 0.0;
  double iid_ratio = 0.0;  // iid_mean / sqrt(n)
  int trials = 0;
};

struct WalkReport {
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<WalkRow> rows;
  // Growth factors between the first n >= 256 row and the last row.
  double growth_sr = 0.0;
  double growth_iid = 0.0;
  bool ratio_non_increasing = true;  // sr_ratio never rises beyond 2 sigma
  bool iid_grows_3x = false;         // growth_iid >= 3 * growth_sr
  bool floor_ok = true;              // sr_mean >= (1/8) log n - 2 sigma
};

std::string walk_csv(const WalkReport& report);
std::string walk_table(const WalkReport& report);
std::string walk_json(const WalkReport& report);

// Regularity audit: sampled log-density-ratio bound violations.
struct AuditWitness {
  int levels = 0;      // grid exponent L
  int pair_index = 0;  // which sampled pair
  double dist = 0.0;   // l1 distance of the pair
  double gap = 0.0;    // measured potential gap
  double excess = 0.0; // |gap| - dist
};

struct AuditReport {
  std::uint64_t seed = 0;
  int pairs_per_level = 0;
  int level_min = 1;
  int level_max = 12;
  double fault_scale = 1.0;  // != 1 only under the injected-fault hook
  long long pairs_checked = 0;
  int violations = 0;
  bool zero_gap_exact = true;  // identical pairs give exactly zero gap
  std::vector<AuditWitness> witnesses;  // first few violations
};

std::string audit_table(const AuditReport& report);
std::string audit_json(const AuditReport& report);

// Shared numeric formatting: shortest-faithful decimal for CSV cells.
std::string format_g17(double v);

}  // namespace privm::tools
