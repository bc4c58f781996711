#include "bench.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "privm/errors.hpp"
#include "privm/haar.hpp"
#include "privm/measure.hpp"
#include "privm/metric_mech.hpp"
#include "privm/metric_space.hpp"
#include "privm/rng.hpp"
#include "privm/synth.hpp"
#include "privm/wasserstein.hpp"

namespace privm::tools {

namespace {

// Stream id for (grid point, trial): trials are independent streams derived
// from the base seed, so aggregation order cannot matter and a parallel
// runner would produce identical results.
std::uint64_t trial_stream(int grid_index, int trial) {
  return (static_cast<std::uint64_t>(grid_index) << 32) |
         static_cast<std::uint64_t>(trial);
}

// Random support in [0,1]^d: `sites` points with independent uniform
// coordinates (distinct with probability one; exact duplicates are nudged
// apart by the one-dimensional sorter below when they matter).
SpacePtr random_sites(int sites, int dim, FiniteMetricSpace::Kind kind,
                      CounterRng& rng) {
  std::vector<double> flat(static_cast<size_t>(sites) * dim);
  for (double& v : flat) v = rng.next_uniform();
  if (dim == 1) {
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  }
  return FiniteMetricSpace::from_coords(flat, dim, kind);
}

// Probability weights from normalized unit-mean exponentials.
std::vector<double> random_weights(int k, CounterRng& rng) {
  std::vector<double> w(k);
  double total = 0.0;
  for (double& x : w) {
    x = -std::log(rng.next_uniform());
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

WeightedMeasure random_measure(const SpacePtr& sp, CounterRng& rng) {
  const int k = sp->size();
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  return make_measure(sp, idx, random_weights(k, rng));
}

int sample_categorical(const std::vector<double>& cdf, CounterRng& rng) {
  const double u = rng.next_uniform();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  const int i = static_cast<int>(it - cdf.begin());
  return std::min(i, static_cast<int>(cdf.size()) - 1);
}

}  // namespace

BenchReport run_accuracy_bench(const AccuracyBenchConfig& cfg) {
  if (cfg.mode != "interval" && cfg.mode != "cube" && cfg.mode != "synth") {
    throw argument_error("mode must be interval, cube, or synth");
  }
  if (cfg.grid_hi < cfg.grid_lo || cfg.grid_hi - cfg.grid_lo + 1 < 2) {
    throw argument_error("sweep needs at least two grid points");
  }
  if (cfg.trials < 1) {
    throw argument_error("trials must be at least 1");
  }
  const int dim = cfg.mode == "interval" ? 1 : cfg.dim;
  if (dim < 1 || (cfg.mode != "interval" && dim < 2)) {
    throw argument_error("cube and synth sweeps need dim >= 2");
  }
  if (cfg.mode == "synth" && !(cfg.epsilon > 0.0)) {
    throw argument_error("dataset sweeps need a positive epsilon");
  }

  BenchReport report;
  report.mode = cfg.mode;
  report.param_name = cfg.mode == "synth" ? "n" : "alpha";
  report.dim = dim;
  report.seed = cfg.seed;
  report.epsilon = cfg.mode == "synth" ? cfg.epsilon : 0.0;

  const CounterRng base(cfg.seed);
  const auto kind = dim == 1 ? FiniteMetricSpace::Kind::kInterval
                             : FiniteMetricSpace::Kind::kCube;

  std::vector<double> params, means;
  for (int e = cfg.grid_lo; e <= cfg.grid_hi; ++e) {
    const int gi = e - cfg.grid_lo;
    const double param = std::ldexp(1.0, e);
    BenchRow row;
    row.param = param;
    row.trials = cfg.trials;

    std::vector<double> values(cfg.trials);
    double bound = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      CounterRng rng = base.substream(trial_stream(gi, t));
      if (cfg.mode == "synth") {
        const int n = static_cast<int>(param);
        // Population: random sites with random probabilities; the dataset
        // is n independent draws from it.
        SpacePtr sp = random_sites(cfg.sites, dim, kind, rng);
        std::vector<double> probs = random_weights(sp->size(), rng);
        std::vector<double> cdf(probs.size());
        double acc = 0.0;
        for (size_t i = 0; i < probs.size(); ++i) {
          acc += probs[i];
          cdf[i] = acc;
        }
        std::vector<int> data(n);
        for (int i = 0; i < n; ++i) data[i] = sample_categorical(cdf, rng);
        SyntheticDataset y =
            dp_synthetic_data(sp, data, cfg.epsilon, std::nullopt, rng);
        std::vector<double> w(data.size(), 1.0 / n);
        WeightedMeasure mu_x = make_measure(sp, data, w);
        values[t] = wasserstein1_exact(mu_x, empirical_measure(y));
        bound = y.provenance.accuracy_bound;
      } else {
        const double alpha = param;
        SpacePtr sp = random_sites(cfg.sites, dim, kind, rng);
        WeightedMeasure mu = random_measure(sp, rng);
        const double delta = choose_delta(*sp, alpha);
        MetricMechanismResult res =
            private_measure_metric(mu, alpha, delta, rng);
        values[t] = dim == 1 ? wasserstein1_line(mu, res.output)
                             : wasserstein1_exact(mu, res.output);
        bound = res.diagnostics.accuracy_bound;
      }
    }
    mean_and_sd(values, &row.mean_w1, &row.stddev);
    row.stderror = row.stddev / std::sqrt(static_cast<double>(cfg.trials));
    row.bound = bound;
    report.rows.push_back(row);
    params.push_back(param);
    means.push_back(row.mean_w1);
  }

  report.slope = fit_loglog_slope(params, means, &report.slope_stderr);

  // Reference curve c * (1/alpha)^(1/d), calibrated so it touches the mean
  // at the largest privacy parameter of the sweep.
  const double eps = report.param_name == "n" ? cfg.epsilon : 1.0;
  const double alpha_last = eps * params.back();
  const double c = means.back() * std::pow(alpha_last, 1.0 / dim);
  report.mean_above_reference = true;
  double env_min = 0.0, env_max = 0.0, env_sum = 0.0;
  for (size_t i = 0; i < report.rows.size(); ++i) {
    BenchRow& row = report.rows[i];
    row.slope = report.slope;
    const double alpha_i = eps * row.param;
    row.reference = c * std::pow(1.0 / alpha_i, 1.0 / dim);
    if (row.mean_w1 < row.reference - 1e-12) {
      report.mean_above_reference = false;
    }
    const double envelope =
        row.mean_w1 /
        std::pow(std::pow(std::log(alpha_i), 1.5) / alpha_i, 1.0 / dim);
    env_sum += envelope;
    if (i == 0 || envelope < env_min) env_min = envelope;
    if (i == 0 || envelope > env_max) env_max = envelope;
  }
  report.envelope_min = env_min;
  report.envelope_max = env_max;
  report.envelope_mean = env_sum / static_cast<double>(report.rows.size());
  return report;
}

WalkReport run_walk_bench(const WalkBenchConfig& cfg) {
  if (cfg.grid_hi < cfg.grid_lo || cfg.grid_lo < 1 || cfg.grid_hi > 20) {
    throw argument_error("walk sweep needs exponents in [1, 20]");
  }
  if (cfg.trials < 2) {
    throw argument_error("walk sweep needs at least 2 trials");
  }

  WalkReport report;
  report.seed = cfg.seed;
  report.trials = cfg.trials;
  const CounterRng base(cfg.seed);

  for (int L = cfg.grid_lo; L <= cfg.grid_hi; ++L) {
    const int gi = L - cfg.grid_lo;
    const int n = 1 << L;
    const double sigma = static_cast<double>(L) + 2.0;
    std::vector<double> sr(cfg.trials), iid(cfg.trials);
    for (int t = 0; t < cfg.trials; ++t) {
      {
        CounterRng rng = base.substream(trial_stream(gi, t));
        SuperregularNoise noise = sample_noise(L, 2.0, rng);
        double peak = 0.0;
        for (double s : partial_sums_unscaled(noise)) {
          peak = std::max(peak, std::fabs(s));
        }
        sr[t] = peak;
      }
      {
        CounterRng rng =
            base.substream((1ull << 62) | trial_stream(gi, t));
        double sum = 0.0, peak = 0.0;
        for (int i = 0; i < n; ++i) {
          sum += rng.next_laplace(sigma);
          peak = std::max(peak, std::fabs(sum));
        }
        iid[t] = peak;
      }
    }
    WalkRow row;
    row.n = n;
    row.trials = cfg.trials;
    mean_and_sd(sr, &row.sr_mean, &row.sr_sd);
    mean_and_sd(iid, &row.iid_mean, &row.iid_sd);
    const double log2n = std::log(static_cast<double>(n)) *
                         std::log(static_cast<double>(n));
    row.sr_ratio = row.sr_mean / log2n;
    row.sr_ratio_se =
        row.sr_sd / (log2n * std::sqrt(static_cast<double>(cfg.trials)));
    row.iid_ratio = row.iid_mean / std::sqrt(static_cast<double>(n));
    report.rows.push_back(row);
  }

  report.ratio_non_increasing = true;
  for (size_t i = 1; i < report.rows.size(); ++i) {
    const WalkRow& a = report.rows[i - 1];
    const WalkRow& b = report.rows[i];
    const double tol = 2.0 * std::sqrt(a.sr_ratio_se * a.sr_ratio_se +
                                       b.sr_ratio_se * b.sr_ratio_se);
    if (b.sr_ratio > a.sr_ratio + tol) {
      report.ratio_non_increasing = false;
    }
  }

  // Growth factors over [first row with n >= 256, last row].
  const WalkRow* lo = nullptr;
  for (const WalkRow& r : report.rows) {
    if (r.n >= 256) {
      lo = &r;
      break;
    }
  }
  if (lo == nullptr) lo = &report.rows.front();
  const WalkRow& hi = report.rows.back();
  report.growth_sr = hi.sr_mean / lo->sr_mean;
  report.growth_iid = hi.iid_mean / lo->iid_mean;
  report.iid_grows_3x = report.growth_iid >= 3.0 * report.growth_sr;

  report.floor_ok = true;
  for (const WalkRow& r : report.rows) {
    const double se = r.sr_sd / std::sqrt(static_cast<double>(r.trials));
    const double floor =
        std::log(static_cast<double>(r.n)) / 8.0 - 2.0 * se;
    if (r.sr_mean < floor) report.floor_ok = false;
  }
  return report;
}

AuditReport run_audit(const AuditConfig& cfg) {
  if (cfg.pairs < 1 || cfg.level_min < 1 || cfg.level_max < cfg.level_min ||
      cfg.level_max > 20) {
    throw argument_error("audit needs pairs >= 1 and levels in [1, 20]");
  }

  AuditReport report;
  report.seed = cfg.seed;
  report.pairs_per_level = cfg.pairs;
  report.level_min = cfg.level_min;
  report.level_max = cfg.level_max;
  report.fault_scale = cfg.fault_scale;

  const CounterRng base(cfg.seed);
  for (int L = cfg.level_min; L <= cfg.level_max; ++L) {
    const HaarSystem hs = build_haar(L);
    const int n = 1 << L;
    CounterRng rng = base.substream(static_cast<std::uint64_t>(L));

    // Identical pairs must give a gap of exactly zero.
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<double> x(n);
      for (double& v : x) v = 2.0 * rng.next_uniform() - 1.0;
      if (hs.potential_gap(x, x) != 0.0) report.zero_gap_exact = false;
    }

    std::vector<double> x(n), y(n);
    for (int p = 0; p < cfg.pairs; ++p) {
      if (p < 2 * n && p < 64) {
        // Deterministic extremes: zero versus a signed unit vector. These
        // sit closest to the bound, so they also arm the fault hook.
        std::fill(x.begin(), x.end(), 0.0);
        std::fill(y.begin(), y.end(), 0.0);
        y[(p / 2) % n] = p % 2 ? -1.0 : 1.0;
      } else if (p % 4 == 0) {
        // Sparse difference: y = x except in a few entries.
        for (int i = 0; i < n; ++i) {
          x[i] = 2.0 * rng.next_uniform() - 1.0;
          y[i] = x[i];
        }
        const int k = 1 + static_cast<int>(rng.next_u64() % 3);
        for (int j = 0; j < k; ++j) {
          const int i = static_cast<int>(rng.next_u64() % n);
          y[i] += 2.0 * rng.next_uniform() - 1.0;
        }
      } else {
        for (int i = 0; i < n; ++i) {
          x[i] = 2.0 * rng.next_uniform() - 1.0;
          y[i] = 2.0 * rng.next_uniform() - 1.0;
        }
      }
      double dist = 0.0;
      for (int i = 0; i < n; ++i) dist += std::fabs(x[i] - y[i]);
      const double gap = cfg.fault_scale * hs.potential_gap(x, y);
      ++report.pairs_checked;
      if (std::fabs(gap) > dist + cfg.slack) {
        ++report.violations;
        if (report.witnesses.size() < 5) {
          report.witnesses.push_back(
              {L, p, dist, gap, std::fabs(gap) - dist});
        }
      }
    }
  }
  return report;
}

}  // namespace privm::tools
