#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "privm/errors.hpp"

namespace privm::tools {

using nlohmann::json;

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string format_fixed(double v, int prec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
  return buf;
}

std::string pad_left(const std::string& s, size_t width) {
  if (s.size() >= width) return s;
  return std::string(width - s.size(), ' ') + s;
}

}  // namespace

double fit_loglog_slope(const std::vector<double>& xs,
                        const std::vector<double>& ys, double* stderr_out) {
  const size_t n = xs.size();
  if (n < 2 || ys.size() != n) {
    throw argument_error("slope fit needs at least two points");
  }
  double sx = 0.0, sy = 0.0;
  std::vector<double> lx(n), ly(n);
  for (size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw argument_error("slope fit needs positive values");
    }
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) {
    throw argument_error("slope fit needs distinct abscissae");
  }
  const double slope = sxy / sxx;
  if (stderr_out) {
    if (n > 2) {
      double rss = 0.0;
      const double intercept = my - slope * mx;
      for (size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (intercept + slope * lx[i]);
        rss += r * r;
      }
      *stderr_out = std::sqrt(rss / (static_cast<double>(n) - 2.0) / sxx);
    } else {
      *stderr_out = 0.0;
    }
  }
  return slope;
}

void mean_and_sd(const std::vector<double>& v, double* mean, double* sd) {
  const size_t n = v.size();
  double s = 0.0;
  for (double x : v) s += x;
  const double m = n ? s / static_cast<double>(n) : 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  if (mean) *mean = m;
  if (sd) *sd = n > 1 ? std::sqrt(ss / (static_cast<double>(n) - 1.0)) : 0.0;
}

std::string bench_csv(const BenchReport& report) {
  std::ostringstream out;
  out << report.param_name
      << ",mean_w1,stddev,stderr,slope,bound,reference,trials\n";
  for (const BenchRow& r : report.rows) {
    out << format_g17(r.param) << ',' << format_g17(r.mean_w1) << ','
        << format_g17(r.stddev) << ',' << format_g17(r.stderror) << ','
        << format_g17(r.slope) << ',' << format_g17(r.bound) << ','
        << format_g17(r.reference) << ',' << r.trials << '\n';
  }
  return out.str();
}

std::string bench_table(const BenchReport& report) {
  std::ostringstream out;
  out << "accuracy benchmark: mode=" << report.mode
      << " dim=" << report.dim << " seed=" << report.seed;
  if (report.epsilon > 0.0) out << " epsilon=" << format_g17(report.epsilon);
  out << "\n";
  out << "fitted log-log slope: " << format_fixed(report.slope, 4) << " +/- "
      << format_fixed(2.0 * report.slope_stderr, 4) << " (2 se)\n";
  if (report.envelope_mean > 0.0) {
    out << "envelope constant: mean " << format_fixed(report.envelope_mean, 4)
        << " range [" << format_fixed(report.envelope_min, 4) << ", "
        << format_fixed(report.envelope_max, 4) << "]\n";
  }
  out << "mean above reference curve: "
      << (report.mean_above_reference ? "yes" : "no") << "\n";
  out << pad_left(report.param_name, 10) << pad_left("mean_w1", 12)
      << pad_left("stddev", 12) << pad_left("stderr", 12)
      << pad_left("bound", 12) << pad_left("reference", 12)
      << pad_left("trials", 8) << "\n";
  for (const BenchRow& r : report.rows) {
    out << pad_left(format_fixed(r.param, 0), 10)
        << pad_left(format_fixed(r.mean_w1, 6), 12)
        << pad_left(format_fixed(r.stddev, 6), 12)
        << pad_left(format_fixed(r.stderror, 6), 12)
        << pad_left(format_fixed(r.bound, 4), 12)
        << pad_left(format_fixed(r.reference, 6), 12)
        << pad_left(std::to_string(r.trials), 8) << "\n";
  }
  return out.str();
}

std::string bench_json(const BenchReport& report) {
  json doc;
  doc["schema_version"] = 1;
  doc["kind"] = "accuracy_benchmark";
  doc["mode"] = report.mode;
  doc["param"] = report.param_name;
  doc["dim"] = report.dim;
  doc["seed"] = report.seed;
  if (report.epsilon > 0.0) doc["epsilon"] = report.epsilon;
  doc["slope"] = report.slope;
  doc["slope_stderr"] = report.slope_stderr;
  doc["envelope"] = {{"mean", report.envelope_mean},
                     {"min", report.envelope_min},
                     {"max", report.envelope_max}};
  doc["mean_above_reference"] = report.mean_above_reference;
  json rows = json::array();
  for (const BenchRow& r : report.rows) {
    rows.push_back({{"param", r.param},
                    {"mean_w1", r.mean_w1},
                    {"stddev", r.stddev},
                    {"stderr", r.stderror},
                    {"slope", r.slope},
                    {"bound", r.bound},
                    {"reference", r.reference},
                    {"trials", r.trials}});
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string walk_csv(const WalkReport& report) {
  std::ostringstream out;
  out << "n,sr_mean,sr_sd,sr_ratio_log2n,sr_ratio_se,iid_mean,iid_sd,"
         "iid_ratio_sqrtn,trials\n";
  for (const WalkRow& r : report.rows) {
    out << r.n << ',' << format_g17(r.sr_mean) << ',' << format_g17(r.sr_sd)
        << ',' << format_g17(r.sr_ratio) << ',' << format_g17(r.sr_ratio_se)
        << ',' << format_g17(r.iid_mean) << ',' << format_g17(r.iid_sd) << ','
        << format_g17(r.iid_ratio) << ',' << r.trials << '\n';
  }
  return out.str();
}

std::string walk_table(const WalkReport& report) {
  std::ostringstream out;
  out << "walk growth benchmark: seed=" << report.seed
      << " trials=" << report.trials << "\n";
  out << "multiscale growth factor " << format_fixed(report.growth_sr, 3)
      << ", iid baseline growth factor " << format_fixed(report.growth_iid, 3)
      << " (over the n >= 256 range)\n";
  out << "ratio stat/log^2 n non-increasing within 2 sigma: "
      << (report.ratio_non_increasing ? "yes" : "no") << "\n";
  out << "iid growth >= 3x multiscale growth: "
      << (report.iid_grows_3x ? "yes" : "no") << "\n";
  out << "stat >= (1/8) log n - 2 sigma everywhere: "
      << (report.floor_ok ? "yes" : "no") << "\n";
  out << pad_left("n", 8) << pad_left("stat", 12) << pad_left("stat/log^2", 12)
      << pad_left("iid", 14) << pad_left("iid/sqrt(n)", 12) << "\n";
  for (const WalkRow& r : report.rows) {
    out << pad_left(std::to_string(r.n), 8)
        << pad_left(format_fixed(r.sr_mean, 3), 12)
        << pad_left(format_fixed(r.sr_ratio, 4), 12)
        << pad_left(format_fixed(r.iid_mean, 3), 14)
        << pad_left(format_fixed(r.iid_ratio, 4), 12) << "\n";
  }
  return out.str();
}

std::string walk_json(const WalkReport& report) {
  json doc;
  doc["schema_version"] = 1;
  doc["kind"] = "walk_benchmark";
  doc["seed"] = report.seed;
  doc["trials"] = report.trials;
  doc["growth_sr"] = report.growth_sr;
  doc["growth_iid"] = report.growth_iid;
  doc["ratio_non_increasing"] = report.ratio_non_increasing;
  doc["iid_grows_3x"] = report.iid_grows_3x;
  doc["floor_ok"] = report.floor_ok;
  json rows = json::array();
  for (const WalkRow& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"sr_mean", r.sr_mean},
                    {"sr_sd", r.sr_sd},
                    {"sr_ratio", r.sr_ratio},
                    {"sr_ratio_se", r.sr_ratio_se},
                    {"iid_mean", r.iid_mean},
                    {"iid_sd", r.iid_sd},
                    {"iid_ratio", r.iid_ratio},
                    {"trials", r.trials}});
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string audit_table(const AuditReport& report) {
  std::ostringstream out;
  out << "regularity audit: seed=" << report.seed << " pairs_per_level="
      << report.pairs_per_level << " levels=" << report.level_min << ".."
      << report.level_max << "\n";
  if (report.fault_scale != 1.0) {
    out << "WARNING: fault injection active, scale="
        << format_g17(report.fault_scale) << "\n";
  }
  out << "pairs checked: " << report.pairs_checked << "\n";
  out << "identical-pair gaps exactly zero: "
      << (report.zero_gap_exact ? "yes" : "no") << "\n";
  out << "violations: " << report.violations << "\n";
  for (const AuditWitness& w : report.witnesses) {
    out << "  witness: L=" << w.levels << " pair=" << w.pair_index
        << " dist=" << format_g17(w.dist) << " gap=" << format_g17(w.gap)
        << " excess=" << format_g17(w.excess) << "\n";
  }
  out << (report.violations == 0 && report.zero_gap_exact ? "PASS" : "FAIL")
      << "\n";
  return out.str();
}

std::string audit_json(const AuditReport& report) {
  json doc;
  doc["schema_version"] = 1;
  doc["kind"] = "regularity_audit";
  doc["seed"] = report.seed;
  doc["pairs_per_level"] = report.pairs_per_level;
  doc["level_min"] = report.level_min;
  doc["level_max"] = report.level_max;
  doc["fault_scale"] = report.fault_scale;
  doc["pairs_checked"] = report.pairs_checked;
  doc["violations"] = report.violations;
  doc["zero_gap_exact"] = report.zero_gap_exact;
  json ws = json::array();
  for (const AuditWitness& w : report.witnesses) {
    ws.push_back({{"levels", w.levels},
                  {"pair_index", w.pair_index},
                  {"dist", w.dist},
                  {"gap", w.gap},
                  {"excess", w.excess}});
  }
  doc["witnesses"] = std::move(ws);
  doc["pass"] = report.violations == 0 && report.zero_gap_exact;
  return doc.dump(2) + "\n";
}

}  // namespace privm::tools
