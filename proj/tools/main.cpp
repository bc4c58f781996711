#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "bench.hpp"
#include "io.hpp"
#include "json.hpp"
#include "privm/errors.hpp"
#include "privm/metric_mech.hpp"
#include "privm/rng.hpp"
#include "privm/synth.hpp"
#include "report.hpp"

namespace {

using namespace privm;
using namespace privm::tools;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitAuditViolation = 3;

struct GridRange {
  int lo = 0;
  int hi = 0;
};

GridRange parse_grid(const std::string& text) {
  const size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw argument_error("grid must look like LO:HI (dyadic exponents)");
  }
  GridRange g;
  try {
    g.lo = std::stoi(text.substr(0, colon));
    g.hi = std::stoi(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw argument_error("grid must look like LO:HI (dyadic exponents)");
  }
  if (g.hi < g.lo) {
    throw argument_error("grid upper exponent must be >= lower");
  }
  return g;
}

json diagnostics_json(const MechanismDiagnostics& d) {
  return {{"alpha", d.alpha},          {"delta", d.delta},
          {"tour_length", d.tour_length}, {"mst_length", d.mst_length},
          {"tsp_bound", d.tsp_bound},  {"accuracy_bound", d.accuracy_bound},
          {"net_size", d.net_size}};
}

// Resolves the (alpha | epsilon) exclusive pair against the dataset size.
void resolve_privacy(int n, const std::optional<double>& alpha_opt,
                     const std::optional<double>& epsilon_opt, double* alpha,
                     double* epsilon) {
  if (alpha_opt.has_value() == epsilon_opt.has_value()) {
    throw argument_error("set exactly one of --alpha and --epsilon");
  }
  if (alpha_opt) {
    *alpha = *alpha_opt;
    *epsilon = *alpha_opt / static_cast<double>(n);
  } else {
    *epsilon = *epsilon_opt;
    *alpha = *epsilon_opt * static_cast<double>(n);
  }
  if (!(*alpha > 0.0)) {
    throw argument_error("privacy parameter must be positive");
  }
}

int cmd_synth(const std::string& input, const std::string& format,
              bool matrix, std::optional<double> alpha_opt,
              std::optional<double> epsilon_opt, std::optional<double> delta,
              std::uint64_t seed, const std::string& output,
              const std::string& provenance) {
  IngestedData data = ingest(input, format, matrix);
  double alpha = 0.0, epsilon = 0.0;
  resolve_privacy(static_cast<int>(data.points.size()), alpha_opt,
                  epsilon_opt, &alpha, &epsilon);

  CounterRng rng(seed);
  SyntheticDataset synth =
      dp_synthetic_data(data.space, data.points, epsilon, delta, rng);

  write_file(output, dataset_csv(synth));

  json doc;
  doc["schema_version"] = 1;
  doc["kind"] = "synthetic_data";
  doc["command"] = "synth";
  doc["seed"] = seed;
  doc["input"] = input;
  doc["output"] = output;
  doc["n"] = data.points.size();
  doc["epsilon"] = epsilon;
  doc["alpha"] = synth.provenance.alpha;
  doc["delta"] = synth.provenance.delta;
  doc["m"] = synth.m;
  doc["kappa"] = synth.kappa;
  doc["mechanism"] = diagnostics_json(synth.provenance);
  write_file(provenance, doc.dump(2) + "\n");

  std::cout << "wrote " << synth.m << " synthetic points to " << output
            << " (alpha=" << format_g17(synth.provenance.alpha)
            << ", delta=" << format_g17(synth.provenance.delta)
            << ", tour=" << format_g17(synth.provenance.tour_length) << ")\n";
  return kExitOk;
}

int cmd_privatize(const std::string& input, const std::string& format,
                  bool matrix, std::optional<double> alpha_opt,
                  std::optional<double> epsilon_opt,
                  std::optional<double> delta, std::uint64_t seed,
                  const std::string& output, const std::string& provenance) {
  IngestedData data = ingest(input, format, matrix);
  double alpha = 0.0, epsilon = 0.0;
  resolve_privacy(static_cast<int>(data.points.size()), alpha_opt,
                  epsilon_opt, &alpha, &epsilon);

  WeightedMeasure mu = empirical_of(data);
  const double d = delta ? *delta : choose_delta(*data.space, alpha);
  CounterRng rng(seed);
  MetricMechanismResult res = private_measure_metric(mu, alpha, d, rng);

  write_file(output, measure_csv(res.output));

  json doc;
  doc["schema_version"] = 1;
  doc["kind"] = "private_measure";
  doc["command"] = "privatize";
  doc["seed"] = seed;
  doc["input"] = input;
  doc["output"] = output;
  doc["n"] = data.points.size();
  doc["epsilon"] = epsilon;
  doc["alpha"] = res.diagnostics.alpha;
  doc["delta"] = res.diagnostics.delta;
  doc["mechanism"] = diagnostics_json(res.diagnostics);
  write_file(provenance, doc.dump(2) + "\n");

  std::cout << "wrote private measure (" << res.output.support.size()
            << " atoms) to " << output << "\n";
  return kExitOk;
}

int cmd_bench_accuracy(const AccuracyBenchConfig& cfg,
                       const std::string& output,
                       const std::string& provenance) {
  BenchReport report = run_accuracy_bench(cfg);
  std::cout << bench_table(report);
  if (!output.empty()) write_file(output, bench_csv(report));
  if (!provenance.empty()) write_file(provenance, bench_json(report));
  return kExitOk;
}

int cmd_bench_walk(const WalkBenchConfig& cfg, const std::string& output,
                   const std::string& provenance) {
  WalkReport report = run_walk_bench(cfg);
  std::cout << walk_table(report);
  if (!output.empty()) write_file(output, walk_csv(report));
  if (!provenance.empty()) write_file(provenance, walk_json(report));
  return kExitOk;
}

int cmd_audit(const AuditConfig& cfg, const std::string& output) {
  AuditReport report = run_audit(cfg);
  std::cout << audit_table(report);
  if (!output.empty()) write_file(output, audit_json(report));
  return (report.violations == 0 && report.zero_gap_exact)
             ? kExitOk
             : kExitAuditViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metrically private measures and synthetic data"};
  app.require_subcommand(1);

  // ---- synth ----
  auto* synth = app.add_subcommand(
      "synth", "generate a private synthetic dataset from input points");
  std::string sy_input, sy_format = "csv", sy_output = "synthetic.csv",
              sy_prov = "synthetic_provenance.json";
  bool sy_matrix = false;
  std::optional<double> sy_alpha, sy_epsilon, sy_delta;
  std::uint64_t sy_seed = 1;
  synth->add_option("--input", sy_input, "input dataset path")->required();
  synth->add_option("--format", sy_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  synth->add_flag("--matrix", sy_matrix, "input is a distance matrix");
  synth->add_option("--alpha", sy_alpha, "total privacy parameter");
  synth->add_option("--epsilon", sy_epsilon, "per-point privacy parameter");
  synth->add_option("--delta", sy_delta, "net resolution (default: tuned)");
  synth->add_option("--seed", sy_seed, "random seed");
  synth->add_option("--output", sy_output, "synthetic points CSV path");
  synth->add_option("--provenance", sy_prov, "provenance JSON path");

  // ---- privatize ----
  auto* priv = app.add_subcommand(
      "privatize", "privatize the empirical measure of input points");
  std::string pr_input, pr_format = "csv", pr_output = "measure.csv",
              pr_prov = "measure_provenance.json";
  bool pr_matrix = false;
  std::optional<double> pr_alpha, pr_epsilon, pr_delta;
  std::uint64_t pr_seed = 1;
  priv->add_option("--input", pr_input, "input dataset path")->required();
  priv->add_option("--format", pr_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  priv->add_flag("--matrix", pr_matrix, "input is a distance matrix");
  priv->add_option("--alpha", pr_alpha, "total privacy parameter");
  priv->add_option("--epsilon", pr_epsilon, "per-point privacy parameter");
  priv->add_option("--delta", pr_delta, "net resolution (default: tuned)");
  priv->add_option("--seed", pr_seed, "random seed");
  priv->add_option("--output", pr_output, "output measure CSV path");
  priv->add_option("--provenance", pr_prov, "provenance JSON path");

  // ---- bench-accuracy ----
  auto* bacc = app.add_subcommand(
      "bench-accuracy", "transport-error scaling sweep with reports");
  AccuracyBenchConfig acfg;
  std::string ba_grid, ba_output, ba_prov;
  auto* ba_mode =
      bacc->add_option("--mode", acfg.mode, "interval, cube, or synth")
          ->check(CLI::IsMember({"interval", "cube", "synth"}));
  bacc->add_option("--dim", acfg.dim, "dimension for cube/synth (default 2)");
  bacc->add_option("--grid", ba_grid,
                   "dyadic exponent range LO:HI (default 4:10, synth 8:14)");
  auto* ba_trials =
      bacc->add_option("--trials", acfg.trials, "trials per grid point");
  bacc->add_option("--epsilon", acfg.epsilon,
                   "per-point privacy parameter (synth mode)");
  bacc->add_option("--sites", acfg.sites, "random input support size");
  bacc->add_option("--seed", acfg.seed, "random seed");
  bacc->add_option("--output", ba_output, "report CSV path");
  bacc->add_option("--provenance", ba_prov, "report JSON path");

  // ---- bench-walk ----
  auto* bwalk = app.add_subcommand(
      "bench-walk", "running-maximum growth of the noise walk vs i.i.d.");
  WalkBenchConfig wcfg;
  std::string bw_grid, bw_output, bw_prov;
  bwalk->add_option("--grid", bw_grid,
                    "dyadic exponent range LO:HI (default 6:14)");
  bwalk->add_option("--trials", wcfg.trials, "trials per grid point");
  bwalk->add_option("--seed", wcfg.seed, "random seed");
  bwalk->add_option("--output", bw_output, "report CSV path");
  bwalk->add_option("--provenance", bw_prov, "report JSON path");

  // ---- audit-regularity ----
  auto* audit = app.add_subcommand(
      "audit-regularity", "sampled check of the noise log-density bound");
  AuditConfig ucfg;
  std::string au_levels, au_output;
  audit->add_option("--pairs", ucfg.pairs, "pairs per level");
  audit->add_option("--levels", au_levels, "level range LO:HI (default 1:12)");
  audit->add_option("--seed", ucfg.seed, "random seed");
  audit->add_option("--output", au_output, "report JSON path");
  // Hidden hook so the negative control can prove the audit detects
  // violations: multiplies every measured gap.
  audit->add_option("--inject-scale-fault", ucfg.fault_scale, "")->group("");

  try {
    app.parse(argc, argv);

    if (synth->parsed()) {
      return cmd_synth(sy_input, sy_format, sy_matrix, sy_alpha, sy_epsilon,
                       sy_delta, sy_seed, sy_output, sy_prov);
    }
    if (priv->parsed()) {
      return cmd_privatize(pr_input, pr_format, pr_matrix, pr_alpha,
                           pr_epsilon, pr_delta, pr_seed, pr_output, pr_prov);
    }
    if (bacc->parsed()) {
      if (ba_mode->count() == 0) acfg.mode = "interval";
      if (acfg.mode == "interval") acfg.dim = 1;
      if (ba_grid.empty()) {
        acfg.grid_lo = acfg.mode == "synth" ? 8 : 4;
        acfg.grid_hi = acfg.mode == "synth" ? 14 : 10;
      } else {
        const GridRange g = parse_grid(ba_grid);
        acfg.grid_lo = g.lo;
        acfg.grid_hi = g.hi;
      }
      if (ba_trials->count() == 0 && acfg.mode == "synth") acfg.trials = 64;
      return cmd_bench_accuracy(acfg, ba_output, ba_prov);
    }
    if (bwalk->parsed()) {
      if (!bw_grid.empty()) {
        const GridRange g = parse_grid(bw_grid);
        wcfg.grid_lo = g.lo;
        wcfg.grid_hi = g.hi;
      }
      return cmd_bench_walk(wcfg, bw_output, bw_prov);
    }
    if (audit->parsed()) {
      if (!au_levels.empty()) {
        const GridRange g = parse_grid(au_levels);
        ucfg.level_min = g.lo;
        ucfg.level_max = g.hi;
      }
      return cmd_audit(ucfg, au_output);
    }
    return kExitValidation;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const argument_error& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kExitValidation;
  } catch (const resource_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
