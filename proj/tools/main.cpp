// Command-line front end: generate synthetic cause-effect pairs, decide the
// causal direction of a two-column dataset, and run the benchmark suites.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bci/bench.hpp"
#include "bci/covariance.hpp"
#include "bci/errors.hpp"
#include "bci/field_sampler.hpp"
#include "bci/forward_model.hpp"
#include "bci/inference.hpp"
#include "bci/report.hpp"
#include "bci/table_io.hpp"
#include "bci/tcep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ModelOptions {
  int n_bins = 512;
  double beta_amplitude = 1e6;
  double beta_exponent = 4.0;
  double f_amplitude = 1000.0;
  double f_exponent = 4.0;
  double noise_variance = 0.01;
  double rho = 1.0;
  int kernel_modes = 0;  // 0 = n_bins
  std::uint64_t seed = 0;
};

void add_model_flags(CLI::App* cmd, ModelOptions* opt) {
  cmd->add_option("--n-bins", opt->n_bins, "Grid bins on [0,1]")
      ->check(CLI::Range(2, 1 << 16))
      ->capture_default_str();
  cmd->add_option("--beta-amplitude", opt->beta_amplitude,
                  "Cause-field spectrum amplitude")
      ->capture_default_str();
  cmd->add_option("--beta-exponent", opt->beta_exponent,
                  "Cause-field spectrum exponent")
      ->capture_default_str();
  cmd->add_option("--f-amplitude", opt->f_amplitude,
                  "Effect-curve spectrum amplitude")
      ->capture_default_str();
  cmd->add_option("--f-exponent", opt->f_exponent,
                  "Effect-curve spectrum exponent")
      ->capture_default_str();
  cmd->add_option("--noise-variance", opt->noise_variance,
                  "Observation noise variance")
      ->capture_default_str();
  cmd->add_option("--rho", opt->rho, "Poisson intensity scale")
      ->capture_default_str();
  cmd->add_option("--kernel-modes", opt->kernel_modes,
                  "Cosine kernel truncation (0 = n-bins)")
      ->capture_default_str();
  cmd->add_option("--seed", opt->seed, "Random seed")->capture_default_str();
}

bci::InferenceConfig make_inference_config(const ModelOptions& opt) {
  bci::InferenceConfig cfg;
  cfg.grid = bci::GridConfig(opt.n_bins);
  cfg.beta_spectrum = bci::PowerSpectrum(opt.beta_amplitude, opt.beta_exponent);
  cfg.f_spectrum = bci::PowerSpectrum(opt.f_amplitude, opt.f_exponent);
  cfg.noise_variance = opt.noise_variance;
  cfg.rho = opt.rho;
  if (opt.kernel_modes > 0) cfg.kernel_modes = opt.kernel_modes;
  return cfg;
}

char parse_delimiter(const std::string& name) {
  if (name == "auto") return '\0';
  if (name == "tab") return '\t';
  if (name == "comma") return ',';
  if (name == "space") return ' ';
  throw bci::Error("unknown delimiter: " + name);
}

/// Prints to stdout and mirrors into the optional output file.
void emit(const std::string& content, const std::string& output_path) {
  std::cout << content;
  if (!output_path.empty()) {
    std::ofstream out(output_path);
    if (!out) throw bci::IoError("cannot write output file: " + output_path);
    out << content;
  }
}

json breakdown_to_json(const bci::HamiltonianBreakdown& b) {
  json cause;
  cause["half_logdet"] = b.cause.terms.half_logdet;
  cause["log_k_factorial"] = b.cause.terms.log_k_factorial;
  cause["minus_k_beta"] = b.cause.terms.minus_k_beta;
  cause["rho_exp"] = b.cause.terms.rho_exp;
  cause["prior_quad"] = b.cause.terms.prior_quad;
  cause["total"] = b.cause.total;
  cause["newton_iterations"] = b.cause.iterations;
  json effect;
  effect["half_logdet"] = b.effect.half_logdet;
  effect["quad"] = b.effect.quad;
  effect["gauss_const"] = b.effect.gauss_const;
  effect["total"] = b.effect.total;
  json out;
  out["cause"] = std::move(cause);
  out["effect"] = std::move(effect);
  out["total"] = b.direction_total;
  return out;
}

json model_echo(const ModelOptions& opt) {
  json echo;
  echo["n_bins"] = opt.n_bins;
  echo["beta_amplitude"] = opt.beta_amplitude;
  echo["beta_exponent"] = opt.beta_exponent;
  echo["f_amplitude"] = opt.f_amplitude;
  echo["f_exponent"] = opt.f_exponent;
  echo["noise_variance"] = opt.noise_variance;
  echo["rho"] = opt.rho;
  echo["kernel_modes"] = opt.kernel_modes > 0 ? opt.kernel_modes : opt.n_bins;
  echo["seed"] = opt.seed;
  return echo;
}

std::string infer_to_tsv(const bci::InferenceResult& r) {
  using bci::format_double;
  const auto& xy = r.breakdown_xy;
  const auto& yx = r.breakdown_yx;
  std::string out;
  out += "direction\t" + std::string(bci::to_string(r.decided_direction)) + "\n";
  out += "log_odds\t" + format_double(r.log_odds) + "\n";
  out += "term\tX->Y\tY->X\n";
  auto row = [&](const char* name, double a, double b) {
    out += std::string(name) + "\t" + format_double(a) + "\t" +
           format_double(b) + "\n";
  };
  row("cause_half_logdet", xy.cause.terms.half_logdet,
      yx.cause.terms.half_logdet);
  row("cause_log_k_factorial", xy.cause.terms.log_k_factorial,
      yx.cause.terms.log_k_factorial);
  row("cause_minus_k_beta", xy.cause.terms.minus_k_beta,
      yx.cause.terms.minus_k_beta);
  row("cause_rho_exp", xy.cause.terms.rho_exp, yx.cause.terms.rho_exp);
  row("cause_prior_quad", xy.cause.terms.prior_quad, yx.cause.terms.prior_quad);
  row("cause_total", xy.cause.total, yx.cause.total);
  row("effect_half_logdet", xy.effect.half_logdet, yx.effect.half_logdet);
  row("effect_quad", xy.effect.quad, yx.effect.quad);
  row("effect_gauss_const", xy.effect.gauss_const, yx.effect.gauss_const);
  row("effect_total", xy.effect.total, yx.effect.total);
  row("direction_total", xy.direction_total, yx.direction_total);
  return out;
}

int cmd_infer(const std::string& input, const std::string& delimiter,
              const ModelOptions& model, const std::string& format,
              const std::string& output) {
  const auto [x, y] = bci::read_pair_file(input, parse_delimiter(delimiter));
  const bci::InferenceResult result =
      bci::infer_direction(x, y, make_inference_config(model));

  if (format == "json") {
    json doc;
    doc["schema"] = "bci.inference.v1";
    doc["direction"] = bci::to_string(result.decided_direction);
    doc["log_odds"] = result.log_odds;
    doc["breakdowns"]["x_to_y"] = breakdown_to_json(result.breakdown_xy);
    doc["breakdowns"]["y_to_x"] = breakdown_to_json(result.breakdown_yx);
    doc["config"] = model_echo(model);
    doc["n_samples"] = x.size();
    emit(doc.dump(2) + "\n", output);
  } else {
    emit(infer_to_tsv(result), output);
  }
  return 0;
}

int cmd_generate(const std::string& output_dir, int n_pairs,
                 const ModelOptions& model, int target_samples) {
  fs::create_directories(output_dir);

  const std::string manifest =
      "# config: n_bins=" + std::to_string(model.n_bins) +
      " target_samples=" + std::to_string(target_samples) +
      " noise_variance=" + bci::format_double(model.noise_variance) +
      " beta_amplitude=" + bci::format_double(model.beta_amplitude) +
      " beta_exponent=" + bci::format_double(model.beta_exponent) +
      " f_amplitude=" + bci::format_double(model.f_amplitude) +
      " f_exponent=" + bci::format_double(model.f_exponent) +
      " seed=" + std::to_string(model.seed) +
      " n_pairs=" + std::to_string(n_pairs) + "\n";
  std::string labels = manifest;
  labels += "pair\ttrue_direction\tn_samples\n";

  for (int i = 0; i < n_pairs; ++i) {
    bci::ForwardConfig cfg;
    cfg.beta_spectrum =
        bci::PowerSpectrum(model.beta_amplitude, model.beta_exponent);
    cfg.f_spectrum = bci::PowerSpectrum(model.f_amplitude, model.f_exponent);
    cfg.noise_variance = model.noise_variance;
    cfg.n_bins = model.n_bins;
    cfg.target_samples = target_samples;
    cfg.seed = bci::derive_seed(model.seed, i);
    const bci::LabeledPair pair = bci::sample_pair(cfg);

    char id[16];
    std::snprintf(id, sizeof(id), "%04d", i + 1);
    const fs::path pair_path =
        fs::path(output_dir) / ("pair" + std::string(id) + ".tsv");
    std::ofstream out(pair_path);
    if (!out) throw bci::IoError("cannot write " + pair_path.string());
    out << "# two-column sample data; labels in labels.tsv\n";
    for (Eigen::Index r = 0; r < pair.x.size(); ++r)
      out << bci::format_double(pair.x[r]) << "\t"
          << bci::format_double(pair.y[r]) << "\n";

    labels += std::string(id) + "\t" + bci::to_string(pair.true_direction) +
              "\t" + std::to_string(pair.x.size()) + "\n";
  }

  const fs::path labels_path = fs::path(output_dir) / "labels.tsv";
  std::ofstream out(labels_path);
  if (!out) throw bci::IoError("cannot write " + labels_path.string());
  out << labels;
  std::cout << "wrote " << n_pairs << " pair files and labels.tsv to "
            << output_dir << "\n";
  return 0;
}

int cmd_sample_fields(const ModelOptions& model, int n_samples,
                      const std::string& output) {
  const bci::GridConfig grid(model.n_bins);
  const auto cov = bci::build_grid_covariance(
      bci::PowerSpectrum(model.beta_amplitude, model.beta_exponent), grid);

  std::vector<Eigen::VectorXd> fields, densities;
  for (int s = 0; s < n_samples; ++s) {
    Eigen::VectorXd beta =
        bci::sample_field(cov, bci::derive_seed(model.seed, s));
    // normalized intensity e^{beta_j} / sum_l e^{beta_l}
    Eigen::VectorXd density = (beta.array() - beta.maxCoeff()).exp();
    density /= density.sum();
    fields.push_back(std::move(beta));
    densities.push_back(std::move(density));
  }

  std::string out = "# field samples: n_bins=" + std::to_string(model.n_bins) +
                    " amplitude=" + bci::format_double(model.beta_amplitude) +
                    " exponent=" + bci::format_double(model.beta_exponent) +
                    " n_samples=" + std::to_string(n_samples) +
                    " seed=" + std::to_string(model.seed) + "\n";
  out += "z";
  for (int s = 0; s < n_samples; ++s) {
    out += "\tbeta_" + std::to_string(s + 1);
    out += "\tdensity_" + std::to_string(s + 1);
  }
  out += "\n";
  for (int j = 0; j < model.n_bins; ++j) {
    out += bci::format_double(grid.midpoint(j));
    for (int s = 0; s < n_samples; ++s) {
      out += "\t" + bci::format_double(fields[s][j]);
      out += "\t" + bci::format_double(densities[s][j]);
    }
    out += "\n";
  }
  emit(out, output);
  return 0;
}

struct SweepRow {
  std::string label;
  bci::AccuracyReport report;
};

std::string rows_to_table(const std::vector<SweepRow>& rows) {
  std::string out =
      "row                       pairs  accuracy  weighted  failed\n";
  char line[160];
  for (const auto& row : rows) {
    std::snprintf(line, sizeof(line), "%-24s  %5zu  %8.4f  %8.4f  %6d\n",
                  row.label.c_str(), row.report.pairs.size(),
                  row.report.unweighted_accuracy, row.report.weighted_accuracy,
                  row.report.n_failed);
    out += line;
  }
  return out;
}

std::string rows_to_json(const char* schema, const std::vector<SweepRow>& rows) {
  json doc;
  doc["schema"] = schema;
  json array = json::array();
  for (const auto& row : rows) {
    json entry;
    entry["label"] = row.label;
    entry["report"] = json::parse(bci::report_to_json(row.report));
    array.push_back(std::move(entry));
  }
  doc["rows"] = std::move(array);
  return doc.dump(2) + "\n";
}

int cmd_bench_synthetic(const ModelOptions& model, int n_pairs,
                        int target_samples, double data_noise, int data_bins,
                        const std::vector<double>& noise_list,
                        const std::vector<int>& bins_list,
                        const std::vector<int>& samples_list, int threads,
                        const std::string& format, const std::string& output) {
  bci::SyntheticSuiteConfig base;
  base.n_pairs = n_pairs;
  base.forward.noise_variance = data_noise;
  base.forward.n_bins = data_bins;
  base.forward.target_samples = target_samples;
  base.inference = make_inference_config(model);
  base.master_seed = model.seed;
  base.threads = threads;

  std::vector<SweepRow> rows;
  auto run_row = [&](const std::string& label,
                     const bci::SyntheticSuiteConfig& cfg) {
    rows.push_back(SweepRow{label, bci::run_synthetic_suite(cfg)});
  };

  if (noise_list.empty() && bins_list.empty() && samples_list.empty()) {
    run_row("default", base);
  } else {
    for (double noise : noise_list) {
      auto cfg = base;
      cfg.forward.noise_variance = noise;
      run_row("noise_variance=" + bci::format_double(noise), cfg);
    }
    for (int bins : bins_list) {
      auto cfg = base;
      cfg.forward.n_bins = bins;
      run_row("n_bins=" + std::to_string(bins), cfg);
    }
    for (int samples : samples_list) {
      auto cfg = base;
      cfg.forward.target_samples = samples;
      run_row("target_samples=" + std::to_string(samples), cfg);
    }
  }

  emit(format == "json" ? rows_to_json("bci.bench_synthetic.v1", rows)
                        : rows_to_table(rows),
       output);
  return 0;
}

int cmd_bench_tcep(const ModelOptions& model, std::string data_dir, int cap,
                   int repeats, int threads, const std::string& format,
                   const std::string& output) {
  if (data_dir.empty()) {
    if (const char* env = std::getenv("BCI_TCEP_DIR")) data_dir = env;
  }
  if (data_dir.empty())
    throw bci::IoError(
        "no pair-collection directory: pass --data-dir or set BCI_TCEP_DIR");

  // With repeats the per-repeat subsampling starts from the full datasets;
  // a single run subsamples once at load time.
  const int load_cap = repeats > 1 ? std::numeric_limits<int>::max() : cap;
  const bci::TcepCollection collection =
      bci::load_tcep(data_dir, load_cap, model.seed);
  if (collection.records.empty())
    throw bci::IoError("no admitted pairs in " + data_dir);

  bci::AccuracyReport report =
      bci::run_tcep_suite(collection.records, make_inference_config(model),
                          repeats, cap, model.seed, threads);
  report.config_echo["excluded_multidim"] =
      std::to_string(collection.stats.excluded_multidim);
  report.config_echo["skipped_rows"] =
      std::to_string(collection.stats.skipped_rows);

  std::vector<SweepRow> rows;
  rows.push_back(SweepRow{"tcep cap=" + std::to_string(cap) +
                              " repeats=" + std::to_string(repeats),
                          std::move(report)});
  emit(format == "json"
           ? rows_to_json("bci.bench_tcep.v1", rows)
           : rows_to_table(rows) + bci::report_to_table(rows.front().report),
       output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian bivariate causal direction inference"};
  app.require_subcommand(1);

  std::function<int()> runner;

  // ---- infer ----------------------------------------------------------
  auto* infer = app.add_subcommand(
      "infer", "Decide the causal direction of a two-column file");
  static std::string infer_input, infer_delim = "auto", infer_format = "tsv",
                     infer_output;
  static ModelOptions infer_model;
  infer->add_option("input", infer_input, "Two-column numeric file")
      ->required();
  infer->add_option("--delimiter", infer_delim, "auto|tab|comma|space")
      ->check(CLI::IsMember({"auto", "tab", "comma", "space"}))
      ->capture_default_str();
  infer->add_option("--format", infer_format, "tsv|json")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  infer->add_option("--output", infer_output, "Mirror the report to a file");
  add_model_flags(infer, &infer_model);
  infer->callback([&] {
    runner = [] {
      return cmd_infer(infer_input, infer_delim, infer_model, infer_format,
                       infer_output);
    };
  });

  // ---- generate -------------------------------------------------------
  auto* generate = app.add_subcommand(
      "generate", "Sample labeled pairs from the forward model");
  static std::string generate_dir;
  static int generate_pairs = 1, generate_target = 300;
  static ModelOptions generate_model;
  generate_model.noise_variance = 0.05;  // generation defaults (not inference)
  generate_model.beta_amplitude = 1.0;
  generate_model.f_amplitude = 1.0;
  generate->add_option("--output-dir", generate_dir, "Output directory")
      ->required();
  generate->add_option("--n-pairs", generate_pairs, "Number of pairs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate
      ->add_option("--target-samples", generate_target,
                   "Expected samples per pair")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_model_flags(generate, &generate_model);
  generate->callback([&] {
    runner = [] {
      return cmd_generate(generate_dir, generate_pairs, generate_model,
                          generate_target);
    };
  });

  // ---- sample-fields ---------------------------------------------------
  auto* fields = app.add_subcommand(
      "sample-fields",
      "Emit field samples and normalized densities for plotting");
  static int fields_samples = 3;
  static std::string fields_output;
  static ModelOptions fields_model;
  fields_model.beta_amplitude = 1000.0;  // plotting aid, moderate scale
  fields->add_option("--n-samples", fields_samples, "Fields to draw")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fields->add_option("--output", fields_output, "Mirror the TSV to a file");
  add_model_flags(fields, &fields_model);
  fields->callback([&] {
    runner = [] {
      return cmd_sample_fields(fields_model, fields_samples, fields_output);
    };
  });

  // ---- bench-synthetic -------------------------------------------------
  auto* bench_syn = app.add_subcommand(
      "bench-synthetic", "Accuracy on forward-model data, with sweeps");
  static int syn_pairs = 100, syn_target = 300, syn_bins = 512, syn_threads = 0;
  static double syn_noise = 0.05;
  static std::vector<double> syn_noise_list;
  static std::vector<int> syn_bins_list, syn_samples_list;
  static std::string syn_format = "tsv", syn_output;
  static ModelOptions syn_model;
  bench_syn->add_option("--n-pairs", syn_pairs, "Pairs per sweep point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_syn
      ->add_option("--target-samples", syn_target,
                   "Expected samples per generated pair")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_syn
      ->add_option("--data-noise-variance", syn_noise,
                   "Noise variance used for generation")
      ->capture_default_str();
  bench_syn
      ->add_option("--data-n-bins", syn_bins, "Grid bins used for generation")
      ->check(CLI::Range(2, 1 << 16))
      ->capture_default_str();
  bench_syn
      ->add_option("--noise-list", syn_noise_list,
                   "Sweep values for the generation noise variance")
      ->delimiter(',');
  bench_syn
      ->add_option("--bins-list", syn_bins_list,
                   "Sweep values for the generation bins")
      ->delimiter(',');
  bench_syn
      ->add_option("--samples-list", syn_samples_list,
                   "Sweep values for the target sample count")
      ->delimiter(',');
  bench_syn->add_option("--threads", syn_threads, "Worker threads (0 = auto)")
      ->capture_default_str();
  bench_syn->add_option("--format", syn_format, "tsv|json")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  bench_syn->add_option("--output", syn_output, "Mirror the report to a file");
  add_model_flags(bench_syn, &syn_model);
  bench_syn->callback([&] {
    runner = [] {
      return cmd_bench_synthetic(syn_model, syn_pairs, syn_target, syn_noise,
                                 syn_bins, syn_noise_list, syn_bins_list,
                                 syn_samples_list, syn_threads, syn_format,
                                 syn_output);
    };
  });

  // ---- bench-tcep ------------------------------------------------------
  auto* bench_tcep = app.add_subcommand(
      "bench-tcep", "Weighted accuracy on a cause-effect pair collection");
  static std::string tcep_dir, tcep_format = "tsv", tcep_output;
  static int tcep_cap = 500, tcep_repeats = 1, tcep_threads = 0;
  static ModelOptions tcep_model;
  bench_tcep->add_option(
      "--data-dir", tcep_dir,
      "Pair-collection directory (default: env BCI_TCEP_DIR)");
  bench_tcep->add_option("--cap", tcep_cap, "Subsample cap per pair")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_tcep
      ->add_option("--repeats", tcep_repeats,
                   "Independent subsamplings to average over")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_tcep->add_option("--threads", tcep_threads, "Worker threads (0 = auto)")
      ->capture_default_str();
  bench_tcep->add_option("--format", tcep_format, "tsv|json")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  bench_tcep->add_option("--output", tcep_output, "Mirror the report to a file");
  add_model_flags(bench_tcep, &tcep_model);
  bench_tcep->callback([&] {
    runner = [] {
      return cmd_bench_tcep(tcep_model, tcep_dir, tcep_cap, tcep_repeats,
                            tcep_threads, tcep_format, tcep_output);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    return runner ? runner() : 0;
  } catch (const bci::DegenerateDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bci::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
