#include "bci/bench.hpp"

#include <cstdio>

#include "bci/errors.hpp"
#include "bci/parallel.hpp"
#include "bci/table_io.hpp"

namespace bci {

namespace {

std::string pair_id(int index) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%04d", index);
  return buffer;
}

std::map<std::string, std::string> synthetic_config_echo(
    const SyntheticSuiteConfig& cfg) {
  std::map<std::string, std::string> echo;
  echo["n_pairs"] = std::to_string(cfg.n_pairs);
  echo["forward.n_bins"] = std::to_string(cfg.forward.n_bins);
  echo["forward.target_samples"] = std::to_string(cfg.forward.target_samples);
  echo["forward.noise_variance"] = format_double(cfg.forward.noise_variance);
  echo["forward.beta_amplitude"] =
      format_double(cfg.forward.beta_spectrum.amplitude());
  echo["forward.beta_exponent"] =
      format_double(cfg.forward.beta_spectrum.exponent());
  echo["forward.f_amplitude"] =
      format_double(cfg.forward.f_spectrum.amplitude());
  echo["forward.f_exponent"] = format_double(cfg.forward.f_spectrum.exponent());
  echo["inference.n_bins"] = std::to_string(cfg.inference.grid.n_bins());
  echo["inference.noise_variance"] =
      format_double(cfg.inference.noise_variance);
  echo["inference.rho"] = format_double(cfg.inference.rho);
  echo["inference.beta_amplitude"] =
      format_double(cfg.inference.beta_spectrum.amplitude());
  echo["inference.beta_exponent"] =
      format_double(cfg.inference.beta_spectrum.exponent());
  echo["inference.f_amplitude"] =
      format_double(cfg.inference.f_spectrum.amplitude());
  echo["inference.f_exponent"] =
      format_double(cfg.inference.f_spectrum.exponent());
  return echo;
}

}  // namespace

AccuracyReport run_synthetic_suite(const SyntheticSuiteConfig& cfg) {
  if (cfg.n_pairs < 1) throw Error("run_synthetic_suite: n_pairs must be >= 1");

  const InferenceEngine engine(cfg.inference);
  std::vector<PairOutcome> outcomes(cfg.n_pairs);

  parallel_for(cfg.n_pairs, cfg.threads, [&](int i) {
    PairOutcome& outcome = outcomes[i];
    outcome.id = pair_id(i);
    outcome.weight = 1.0;
    try {
      ForwardConfig forward = cfg.forward;
      forward.seed = derive_seed(cfg.master_seed, i);
      const LabeledPair pair = sample_pair(forward);
      outcome.truth = pair.true_direction;
      outcome.n_samples = static_cast<int>(pair.x.size());
      const InferenceResult result = engine.infer(pair.x, pair.y);
      outcome.decision = result.decided_direction;
      outcome.log_odds = result.log_odds;
      outcome.correct = outcome.decision == outcome.truth;
    } catch (const Error& e) {
      outcome.failed = true;
      outcome.error = e.what();
      outcome.correct = false;
    }
  });

  return assemble_report(std::move(outcomes), cfg.master_seed,
                         synthetic_config_echo(cfg));
}

}  // namespace bci
