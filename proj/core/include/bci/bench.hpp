#ifndef BCI_BENCH_HPP
#define BCI_BENCH_HPP

#include <cstdint>

#include "bci/forward_model.hpp"
#include "bci/inference.hpp"
#include "bci/report.hpp"

namespace bci {

/// A synthetic benchmark run: generate n_pairs labeled pairs from the
/// forward model and score the inference engine against the labels.
struct SyntheticSuiteConfig {
  int n_pairs = 100;
  ForwardConfig forward{};
  InferenceConfig inference{};
  std::uint64_t master_seed = 0;
  int threads = 0;  ///< 0 = hardware concurrency
};

/// Runs the suite with per-pair seeds derive_seed(master_seed, i). Pairs are
/// evaluated concurrently; the report is assembled in pair order, so the
/// result is independent of scheduling. Per-pair inference errors are
/// recorded as incorrect-with-flag, not fatal.
AccuracyReport run_synthetic_suite(const SyntheticSuiteConfig& cfg);

}  // namespace bci

#endif  // BCI_BENCH_HPP
