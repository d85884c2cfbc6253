#ifndef BCI_TCEP_HPP
#define BCI_TCEP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bci/direction.hpp"
#include "bci/inference.hpp"
#include "bci/report.hpp"

namespace bci {

/// One admitted cause-effect pair from a pair-collection directory. The
/// designated cause column is stored as x, so ground_truth is X->Y by
/// construction.
struct TcepPairRecord {
  std::string id;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  Direction ground_truth = Direction::x_to_y;
  double weight = 1.0;
};

struct TcepLoadStats {
  int admitted = 0;
  int excluded_multidim = 0;  ///< pairs with a multi-dimensional cause or effect
  int skipped_rows = 0;       ///< non-numeric or ragged data rows
};

struct TcepCollection {
  std::vector<TcepPairRecord> records;
  TcepLoadStats stats;
};

/// Loads a pair collection from a directory containing per-pair numeric
/// files pair<id>.txt and a metadata file pairmeta.txt with one line per
/// pair: id, cause column start/end, effect column start/end, weight
/// (1-based inclusive column ranges, '#' comments allowed). Only pairs with
/// one-dimensional cause and effect are admitted. Pairs longer than
/// subsample_cap are uniformly subsampled without replacement, seeded per
/// pair with derive_seed(seed, admitted index).
TcepCollection load_tcep(const std::string& directory, int subsample_cap,
                         std::uint64_t seed);

/// Keeps `cap` joint samples of (x, y), chosen uniformly without
/// replacement in original order; returns the record unchanged when it is
/// already short enough.
TcepPairRecord subsample_record(const TcepPairRecord& record, int cap,
                                std::uint64_t seed);

/// Scores the engine on the records with maintainer weights. When a record
/// exceeds per_pair_cap it is independently re-subsampled in every repeat;
/// the reported accuracies are means over the repeats and the per-pair
/// entries come from the first repeat.
AccuracyReport run_tcep_suite(const std::vector<TcepPairRecord>& records,
                              const InferenceConfig& config, int repeats,
                              int per_pair_cap, std::uint64_t seed,
                              int threads = 0);

}  // namespace bci

#endif  // BCI_TCEP_HPP
