#ifndef BCI_REPORT_HPP
#define BCI_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bci/direction.hpp"

namespace bci {

/// Outcome of one benchmark pair. Failed inferences keep correct == false
/// and carry the error message.
struct PairOutcome {
  std::string id;
  Direction truth = Direction::x_to_y;
  Direction decision = Direction::y_to_x;
  double log_odds = 0.0;
  bool failed = false;
  std::string error;
  bool correct = false;
  double weight = 1.0;
  int n_samples = 0;
};

/// Aggregate benchmark result: per-pair outcomes ordered by id plus the
/// weighted and unweighted accuracies. For repeated subsampling runs the
/// accuracies are means over the repeats and the per-pair entries come from
/// the first repeat.
struct AccuracyReport {
  std::vector<PairOutcome> pairs;
  double weighted_accuracy = 0.0;
  double unweighted_accuracy = 0.0;
  int n_failed = 0;
  int repeats = 1;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> config_echo;
};

/// sum_i w_i correct_i / sum_i w_i; 0 when all weights vanish.
double weighted_accuracy(const std::vector<PairOutcome>& pairs);

/// Fraction of correct decisions (failures count as incorrect).
double unweighted_accuracy(const std::vector<PairOutcome>& pairs);

/// Fills the accuracy fields of a report from its pair outcomes.
AccuracyReport assemble_report(std::vector<PairOutcome> pairs,
                               std::uint64_t seed,
                               std::map<std::string, std::string> config_echo);

/// JSON document with every reported number round-tripping exactly.
std::string report_to_json(const AccuracyReport& report);

/// Aligned-column text table of the per-pair outcomes and the accuracy
/// summary.
std::string report_to_table(const AccuracyReport& report);

}  // namespace bci

#endif  // BCI_REPORT_HPP
