#include "bci/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "bci/table_io.hpp"

namespace bci {

double weighted_accuracy(const std::vector<PairOutcome>& pairs) {
  double weight_sum = 0.0;
  double correct_sum = 0.0;
  for (const auto& p : pairs) {
    weight_sum += p.weight;
    if (p.correct) correct_sum += p.weight;
  }
  return weight_sum > 0.0 ? correct_sum / weight_sum : 0.0;
}

double unweighted_accuracy(const std::vector<PairOutcome>& pairs) {
  if (pairs.empty()) return 0.0;
  int correct = 0;
  for (const auto& p : pairs) correct += p.correct ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(pairs.size());
}

AccuracyReport assemble_report(std::vector<PairOutcome> pairs,
                               std::uint64_t seed,
                               std::map<std::string, std::string> config_echo) {
  AccuracyReport report;
  report.pairs = std::move(pairs);
  report.weighted_accuracy = weighted_accuracy(report.pairs);
  report.unweighted_accuracy = unweighted_accuracy(report.pairs);
  report.n_failed = 0;
  for (const auto& p : report.pairs) report.n_failed += p.failed ? 1 : 0;
  report.seed = seed;
  report.config_echo = std::move(config_echo);
  return report;
}

std::string report_to_json(const AccuracyReport& report) {
  nlohmann::json doc;
  doc["schema"] = "bci.accuracy_report.v1";
  doc["seed"] = report.seed;
  doc["repeats"] = report.repeats;
  doc["n_failed"] = report.n_failed;
  doc["weighted_accuracy"] = report.weighted_accuracy;
  doc["unweighted_accuracy"] = report.unweighted_accuracy;
  doc["config"] = report.config_echo;

  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : report.pairs) {
    nlohmann::json row;
    row["id"] = p.id;
    row["truth"] = to_string(p.truth);
    row["decision"] = p.failed ? "" : to_string(p.decision);
    row["log_odds"] = p.log_odds;
    row["correct"] = p.correct;
    row["failed"] = p.failed;
    row["error"] = p.error;
    row["weight"] = p.weight;
    row["n_samples"] = p.n_samples;
    pairs.push_back(std::move(row));
  }
  doc["pairs"] = std::move(pairs);
  return doc.dump(2) + "\n";
}

std::string report_to_table(const AccuracyReport& report) {
  std::ostringstream out;
  char line[256];

  out << "pair      truth  decision  correct   n        log_odds  weight\n";
  for (const auto& p : report.pairs) {
    std::snprintf(line, sizeof(line), "%-8s  %-5s  %-8s  %-7s  %-7d  %12.4g  %g\n",
                  p.id.c_str(), to_string(p.truth),
                  p.failed ? "FAILED" : to_string(p.decision),
                  p.correct ? "yes" : "no", p.n_samples, p.log_odds, p.weight);
    out << line;
  }
  std::snprintf(line, sizeof(line),
                "pairs %zu  failed %d  repeats %d  seed %llu\n",
                report.pairs.size(), report.n_failed, report.repeats,
                static_cast<unsigned long long>(report.seed));
  out << line;
  std::snprintf(line, sizeof(line),
                "weighted_accuracy %.4f  unweighted_accuracy %.4f\n",
                report.weighted_accuracy, report.unweighted_accuracy);
  out << line;
  return out.str();
}

}  // namespace bci
