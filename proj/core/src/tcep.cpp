#include "bci/tcep.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "bci/errors.hpp"
#include "bci/forward_model.hpp"
#include "bci/parallel.hpp"
#include "bci/table_io.hpp"

namespace bci {

namespace {

struct MetaLine {
  std::string id;
  int cause_start = 0, cause_end = 0;
  int effect_start = 0, effect_end = 0;
  double weight = 1.0;
};

std::vector<MetaLine> read_metadata(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open metadata file: " + path);

  std::vector<MetaLine> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream row(line);
    MetaLine meta;
    if (!(row >> meta.id)) continue;
    if (meta.id.front() == '#') continue;
    if (!(row >> meta.cause_start >> meta.cause_end >> meta.effect_start >>
          meta.effect_end >> meta.weight))
      throw IoError("malformed metadata line: " + line);
    if (meta.weight < 0.0)
      throw IoError("negative weight in metadata line: " + line);
    lines.push_back(std::move(meta));
  }
  return lines;
}

Eigen::VectorXd select_column(const NumericTable& table, int one_based,
                              const std::string& id) {
  if (one_based < 1 ||
      one_based > static_cast<int>(table.columns.size()))
    throw IoError("pair " + id + ": column index " +
                  std::to_string(one_based) + " out of range");
  return table.columns[one_based - 1];
}

}  // namespace

TcepPairRecord subsample_record(const TcepPairRecord& record, int cap,
                                std::uint64_t seed) {
  const Eigen::Index n = record.x.size();
  if (cap < 1) throw Error("subsample_record: cap must be >= 1");
  if (n <= cap) return record;

  std::vector<Eigen::Index> all(n);
  std::iota(all.begin(), all.end(), Eigen::Index{0});
  std::vector<Eigen::Index> kept;
  kept.reserve(cap);
  std::mt19937_64 engine(seed);
  std::sample(all.begin(), all.end(), std::back_inserter(kept), cap, engine);

  TcepPairRecord out = record;
  out.x.resize(cap);
  out.y.resize(cap);
  for (int i = 0; i < cap; ++i) {
    out.x[i] = record.x[kept[i]];
    out.y[i] = record.y[kept[i]];
  }
  return out;
}

TcepCollection load_tcep(const std::string& directory, int subsample_cap,
                         std::uint64_t seed) {
  if (subsample_cap < 1) throw Error("load_tcep: subsample_cap must be >= 1");
  namespace fs = std::filesystem;
  const fs::path dir(directory);
  const fs::path meta_path = dir / "pairmeta.txt";
  if (!fs::exists(meta_path))
    throw IoError("metadata file not found: " + meta_path.string());

  TcepCollection collection;
  for (const MetaLine& meta : read_metadata(meta_path.string())) {
    const bool one_dimensional = meta.cause_start == meta.cause_end &&
                                 meta.effect_start == meta.effect_end;
    if (!one_dimensional) {
      ++collection.stats.excluded_multidim;
      continue;
    }

    const fs::path data_path = dir / ("pair" + meta.id + ".txt");
    const NumericTable table = read_numeric_table(data_path.string(), ' ');
    collection.stats.skipped_rows += table.skipped_rows;
    if (table.n_rows() < 1)
      throw IoError("pair " + meta.id + ": no numeric rows");

    TcepPairRecord record;
    record.id = meta.id;
    record.x = select_column(table, meta.cause_start, meta.id);
    record.y = select_column(table, meta.effect_start, meta.id);
    record.ground_truth = Direction::x_to_y;
    record.weight = meta.weight;

    const std::uint64_t pair_seed =
        derive_seed(seed, static_cast<std::uint64_t>(collection.records.size()));
    collection.records.push_back(
        subsample_record(record, subsample_cap, pair_seed));
    ++collection.stats.admitted;
  }
  return collection;
}

AccuracyReport run_tcep_suite(const std::vector<TcepPairRecord>& records,
                              const InferenceConfig& config, int repeats,
                              int per_pair_cap, std::uint64_t seed,
                              int threads) {
  if (records.empty()) throw Error("run_tcep_suite: no records");
  if (repeats < 1) throw Error("run_tcep_suite: repeats must be >= 1");
  if (per_pair_cap < 1) throw Error("run_tcep_suite: per_pair_cap must be >= 1");

  const InferenceEngine engine(config);
  const int n = static_cast<int>(records.size());

  std::vector<PairOutcome> first_repeat;
  double weighted_sum = 0.0;
  double unweighted_sum = 0.0;
  int failed_first = 0;

  for (int repeat = 0; repeat < repeats; ++repeat) {
    std::vector<PairOutcome> outcomes(n);
    parallel_for(n, threads, [&](int i) {
      PairOutcome& outcome = outcomes[i];
      const TcepPairRecord& record = records[i];
      outcome.id = record.id;
      outcome.truth = record.ground_truth;
      outcome.weight = record.weight;
      try {
        // One fresh subsampling per (repeat, pair); seeds are disjoint by
        // construction: master + repeat * n + i.
        const std::uint64_t subsample_seed = derive_seed(
            seed, static_cast<std::uint64_t>(repeat) * n + i);
        const TcepPairRecord data =
            subsample_record(record, per_pair_cap, subsample_seed);
        outcome.n_samples = static_cast<int>(data.x.size());
        const InferenceResult result = engine.infer(data.x, data.y);
        outcome.decision = result.decided_direction;
        outcome.log_odds = result.log_odds;
        outcome.correct = outcome.decision == outcome.truth;
      } catch (const Error& e) {
        outcome.failed = true;
        outcome.error = e.what();
        outcome.correct = false;
      }
    });

    weighted_sum += weighted_accuracy(outcomes);
    unweighted_sum += unweighted_accuracy(outcomes);
    if (repeat == 0) {
      for (const auto& o : outcomes) failed_first += o.failed ? 1 : 0;
      first_repeat = std::move(outcomes);
    }
  }

  AccuracyReport report;
  report.pairs = std::move(first_repeat);
  report.weighted_accuracy = weighted_sum / repeats;
  report.unweighted_accuracy = unweighted_sum / repeats;
  report.n_failed = failed_first;
  report.repeats = repeats;
  report.seed = seed;
  report.config_echo["n_records"] = std::to_string(n);
  report.config_echo["per_pair_cap"] = std::to_string(per_pair_cap);
  report.config_echo["repeats"] = std::to_string(repeats);
  report.config_echo["inference.n_bins"] =
      std::to_string(config.grid.n_bins());
  report.config_echo["inference.noise_variance"] =
      format_double(config.noise_variance);
  report.config_echo["inference.rho"] = format_double(config.rho);
  return report;
}

}  // namespace bci
