#ifndef BCI_TABLE_IO_HPP
#define BCI_TABLE_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace bci {

/// Columns of a whitespace/TSV/CSV numeric file. Rows that fail to parse or
/// disagree with the first row's column count are skipped and counted.
struct NumericTable {
  std::vector<Eigen::VectorXd> columns;
  int skipped_rows = 0;

  Eigen::Index n_rows() const {
    return columns.empty() ? 0 : columns.front().size();
  }
};

/// Reads a numeric table. delimiter '\0' autodetects: tab if the first data
/// line contains one, else comma, else any whitespace. Lines starting with
/// '#' and blank lines are ignored.
NumericTable read_numeric_table(const std::string& path, char delimiter = '\0');

/// Reads the first two columns of a numeric file; throws IoError unless at
/// least two columns and one row survive parsing.
std::pair<Eigen::VectorXd, Eigen::VectorXd> read_pair_file(
    const std::string& path, char delimiter = '\0');

/// Shortest-ish decimal form that round-trips the double exactly (%.17g).
std::string format_double(double v);

}  // namespace bci

#endif  // BCI_TABLE_IO_HPP
