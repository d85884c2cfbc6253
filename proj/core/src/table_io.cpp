#include "bci/table_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bci/errors.hpp"

namespace bci {

namespace {

bool is_comment_or_blank(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> tokens;
  if (delimiter == ' ') {
    std::istringstream in(line);
    std::string token;
    while (in >> token) tokens.push_back(token);
    return tokens;
  }
  std::string token;
  std::istringstream in(line);
  while (std::getline(in, token, delimiter)) tokens.push_back(token);
  return tokens;
}

bool parse_double(const std::string& token, double* value) {
  const char* begin = token.c_str();
  char* end = nullptr;
  *value = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end != '\0') {
    if (!std::isspace(static_cast<unsigned char>(*end))) return false;
    ++end;
  }
  return true;
}

char detect_delimiter(const std::string& line) {
  if (line.find('\t') != std::string::npos) return '\t';
  if (line.find(',') != std::string::npos) return ',';
  return ' ';
}

}  // namespace

NumericTable read_numeric_table(const std::string& path, char delimiter) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);

  NumericTable table;
  std::vector<std::vector<double>> columns;
  std::string line;
  char active_delimiter = delimiter;

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_comment_or_blank(line)) continue;
    if (active_delimiter == '\0') active_delimiter = detect_delimiter(line);

    const auto tokens = split_line(line, active_delimiter);
    std::vector<double> row;
    row.reserve(tokens.size());
    bool ok = !tokens.empty();
    for (const auto& token : tokens) {
      double value = 0.0;
      if (!parse_double(token, &value)) {
        ok = false;
        break;
      }
      row.push_back(value);
    }
    if (ok && columns.empty()) columns.resize(row.size());
    if (!ok || row.size() != columns.size()) {
      ++table.skipped_rows;
      continue;
    }
    for (std::size_t c = 0; c < row.size(); ++c) columns[c].push_back(row[c]);
  }

  table.columns.reserve(columns.size());
  for (const auto& col : columns) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(col.size()));
    for (std::size_t i = 0; i < col.size(); ++i)
      v[static_cast<Eigen::Index>(i)] = col[i];
    table.columns.push_back(std::move(v));
  }
  return table;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> read_pair_file(
    const std::string& path, char delimiter) {
  const NumericTable table = read_numeric_table(path, delimiter);
  if (table.columns.size() < 2)
    throw IoError("expected at least two numeric columns in " + path);
  if (table.n_rows() < 1) throw IoError("no numeric rows in " + path);
  return {table.columns[0], table.columns[1]};
}

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace bci
