#include "ibmetric/cli/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <memory>
#include <ostream>
#include <set>

namespace ibmetric::cli {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t column) {
  const std::string where =
      " (line " + std::to_string(row + 1) + ", column " + std::to_string(column + 1) + ")";
  if (cell.empty()) throw CliError(kExitGrid, "empty cell: curve not observed on the grid" + where);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
    throw CliError(kExitParse, "not a finite number: '" + cell + "'" + where);
  }
  return value;
}

// Splits "name[k]" into (name, k); plain labels give (label, -1).
std::pair<std::string, long> split_component(const std::string& label) {
  if (label.size() < 4 || label.back() != ']') return {label, -1};
  const std::size_t open = label.rfind('[');
  if (open == std::string::npos || open == 0 || open + 2 > label.size() - 1) return {label, -1};
  long index = 0;
  const char* first = label.data() + open + 1;
  const char* last = label.data() + label.size() - 1;
  const auto [ptr, ec] = std::from_chars(first, last, index);
  if (ec != std::errc() || ptr != last || index < 0) return {label, -1};
  return {label.substr(0, open), index};
}

struct Column {
  std::string label;
  std::size_t first;  // index among value columns
  std::size_t dim;
};

std::vector<Column> group_columns(const std::vector<std::string>& header) {
  std::vector<Column> columns;
  std::set<std::string> seen;
  std::size_t k = 1;
  while (k < header.size()) {
    const auto [name, index] = split_component(header[k]);
    if (name.empty()) throw CliError(kExitParse, "empty column label");
    std::size_t dim = 1;
    if (index >= 0) {
      if (index != 0) throw CliError(kExitParse, "component columns must start at [0]: " + header[k]);
      while (k + dim < header.size()) {
        const auto [next_name, next_index] = split_component(header[k + dim]);
        if (next_name != name || next_index != static_cast<long>(dim)) break;
        ++dim;
      }
    }
    if (!seen.insert(name).second) throw CliError(kExitParse, "duplicate label: " + name);
    columns.push_back({name, k - 1, dim});
    k += dim;
  }
  return columns;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  if (data.curves.empty()) throw std::invalid_argument("write_dataset_csv: empty dataset");
  const auto& first = data.curves.front();
  for (const auto& c : data.curves) {
    if (c.grid() != first.grid()) throw std::invalid_argument("write_dataset_csv: grids differ");
  }
  std::string line = "t";
  for (std::size_t i = 0; i < data.curves.size(); ++i) {
    const std::size_t dim = data.curves[i].dim();
    for (std::size_t d = 0; d < dim; ++d) {
      line += ',';
      line += data.labels[i];
      if (dim > 1) line += "[" + std::to_string(d) + "]";
    }
  }
  out << line << '\n';
  for (std::size_t k = 0; k < first.size(); ++k) {
    line = format_double(first.time(k));
    for (const auto& c : data.curves) {
      for (const double v : c.value(k)) {
        line += ',';
        line += format_double(v);
      }
    }
    out << line << '\n';
  }
}

Dataset read_dataset_csv(std::istream& in) {
  const auto lines = read_lines(in);
  if (lines.empty()) throw CliError(kExitParse, "empty input");
  const auto header = split(lines.front());
  if (header.front() != "t") throw CliError(kExitParse, "first header cell must be 't'");
  const auto columns = group_columns(header);

  const std::size_t rows = lines.size() - 1;
  std::vector<double> times(rows);
  std::vector<std::vector<double>> values(columns.size());
  for (std::size_t r = 0; r < rows; ++r) {
    const auto cells = split(lines[r + 1]);
    if (cells.size() != header.size()) {
      throw CliError(kExitParse, "line " + std::to_string(r + 2) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(header.size()));
    }
    times[r] = parse_cell(cells[0], r + 1, 0);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      for (std::size_t d = 0; d < columns[c].dim; ++d) {
        const std::size_t cell = columns[c].first + d + 1;
        values[c].push_back(parse_cell(cells[cell], r + 1, cell));
      }
    }
  }

  std::shared_ptr<const Grid> grid;
  try {
    grid = std::make_shared<const Grid>(times, std::vector<double>(rows, 1.0 / rows));
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitGrid, std::string("time column is not a valid grid: ") + e.what());
  }
  Dataset data;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    data.labels.push_back(columns[c].label);
    data.curves.emplace_back(grid, std::move(values[c]), columns[c].dim);
  }
  return data;
}

void write_matrix_csv(std::ostream& out, const std::vector<std::string>& labels,
                      const DistanceMatrix& matrix) {
  if (labels.size() != matrix.size()) throw std::invalid_argument("write_matrix_csv: label count");
  std::string line = "label";
  for (const auto& l : labels) line += "," + l;
  out << line << '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    line = labels[i];
    for (std::size_t j = 0; j < matrix.size(); ++j) line += "," + format_double(matrix(i, j));
    out << line << '\n';
  }
}

DistanceMatrix read_matrix_csv(std::istream& in, std::vector<std::string>* labels) {
  const auto lines = read_lines(in);
  if (lines.empty()) throw CliError(kExitParse, "empty matrix input");
  const auto header = split(lines.front());
  if (header.front() != "label") throw CliError(kExitParse, "first header cell must be 'label'");
  const std::size_t n = header.size() - 1;
  if (lines.size() != n + 1) throw CliError(kExitParse, "matrix must be square");
  DistanceMatrix matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto cells = split(lines[i + 1]);
    if (cells.size() != n + 1 || cells[0] != header[i + 1]) {
      throw CliError(kExitParse, "malformed matrix row " + std::to_string(i + 1));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double v = parse_cell(cells[j + 1], i + 1, j + 1);
      if (j >= i) matrix.set(i, j, v);
    }
  }
  if (labels) labels->assign(header.begin() + 1, header.end());
  return matrix;
}

}  // namespace ibmetric::cli
