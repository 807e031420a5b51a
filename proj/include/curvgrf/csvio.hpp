// Copyright 2026 The curvgrf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CURVGRF_CSVIO_HPP_
#define CURVGRF_CSVIO_HPP_

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "curvgrf/ensemble.hpp"
#include "curvgrf/matops.hpp"

namespace curvgrf {

// CSV with a mandatory header row and floats printed with 17 significant
// digits, enough to round-trip doubles exactly.

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<Eigen::VectorXd> rows;
};

inline void write_csv(std::ostream& out, const std::vector<std::string>& header,
                      const std::vector<Eigen::VectorXd>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << '\n';
  for (const Eigen::VectorXd& row : rows) {
    if (static_cast<std::size_t>(row.size()) != header.size())
      throw std::invalid_argument("write_csv: row width does not match header");
    for (Eigen::Index i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

inline CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_csv: missing header row");
  std::stringstream head(line);
  for (std::string cell; std::getline(head, cell, ',');) table.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Eigen::VectorXd row(table.header.size());
    std::stringstream ss(line);
    std::string cell;
    Eigen::Index i = 0;
    while (std::getline(ss, cell, ',')) {
      if (i >= row.size()) throw std::runtime_error("read_csv: row wider than header");
      row[i++] = std::stod(cell);
    }
    if (i != row.size()) throw std::runtime_error("read_csv: row narrower than header");
    table.rows.push_back(std::move(row));
  }
  return table;
}

// Jet rows are g_1..g_n followed by vech(H) as h_11, h_21, ..., h_nn.
inline std::vector<std::string> jet_csv_header(Eigen::Index n) {
  std::vector<std::string> header;
  for (Eigen::Index i = 1; i <= n; ++i) header.push_back("g_" + std::to_string(i));
  for (Eigen::Index j = 1; j <= n; ++j)
    for (Eigen::Index i = j; i <= n; ++i)
      header.push_back("h_" + std::to_string(i) + std::to_string(j));
  return header;
}

inline Eigen::VectorXd jet_to_row(const PointJet& jet) {
  const Eigen::Index n = jet.gradient.size();
  Eigen::VectorXd row(n + vech_size(n));
  row.head(n) = jet.gradient;
  row.tail(vech_size(n)) = vech_of(jet.hessian);
  return row;
}

inline PointJet jet_from_row(const Eigen::VectorXd& row, Eigen::Index n) {
  if (row.size() != n + vech_size(n)) throw std::invalid_argument("jet_from_row: bad width");
  PointJet jet;
  jet.gradient = row.head(n);
  jet.hessian = sym_from_vech(row.tail(vech_size(n)));
  return jet;
}

// Infers n from the column count n + n(n+1)/2.
inline Eigen::Index jet_dimension_from_columns(std::size_t columns) {
  const double n = (std::sqrt(9.0 + 8.0 * static_cast<double>(columns)) - 3.0) / 2.0;
  const auto rounded = static_cast<Eigen::Index>(n + 0.5);
  if (rounded < 1 || rounded + vech_size(rounded) != static_cast<Eigen::Index>(columns))
    throw std::invalid_argument("jet CSV has an invalid column count");
  return rounded;
}

}  // namespace curvgrf

#endif  // CURVGRF_CSVIO_HPP_
