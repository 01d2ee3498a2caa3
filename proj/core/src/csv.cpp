/*
 * Copyright 2026 The egan authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "egan/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace egan::io {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : out_(path), path_(path), cols_(header.size()) {
  if (!out_) throw std::runtime_error("cannot write " + path.string());
  for (std::size_t i = 0; i < header.size(); ++i)
    out_ << (i ? "," : "") << header[i];
  out_ << "\n";
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  row(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != cols_)
    throw std::invalid_argument(path_.string() + ": row has " +
                                std::to_string(cells.size()) +
                                " cells, header has " + std::to_string(cols_));
  for (std::size_t i = 0; i < cells.size(); ++i)
    out_ << (i ? "," : "") << cells[i];
  out_ << "\n";
}

void CsvWriter::flush() {
  out_.flush();
  if (!out_) throw std::runtime_error("write failed for " + path_.string());
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::out_of_range("csv has no column '" + name + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    if (table.header.empty()) {
      while (std::getline(ss, cell, ',')) table.header.push_back(cell);
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error(path.string() + ":" +
                                 std::to_string(line_no) +
                                 ": cannot parse '" + cell + "'");
      }
    }
    if (row.size() != table.header.size())
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": column count mismatch");
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace egan::io
