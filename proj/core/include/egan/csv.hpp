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

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace egan::io {

/// Shortest round-trippable decimal rendering (%.17g).
std::string format_double(double v);

/// Column-checked CSV writer. Comment lines start with '#'.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path,
            const std::vector<std::string>& header);

  void comment(const std::string& text);
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);
  void flush();

 private:
  std::ofstream out_;
  std::filesystem::path path_;
  std::size_t cols_;
};

/// Numeric CSV with optional '#' comments and a single header line.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace egan::io
