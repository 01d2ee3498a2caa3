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

#include "egan/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "egan/csv.hpp"

namespace egan::io {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return from_string(ss.str());
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text) {
  KeyValueConfig cfg;
  std::stringstream ss(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected key = value, got '" + line +
                                  "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": empty key");
    cfg.kv_[key] = value;
  }
  return cfg;
}

bool KeyValueConfig::has(const std::string& key) const {
  return kv_.count(key) != 0;
}

std::string KeyValueConfig::get(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end())
    throw std::out_of_range("config has no key '" + key + "'");
  return it->second;
}

std::string KeyValueConfig::get_or(const std::string& key,
                                   const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key,
                                  double fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': '" + it->second +
                                "' is not a number");
  }
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key,
                                      std::uint64_t fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    return std::stoull(it->second);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': '" + it->second +
                                "' is not an unsigned integer");
  }
}

std::vector<std::size_t> KeyValueConfig::get_size_list(
    const std::string& key, std::vector<std::size_t> fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  std::vector<std::size_t> out;
  std::stringstream ss(it->second);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell = trim(cell);
    if (cell.empty()) continue;
    try {
      out.push_back(std::stoull(cell));
    } catch (const std::exception&) {
      throw std::invalid_argument("config key '" + key + "': '" + cell +
                                  "' is not an unsigned integer");
    }
  }
  if (out.empty())
    throw std::invalid_argument("config key '" + key + "': empty list");
  return out;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

void KeyValueConfig::set_double(const std::string& key, double value) {
  kv_[key] = format_double(value);
}

void KeyValueConfig::set_u64(const std::string& key, std::uint64_t value) {
  kv_[key] = std::to_string(value);
}

void KeyValueConfig::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config " + path.string());
  for (const auto& [k, v] : kv_) out << k << " = " << v << "\n";
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace egan::io
