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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace egan::io {

/// `key = value` text config; '#' starts a comment. Keys are unique; the
/// writer emits them sorted so snapshots are byte-stable.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;
  static KeyValueConfig from_file(const std::filesystem::path& path);
  static KeyValueConfig from_string(const std::string& text);

  bool has(const std::string& key) const;
  std::string get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::vector<std::size_t> get_size_list(const std::string& key,
                                         std::vector<std::size_t> fallback)
      const;

  void set(const std::string& key, const std::string& value);
  void set_double(const std::string& key, double value);
  void set_u64(const std::string& key, std::uint64_t value);

  void write(const std::filesystem::path& path) const;
  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace egan::io
