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

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "egan/tensor.hpp"

namespace egan::io {

/// Named-tensor checkpoint: a human-readable manifest plus a raw
/// little-endian float64 blob referenced by it. The manifest's first line is
/// the magic "EGAN1"; loading anything else fails loudly.
class Checkpoint {
 public:
  static constexpr const char* kMagic = "EGAN1";

  void add_tensor(const std::string& name, const ad::Tensor& t);
  void add_raw(const std::string& name, const ad::Shape& shape,
               const std::vector<double>& values);
  void set_meta(const std::string& key, const std::string& value);

  bool has_tensor(const std::string& name) const;
  const std::vector<double>& tensor_values(const std::string& name) const;
  const ad::Shape& tensor_shape(const std::string& name) const;
  /// Copies stored values into `t`; throws on missing name or shape mismatch.
  void load_into(const std::string& name, ad::Tensor& t) const;
  std::string meta(const std::string& key) const;
  bool has_meta(const std::string& key) const;
  std::vector<std::string> tensor_names() const;

  /// Writes `<path>.manifest` and `<path>.blob`.
  void save(const std::filesystem::path& path_stem) const;
  static Checkpoint load(const std::filesystem::path& manifest_path);

 private:
  struct Entry {
    ad::Shape shape;
    std::vector<double> values;
  };
  std::map<std::string, Entry> tensors_;
  std::map<std::string, std::string> meta_;
  std::vector<std::string> order_;
};

}  // namespace egan::io
