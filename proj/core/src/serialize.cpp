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

#include "egan/serialize.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace egan::io {

namespace {

// Blob payload is little-endian float64 regardless of host order.
void write_f64_le(std::ostream& os, const std::vector<double>& values) {
  if constexpr (std::endian::native == std::endian::little) {
    os.write(reinterpret_cast<const char*>(values.data()),
             static_cast<std::streamsize>(values.size() * sizeof(double)));
  } else {
    for (double v : values) {
      std::uint64_t bits;
      std::memcpy(&bits, &v, sizeof(bits));
      char buf[8];
      for (int i = 0; i < 8; ++i)
        buf[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
      os.write(buf, 8);
    }
  }
}

std::vector<double> read_f64_le(std::istream& is, std::size_t count) {
  std::vector<double> values(count);
  if constexpr (std::endian::native == std::endian::little) {
    is.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      char buf[8];
      is.read(buf, 8);
      std::uint64_t bits = 0;
      for (int b = 0; b < 8; ++b)
        bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[b]))
                << (8 * b);
      std::memcpy(&values[i], &bits, sizeof(double));
    }
  }
  if (!is) throw std::runtime_error("checkpoint blob truncated");
  return values;
}

}  // namespace

void Checkpoint::add_tensor(const std::string& name, const ad::Tensor& t) {
  const auto vals = t.values();
  add_raw(name, t.shape(), std::vector<double>(vals.begin(), vals.end()));
}

void Checkpoint::add_raw(const std::string& name, const ad::Shape& shape,
                         const std::vector<double>& values) {
  if (ad::shape_size(shape) != values.size())
    throw std::invalid_argument("checkpoint tensor '" + name +
                                "': shape/value size mismatch");
  if (tensors_.find(name) == tensors_.end()) order_.push_back(name);
  tensors_[name] = Entry{shape, values};
}

void Checkpoint::set_meta(const std::string& key, const std::string& value) {
  if (key.find_first_of(" \t\n") != std::string::npos)
    throw std::invalid_argument("checkpoint meta key may not contain spaces");
  meta_[key] = value;
}

bool Checkpoint::has_tensor(const std::string& name) const {
  return tensors_.count(name) != 0;
}

const std::vector<double>& Checkpoint::tensor_values(
    const std::string& name) const {
  auto it = tensors_.find(name);
  if (it == tensors_.end())
    throw std::out_of_range("checkpoint has no tensor '" + name + "'");
  return it->second.values;
}

const ad::Shape& Checkpoint::tensor_shape(const std::string& name) const {
  auto it = tensors_.find(name);
  if (it == tensors_.end())
    throw std::out_of_range("checkpoint has no tensor '" + name + "'");
  return it->second.shape;
}

void Checkpoint::load_into(const std::string& name, ad::Tensor& t) const {
  auto it = tensors_.find(name);
  if (it == tensors_.end())
    throw std::out_of_range("checkpoint has no tensor '" + name + "'");
  if (it->second.shape != t.shape())
    throw std::invalid_argument(
        "checkpoint tensor '" + name + "' has shape " +
        ad::shape_to_string(it->second.shape) + ", destination expects " +
        ad::shape_to_string(t.shape()));
  auto dst = t.values_mut();
  std::copy(it->second.values.begin(), it->second.values.end(), dst.begin());
}

std::string Checkpoint::meta(const std::string& key) const {
  auto it = meta_.find(key);
  if (it == meta_.end())
    throw std::out_of_range("checkpoint has no meta key '" + key + "'");
  return it->second;
}

bool Checkpoint::has_meta(const std::string& key) const {
  return meta_.count(key) != 0;
}

std::vector<std::string> Checkpoint::tensor_names() const { return order_; }

void Checkpoint::save(const std::filesystem::path& path_stem) const {
  const auto manifest_path = path_stem.string() + ".manifest";
  const auto blob_path = path_stem.string() + ".blob";
  const auto blob_name = std::filesystem::path(blob_path).filename().string();

  std::ofstream blob(blob_path, std::ios::binary);
  if (!blob) throw std::runtime_error("cannot write " + blob_path);
  std::ofstream manifest(manifest_path);
  if (!manifest) throw std::runtime_error("cannot write " + manifest_path);

  manifest << kMagic << "\n";
  manifest << "blob " << blob_name << "\n";
  for (const auto& [k, v] : meta_) manifest << "meta " << k << " " << v << "\n";

  std::size_t offset = 0;
  for (const auto& name : order_) {
    const Entry& e = tensors_.at(name);
    manifest << "tensor " << name << " " << e.shape.size();
    for (auto d : e.shape) manifest << " " << d;
    manifest << " " << offset << " " << e.values.size() << "\n";
    write_f64_le(blob, e.values);
    offset += e.values.size() * sizeof(double);
  }
  if (!manifest || !blob)
    throw std::runtime_error("checkpoint write failed for " +
                             path_stem.string());
}

Checkpoint Checkpoint::load(const std::filesystem::path& manifest_path) {
  std::ifstream manifest(manifest_path);
  if (!manifest)
    throw std::runtime_error("cannot open " + manifest_path.string());

  std::string line;
  if (!std::getline(manifest, line) || line != kMagic)
    throw std::runtime_error(manifest_path.string() +
                             ": not a checkpoint manifest (bad magic)");

  Checkpoint ckpt;
  std::filesystem::path blob_path;
  struct Pending {
    std::string name;
    ad::Shape shape;
    std::size_t offset;
    std::size_t count;
  };
  std::vector<Pending> pending;

  std::size_t line_no = 1;
  while (std::getline(manifest, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string kind;
    ss >> kind;
    if (kind == "blob") {
      std::string file;
      ss >> file;
      blob_path = manifest_path.parent_path() / file;
    } else if (kind == "meta") {
      std::string key, value;
      ss >> key;
      std::getline(ss, value);
      if (!value.empty() && value.front() == ' ') value.erase(0, 1);
      ckpt.meta_[key] = value;
    } else if (kind == "tensor") {
      Pending p;
      std::size_t ndim = 0;
      ss >> p.name >> ndim;
      p.shape.resize(ndim);
      for (auto& d : p.shape) ss >> d;
      ss >> p.offset >> p.count;
      if (!ss)
        throw std::runtime_error(manifest_path.string() + ":" +
                                 std::to_string(line_no) +
                                 ": malformed tensor record");
      pending.push_back(std::move(p));
    } else {
      throw std::runtime_error(manifest_path.string() + ":" +
                               std::to_string(line_no) +
                               ": unknown record '" + kind + "'");
    }
  }
  if (blob_path.empty())
    throw std::runtime_error(manifest_path.string() + ": no blob record");

  std::ifstream blob(blob_path, std::ios::binary);
  if (!blob) throw std::runtime_error("cannot open " + blob_path.string());
  for (const auto& p : pending) {
    if (ad::shape_size(p.shape) != p.count)
      throw std::runtime_error("checkpoint tensor '" + p.name +
                               "': shape/count mismatch");
    blob.seekg(static_cast<std::streamoff>(p.offset));
    ckpt.add_raw(p.name, p.shape, read_f64_le(blob, p.count));
  }
  return ckpt;
}

}  // namespace egan::io
