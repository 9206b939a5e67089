// Copyright 2026 The idiomdetect Authors
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

#include "idiom/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "idiom/errors.hpp"
#include "idiom/util.hpp"

namespace idiom {

namespace {

constexpr char kMagic[4] = {'I', 'D', 'C', 'P'};

void write_u64(std::ostream& out, std::uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(buf, 8);
}

std::uint64_t read_u64(std::istream& in) {
  char buf[8];
  in.read(buf, 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i]))
         << (8 * i);
  }
  return v;
}

}  // namespace

void save_checkpoint(const std::string& path,
                     const std::vector<nn::ParamPtr>& params,
                     const CheckpointMeta& meta) {
  nlohmann::json header;
  header["schema"] = kCheckpointSchema;
  header["fingerprint"] = meta.fingerprint;
  header["extra"] = meta.extra;
  nlohmann::json manifest = nlohmann::json::array();
  for (const auto& p : params) {
    manifest.push_back({{"name", p->name},
                        {"rows", p->value.rows()},
                        {"cols", p->value.cols()}});
  }
  header["tensors"] = manifest;
  const std::string header_str = header.dump();

  // Write to a temp file and rename so failed saves leave nothing behind.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write checkpoint: " + path);
    out.write(kMagic, 4);
    write_u64(out, header_str.size());
    out.write(header_str.data(),
              static_cast<std::streamsize>(header_str.size()));
    std::uint64_t checksum = 1469598103934665603ull;
    for (const auto& p : params) {
      const auto n = static_cast<std::size_t>(p->value.size());
      const char* data = reinterpret_cast<const char*>(p->value.data());
      out.write(data, static_cast<std::streamsize>(n * sizeof(double)));
      checksum = fnv1a64(data, n * sizeof(double), checksum);
    }
    write_u64(out, checksum);
    if (!out) throw IoError("failed writing checkpoint: " + path);
  }
  std::filesystem::rename(tmp, path);
}

namespace {

nlohmann::json read_header(std::istream& in, const std::string& path) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw CheckpointError("not a checkpoint file: " + path);
  }
  const std::uint64_t header_len = read_u64(in);
  if (!in || header_len == 0 || header_len > (1ull << 30)) {
    throw CheckpointError("corrupt checkpoint header: " + path);
  }
  std::string header_str(header_len, '\0');
  in.read(header_str.data(), static_cast<std::streamsize>(header_len));
  if (!in) throw CheckpointError("truncated checkpoint header: " + path);
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(header_str);
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError("unreadable checkpoint header: " +
                          std::string(e.what()));
  }
  if (header.value("schema", "") != kCheckpointSchema) {
    throw CheckpointError("unsupported checkpoint schema '" +
                          header.value("schema", "") + "' in " + path);
  }
  return header;
}

CheckpointMeta meta_from_header(const nlohmann::json& header) {
  CheckpointMeta meta;
  meta.fingerprint = header.value("fingerprint", "");
  meta.extra = header.value("extra", nlohmann::json::object());
  return meta;
}

}  // namespace

CheckpointMeta read_checkpoint_meta(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint: " + path);
  return meta_from_header(read_header(in, path));
}

CheckpointMeta load_checkpoint(const std::string& path,
                               const std::vector<nn::ParamPtr>& params) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint: " + path);
  const nlohmann::json header = read_header(in, path);

  const auto& manifest = header.at("tensors");
  if (manifest.size() != params.size()) {
    throw CheckpointError("checkpoint has " + std::to_string(manifest.size()) +
                          " tensors, model expects " +
                          std::to_string(params.size()));
  }
  std::uint64_t checksum = 1469598103934665603ull;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& entry = manifest[i];
    const std::string name = entry.value("name", "");
    const auto rows = entry.value("rows", Eigen::Index{0});
    const auto cols = entry.value("cols", Eigen::Index{0});
    nn::Parameter& p = *params[i];
    if (name != p.name || rows != p.value.rows() || cols != p.value.cols()) {
      throw CheckpointError("tensor mismatch at index " + std::to_string(i) +
                            ": checkpoint has '" + name + "' (" +
                            std::to_string(rows) + "x" + std::to_string(cols) +
                            "), model expects '" + p.name + "'");
    }
    const auto n = static_cast<std::size_t>(p.value.size());
    char* data = reinterpret_cast<char*>(p.value.data());
    in.read(data, static_cast<std::streamsize>(n * sizeof(double)));
    if (!in) throw CheckpointError("truncated checkpoint payload: " + path);
    checksum = fnv1a64(data, n * sizeof(double), checksum);
  }
  const std::uint64_t stored = read_u64(in);
  if (!in || stored != checksum) {
    throw CheckpointError("checkpoint checksum mismatch: " + path);
  }
  return meta_from_header(header);
}

}  // namespace idiom
