// Copyright 2026 The Harakat Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HARAKAT_BINARY_IO_HPP
#define HARAKAT_BINARY_IO_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "harakat/error.hpp"

namespace harakat {

// Format version of every binary container written by the toolkit.
inline constexpr std::uint32_t kFormatVersion = 1;
inline constexpr std::array<char, 4> kMagic{'H', 'R', 'K', 'T'};

// FNV-1a, 64 bit. Used for corpus and input fingerprints.
inline std::uint64_t fnv1a(std::string_view data, std::uint64_t hash = 0xcbf29ce484222325ULL) {
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::uint64_t file_fingerprint(const std::filesystem::path& path) {
  return fnv1a(read_file(path));
}

// Writes through a temporary file and renames it into place, so readers
// never observe a half-written output.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::function<void(std::ostream&)>& writer) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    writer(out);
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  write_file_atomic(path, [&](std::ostream& out) { out.write(content.data(), static_cast<std::streamsize>(content.size())); });
}

// Little-endian serializer over an in-memory buffer.
class BinaryWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int k = 0; k < 4; ++k) u8(static_cast<std::uint8_t>(v >> (8 * k)));
  }
  void u64(std::uint64_t v) {
    for (int k = 0; k < 8; ++k) u8(static_cast<std::uint8_t>(v >> (8 * k)));
  }
  void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(std::string_view s) {
    u64(s.size());
    buf_.append(s.data(), s.size());
  }
  void strings(const std::vector<std::string>& v) {
    u64(v.size());
    for (const auto& s : v) str(s);
  }

  // Magic, format version, payload kind.
  void header(std::string_view kind) {
    buf_.append(kMagic.data(), kMagic.size());
    u32(kFormatVersion);
    str(kind);
  }

  const std::string& data() const { return buf_; }

 private:
  std::string buf_;
};

class BinaryReader {
 public:
  explicit BinaryReader(std::string data) : data_(std::move(data)) {}

  static BinaryReader from_file(const std::filesystem::path& path) {
    return BinaryReader(read_file(path));
  }

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(u8()) << (8 * k);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(u8()) << (8 * k);
    return v;
  }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
  float f32() { return std::bit_cast<float>(u32()); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const std::uint64_t n = u64();
    need(n);
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::vector<std::string> strings() {
    const std::uint64_t n = u64();
    if (n > data_.size()) throw FormatError("corrupt string list");
    std::vector<std::string> v;
    v.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) v.push_back(str());
    return v;
  }

  // Validates magic and version; returns the payload kind.
  std::string header() {
    need(kMagic.size());
    if (std::memcmp(data_.data() + pos_, kMagic.data(), kMagic.size()) != 0) {
      throw FormatError("bad magic header");
    }
    pos_ += kMagic.size();
    const std::uint32_t version = u32();
    if (version != kFormatVersion) {
      throw ModelVersionMismatch("file format version " + std::to_string(version) +
                                 ", expected " + std::to_string(kFormatVersion));
    }
    return str();
  }

  void expect_kind(std::string_view kind) {
    const std::string got = header();
    if (got != kind) throw FormatError("expected a " + std::string(kind) + " file, found " + got);
  }

  bool at_end() const { return pos_ == data_.size(); }

 private:
  void need(std::uint64_t n) const {
    if (n > data_.size() - pos_) throw FormatError("unexpected end of binary data");
  }

  std::string data_;
  std::size_t pos_ = 0;
};

}  // namespace harakat

#endif  // HARAKAT_BINARY_IO_HPP
