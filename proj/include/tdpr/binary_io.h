// Copyright 2026 The TDPR Authors
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

#ifndef TDPR_BINARY_IO_H_
#define TDPR_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "tdpr/error.h"

namespace tdpr {

// Little-endian primitives for the versioned index and adapter files.
class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream& out) : out_(out) {}

  void Bytes(std::string_view s) { out_.write(s.data(), s.size()); }
  void U8(uint8_t v) { out_.put(static_cast<char>(v)); }
  void U32(uint32_t v) {
    for (int i = 0; i < 4; ++i) U8(static_cast<uint8_t>(v >> (8 * i)));
  }
  void U64(uint64_t v) {
    for (int i = 0; i < 8; ++i) U8(static_cast<uint8_t>(v >> (8 * i)));
  }
  void F32(float v) { U32(std::bit_cast<uint32_t>(v)); }
  void F64(double v) { U64(std::bit_cast<uint64_t>(v)); }
  void Str(std::string_view s) {
    U32(static_cast<uint32_t>(s.size()));
    Bytes(s);
  }

 private:
  std::ostream& out_;
};

class BinaryReader {
 public:
  BinaryReader(std::istream& in, std::string source)
      : in_(in), source_(std::move(source)) {}

  void ExpectMagic(std::string_view magic) {
    std::string got(magic.size(), '\0');
    in_.read(got.data(), got.size());
    if (!in_ || got != magic) {
      throw DataError(source_ + ": bad magic, expected '" +
                      std::string(magic) + "'");
    }
  }
  uint8_t U8() {
    const int c = in_.get();
    if (c == std::char_traits<char>::eof()) Truncated();
    return static_cast<uint8_t>(c);
  }
  uint32_t U32() {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(U8()) << (8 * i);
    return v;
  }
  uint64_t U64() {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(U8()) << (8 * i);
    return v;
  }
  float F32() { return std::bit_cast<float>(U32()); }
  double F64() { return std::bit_cast<double>(U64()); }
  std::string Str() {
    const uint32_t n = U32();
    std::string s(n, '\0');
    in_.read(s.data(), n);
    if (static_cast<uint32_t>(in_.gcount()) != n) Truncated();
    return s;
  }
  void ExpectEnd() {
    if (in_.peek() != std::char_traits<char>::eof()) {
      throw DataError(source_ + ": trailing bytes after payload");
    }
  }

 private:
  [[noreturn]] void Truncated() {
    throw DataError(source_ + ": truncated file");
  }

  std::istream& in_;
  std::string source_;
};

}  // namespace tdpr

#endif  // TDPR_BINARY_IO_H_
