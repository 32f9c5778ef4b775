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

#ifndef TDPR_ADAPTER_H_
#define TDPR_ADAPTER_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tdpr/embedding.h"

namespace tdpr {

// Row-major linear map from provider space (cols) to adapted space (rows).
class AdapterMatrix {
 public:
  AdapterMatrix() = default;
  AdapterMatrix(size_t rows, size_t cols);

  static AdapterMatrix Identity(size_t dim);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  std::span<const double> weights() const { return weights_; }
  std::span<double> mutable_weights() { return weights_; }
  double at(size_t r, size_t c) const { return weights_[r * cols_ + c]; }
  double& at(size_t r, size_t c) { return weights_[r * cols_ + c]; }

  // W * v without normalization.
  std::vector<double> Project(std::span<const double> v) const;

  // FNV-1a of the serialized bytes; identifies the adapter an index was
  // built with.
  uint64_t Fingerprint() const;

  // "TADP1", u32 rows, u32 cols, rows*cols little-endian f32.
  void Serialize(std::ostream& out) const;
  static AdapterMatrix Deserialize(std::istream& in,
                                   const std::string& source = "<stream>");
  void Save(const std::string& path) const;
  static AdapterMatrix Load(const std::string& path);

  bool operator==(const AdapterMatrix&) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> weights_;
};

// normalize(W v). Throws DataError on dim mismatch or when |W v| < 1e-12.
EmbeddingVector ApplyAdapter(const AdapterMatrix& adapter,
                             const EmbeddingVector& v);

}  // namespace tdpr

#endif  // TDPR_ADAPTER_H_
