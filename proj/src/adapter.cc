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

#include "tdpr/adapter.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "tdpr/binary_io.h"
#include "tdpr/error.h"
#include "tdpr/hash.h"

namespace tdpr {
namespace {
constexpr std::string_view kMagic = "TADP1";
}  // namespace

AdapterMatrix::AdapterMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), weights_(rows * cols, 0.0) {
  if (rows < 2 || cols < 2) {
    throw UsageError("adapter needs at least 2 rows and 2 columns");
  }
}

AdapterMatrix AdapterMatrix::Identity(size_t dim) {
  AdapterMatrix m(dim, dim);
  for (size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

std::vector<double> AdapterMatrix::Project(std::span<const double> v) const {
  if (v.size() != cols_) {
    throw DataError("adapter expects dim " + std::to_string(cols_) +
                    ", got " + std::to_string(v.size()));
  }
  std::vector<double> out(rows_, 0.0);
  for (size_t r = 0; r < rows_; ++r) {
    const double* row = &weights_[r * cols_];
    double s = 0.0;
    for (size_t c = 0; c < cols_; ++c) s += row[c] * v[c];
    out[r] = s;
  }
  return out;
}

uint64_t AdapterMatrix::Fingerprint() const {
  std::ostringstream os;
  Serialize(os);
  return Fnv1a64(os.str());
}

void AdapterMatrix::Serialize(std::ostream& out) const {
  BinaryWriter w(out);
  w.Bytes(kMagic);
  w.U32(static_cast<uint32_t>(rows_));
  w.U32(static_cast<uint32_t>(cols_));
  for (double x : weights_) w.F32(static_cast<float>(x));
}

AdapterMatrix AdapterMatrix::Deserialize(std::istream& in,
                                         const std::string& source) {
  BinaryReader r(in, source);
  r.ExpectMagic(kMagic);
  const uint32_t rows = r.U32();
  const uint32_t cols = r.U32();
  AdapterMatrix m(rows, cols);
  for (double& x : m.weights_) {
    x = r.F32();
    if (!std::isfinite(x)) throw DataError(source + ": non-finite weight");
  }
  r.ExpectEnd();
  return m;
}

void AdapterMatrix::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  Serialize(out);
}

AdapterMatrix AdapterMatrix::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  return Deserialize(in, path);
}

EmbeddingVector ApplyAdapter(const AdapterMatrix& adapter,
                             const EmbeddingVector& v) {
  auto w = adapter.Project(v.values());
  double sq = 0.0;
  for (double x : w) sq += x * x;
  if (std::sqrt(sq) < 1e-12) {
    throw DataError("adapter maps the vector to (near) zero");
  }
  return EmbeddingVector::Normalized(std::move(w));
}

}  // namespace tdpr
