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

#ifndef TDPR_ERROR_H_
#define TDPR_ERROR_H_

#include <stdexcept>
#include <string>

namespace tdpr {

// Invalid or inconsistent input data (malformed files, dangling references,
// dimension mismatches). The CLI maps this to exit code 1.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller violated an operation's precondition (k < 1, batch_size < 2, ...).
// The CLI maps this to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Failure talking to an external embedding or LLM service. Retriable.
class ProviderError : public std::runtime_error {
 public:
  explicit ProviderError(const std::string& what, bool retriable = true)
      : std::runtime_error(what), retriable_(retriable) {}
  bool retriable() const { return retriable_; }

 private:
  bool retriable_;
};

// Numerical failure inside an iterative procedure (non-finite loss, ...).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tdpr

#endif  // TDPR_ERROR_H_
