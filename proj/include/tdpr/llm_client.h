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

#ifndef TDPR_LLM_CLIENT_H_
#define TDPR_LLM_CLIENT_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>

namespace tdpr {

// Text generation backend. Implementations throw ProviderError on failure.
class LLMClient {
 public:
  virtual ~LLMClient() = default;
  virtual std::string Generate(std::string_view prompt, int max_tokens) = 0;
  virtual std::string name() const = 0;
};

// Deterministic offline client. Output is a pure function of the prompt:
// it recognises the project's prompt templates by their instruction line and
// answers each with a fixed rule (see prompts.h). Unknown prompts get an
// empty-ish canned reply.
class MockLLMClient : public LLMClient {
 public:
  std::string Generate(std::string_view prompt, int max_tokens) override;
  std::string name() const override { return "mock"; }
};

// Replays configured replies keyed by the FNV-1a hash of the full prompt.
// Unknown prompts raise a non-retriable ProviderError.
class EchoMockLLMClient : public LLMClient {
 public:
  void Add(std::string_view prompt, std::string reply);
  void AddByHash(uint64_t prompt_hash, std::string reply);

  std::string Generate(std::string_view prompt, int max_tokens) override;
  std::string name() const override { return "echo-mock"; }

 private:
  std::unordered_map<uint64_t, std::string> replies_;
};

// POST {endpoint}/generate {"prompt":..., "max_tokens":N} -> {"text":...}.
class HttpLLMClient : public LLMClient {
 public:
  explicit HttpLLMClient(std::string endpoint, int timeout_seconds = 120);

  std::string Generate(std::string_view prompt, int max_tokens) override;
  std::string name() const override { return "http:" + endpoint_; }

 private:
  std::string endpoint_;
  int timeout_seconds_;
};

// "mock" or "http" (endpoint required). Throws UsageError otherwise.
std::unique_ptr<LLMClient> MakeLLMClient(std::string_view kind,
                                         const std::string& endpoint);

}  // namespace tdpr

#endif  // TDPR_LLM_CLIENT_H_
