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

#ifndef TDPR_INGEST_H_
#define TDPR_INGEST_H_

#include <string>
#include <vector>

#include "tdpr/corpus.h"
#include "tdpr/llm_client.h"
#include "tdpr/splitter.h"

namespace tdpr {

struct IngestOptions {
  int token_limit = kPassageTokenLimit;
  int min_tokens = kDefaultMinTokens;
  // Null means Jaccard over analyzed terms.
  const SentenceSimilarity* similarity = nullptr;
};

struct IngestReport {
  size_t paragraphs_split = 0;
  size_t passages_merged = 0;
  size_t summaries_generated = 0;
  size_t summary_fallbacks = 0;
  std::vector<std::string> warnings;
};

// Turns a raw corpus (text passages of any length) into a conforming one:
// over-limit text passages are split ("<id>~<n>" ids), short neighbours are
// aggregated, tables without a summary get one from `llm`, and each table
// gains a table_summary proxy passage ("<table_id>~summary") right after its
// caption passage when it has none. Running it on its own output is a no-op.
Corpus IngestCorpus(const Corpus& raw, LLMClient& llm,
                    const IngestOptions& options = {},
                    IngestReport* report = nullptr);

}  // namespace tdpr

#endif  // TDPR_INGEST_H_
