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

#ifndef TDPR_TABLE_SUMMARY_H_
#define TDPR_TABLE_SUMMARY_H_

#include <string>

#include "tdpr/corpus.h"
#include "tdpr/llm_client.h"

namespace tdpr {

struct TableSummary {
  std::string text;
  // Set when the client failed or returned nothing and the rule-based
  // summary was used instead.
  bool fallback = false;
  std::string diagnostic;
};

// Asks `llm` for a summary of the table. The reply is returned stripped of
// surrounding whitespace. Throws DataError when the markdown is empty.
TableSummary SummarizeTable(const TableRecord& table, LLMClient& llm,
                            int max_tokens = 256);

}  // namespace tdpr

#endif  // TDPR_TABLE_SUMMARY_H_
