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

#include "tdpr/table_summary.h"

#include "tdpr/error.h"
#include "tdpr/prompts.h"

namespace tdpr {

TableSummary SummarizeTable(const TableRecord& table, LLMClient& llm,
                            int max_tokens) {
  if (table.markdown.empty()) {
    throw DataError("table '" + table.table_id + "' has empty markdown");
  }
  TableSummary out;
  try {
    std::string reply =
        llm.Generate(BuildTableSummaryPrompt(table.caption, table.markdown),
                     max_tokens);
    const auto b = reply.find_first_not_of(" \t\r\n");
    if (b != std::string::npos) {
      const auto e = reply.find_last_not_of(" \t\r\n");
      out.text = reply.substr(b, e - b + 1);
      return out;
    }
    out.diagnostic = "empty reply from " + llm.name();
  } catch (const ProviderError& e) {
    out.diagnostic = e.what();
  }
  out.text = RuleBasedTableSummary(table.caption, table.markdown);
  out.fallback = true;
  return out;
}

}  // namespace tdpr
