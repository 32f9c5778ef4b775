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

#include "tdpr/ingest.h"

#include <map>
#include <set>

#include "tdpr/table_summary.h"

namespace tdpr {

Corpus IngestCorpus(const Corpus& raw, LLMClient& llm,
                    const IngestOptions& options, IngestReport* report) {
  IngestReport local;
  IngestReport& rep = report != nullptr ? *report : local;
  const SentenceSimilarity& similarity =
      options.similarity != nullptr ? *options.similarity
                                    : SentenceSimilarity(JaccardSimilarity);

  std::vector<Passage> split;
  for (const auto& p : raw.passages()) {
    if (p.kind != PassageKind::kText || p.token_count <= options.token_limit) {
      split.push_back(p);
      continue;
    }
    SplitResult r = SplitParagraph(p.text, options.token_limit, similarity);
    for (const auto& w : r.warnings) {
      rep.warnings.push_back(p.passage_id + ": " + w.message);
    }
    ++rep.paragraphs_split;
    for (size_t i = 0; i < r.chunks.size(); ++i) {
      split.push_back(MakePassage(p.passage_id + "~" + std::to_string(i + 1),
                                  p.doc_id, p.section_path, PassageKind::kText,
                                  std::move(r.chunks[i])));
    }
  }
  std::vector<Passage> merged =
      AggregateShort(split, options.min_tokens, options.token_limit);
  rep.passages_merged += split.size() - merged.size();

  Corpus out;
  for (const auto& d : raw.documents()) out.AddDocument(d);

  std::map<std::string, std::string> summaries;
  std::set<std::string> has_summary_passage;
  for (const auto& p : merged) {
    if (p.kind == PassageKind::kTableSummary && p.table_id) {
      has_summary_passage.insert(*p.table_id);
    }
  }
  for (TableRecord t : raw.tables()) {
    if (t.summary.empty()) {
      TableSummary s = SummarizeTable(t, llm);
      if (s.fallback) {
        ++rep.summary_fallbacks;
        rep.warnings.push_back(t.table_id + ": summary fallback: " +
                               s.diagnostic);
      }
      ++rep.summaries_generated;
      t.summary = std::move(s.text);
    }
    summaries[t.table_id] = t.summary;
    out.AddTable(std::move(t));
  }

  for (auto& p : merged) {
    const bool caption = p.kind == PassageKind::kTableCaption && p.table_id;
    const std::string table_id = caption ? *p.table_id : "";
    const Passage copy = caption ? p : Passage{};
    out.AddPassage(std::move(p));
    if (caption && !has_summary_passage.contains(table_id)) {
      has_summary_passage.insert(table_id);
      out.AddPassage(MakePassage(table_id + "~summary", copy.doc_id,
                                 copy.section_path, PassageKind::kTableSummary,
                                 summaries.at(table_id), table_id));
    }
  }
  out.Validate(options.token_limit);
  return out;
}

}  // namespace tdpr
