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

#include "tdpr/corpus.h"

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "tdpr/error.h"
#include "tdpr/tokenizer.h"

namespace tdpr {
namespace {

using LineMap = std::unordered_map<std::string, size_t>;

std::string Where(const LineMap* lines, std::string_view source,
                  const std::string& key) {
  if (lines == nullptr) return "";
  auto it = lines->find(key);
  if (it == lines->end()) return "";
  std::ostringstream os;
  os << source << ":" << it->second << ": ";
  return os.str();
}

// `lines` maps "p:<id>" / "t:<id>" to source line numbers when available.
void ValidateCorpus(const Corpus& corpus, int token_limit,
                    const LineMap* lines, std::string_view source) {
  std::unordered_set<std::string> captioned;
  for (const Passage& p : corpus.passages()) {
    const std::string where = Where(lines, source, "p:" + p.passage_id);
    if (corpus.FindDocument(p.doc_id) == nullptr) {
      throw DataError(where + "passage '" + p.passage_id +
                      "' references unknown doc_id '" + p.doc_id + "'");
    }
    if (p.is_table_proxy()) {
      if (!p.table_id) {
        throw DataError(where + "table passage '" + p.passage_id +
                        "' has no table_id");
      }
      if (corpus.FindTable(*p.table_id) == nullptr) {
        throw DataError(where + "passage '" + p.passage_id +
                        "' references unknown table_id '" + *p.table_id +
                        "'");
      }
      if (p.kind == PassageKind::kTableCaption) captioned.insert(*p.table_id);
    } else {
      if (p.table_id) {
        throw DataError(where + "text passage '" + p.passage_id +
                        "' must not carry a table_id");
      }
      if (token_limit > 0 && p.token_count > token_limit) {
        throw DataError(where + "text passage '" + p.passage_id + "' has " +
                        std::to_string(p.token_count) +
                        " tokens, above the limit of " +
                        std::to_string(token_limit));
      }
    }
  }
  for (const TableRecord& t : corpus.tables()) {
    const std::string where = Where(lines, source, "t:" + t.table_id);
    if (corpus.FindDocument(t.doc_id) == nullptr) {
      throw DataError(where + "table '" + t.table_id +
                      "' references unknown doc_id '" + t.doc_id + "'");
    }
    if (t.markdown.empty() || t.markdown.front() != '|') {
      throw DataError(where + "table '" + t.table_id +
                      "' markdown must start with '|'");
    }
    if (!captioned.contains(t.table_id)) {
      throw DataError(where + "table '" + t.table_id +
                      "' is not referenced by any table_caption passage");
    }
  }
}

std::vector<std::string> StringList(const nlohmann::json& j,
                                    const char* field) {
  std::vector<std::string> out;
  if (!j.contains(field) || j.at(field).is_null()) return out;
  for (const auto& v : j.at(field)) out.push_back(v.get<std::string>());
  return out;
}

std::string OptString(const nlohmann::json& j, const char* field) {
  if (!j.contains(field) || j.at(field).is_null()) return "";
  return j.at(field).get<std::string>();
}

}  // namespace

std::string_view PassageKindName(PassageKind kind) {
  switch (kind) {
    case PassageKind::kText:
      return "text";
    case PassageKind::kTableCaption:
      return "table_caption";
    case PassageKind::kTableSummary:
      return "table_summary";
  }
  return "text";
}

PassageKind ParsePassageKind(std::string_view name) {
  if (name == "text") return PassageKind::kText;
  if (name == "table_caption") return PassageKind::kTableCaption;
  if (name == "table_summary") return PassageKind::kTableSummary;
  throw DataError("unknown passage kind '" + std::string(name) + "'");
}

Passage MakePassage(std::string passage_id, std::string doc_id,
                    std::vector<std::string> section_path, PassageKind kind,
                    std::string text, std::optional<std::string> table_id) {
  Passage p;
  p.passage_id = std::move(passage_id);
  p.doc_id = std::move(doc_id);
  p.section_path = std::move(section_path);
  p.kind = kind;
  p.token_count = CountTokens(text);
  p.text = std::move(text);
  p.table_id = std::move(table_id);
  return p;
}

void Corpus::AddDocument(DocumentRecord doc) {
  if (doc.doc_id.empty()) throw DataError("document with empty doc_id");
  for (const auto& s : doc.sections) {
    if (s.depth < 1) {
      throw DataError("document '" + doc.doc_id + "' has section '" +
                      s.number + "' with depth < 1");
    }
  }
  if (!doc_index_.emplace(doc.doc_id, documents_.size()).second) {
    throw DataError("duplicate doc_id '" + doc.doc_id + "'");
  }
  documents_.push_back(std::move(doc));
}

void Corpus::AddPassage(Passage passage) {
  if (passage.passage_id.empty()) {
    throw DataError("passage with empty passage_id");
  }
  if (!passage_index_.emplace(passage.passage_id, passages_.size()).second) {
    throw DataError("duplicate passage_id '" + passage.passage_id + "'");
  }
  passages_.push_back(std::move(passage));
}

void Corpus::AddTable(TableRecord table) {
  if (table.table_id.empty()) throw DataError("table with empty table_id");
  table.token_count = CountTokens(table.markdown);
  if (!table_index_.emplace(table.table_id, tables_.size()).second) {
    throw DataError("duplicate table_id '" + table.table_id + "'");
  }
  tables_.push_back(std::move(table));
}

void Corpus::Validate(int token_limit) const {
  ValidateCorpus(*this, token_limit, nullptr, "");
}

const DocumentRecord* Corpus::FindDocument(std::string_view doc_id) const {
  auto it = doc_index_.find(std::string(doc_id));
  return it == doc_index_.end() ? nullptr : &documents_[it->second];
}

const Passage* Corpus::FindPassage(std::string_view passage_id) const {
  auto it = passage_index_.find(std::string(passage_id));
  return it == passage_index_.end() ? nullptr : &passages_[it->second];
}

const TableRecord* Corpus::FindTable(std::string_view table_id) const {
  auto it = table_index_.find(std::string(table_id));
  return it == table_index_.end() ? nullptr : &tables_[it->second];
}

const DocumentRecord& Corpus::document(std::string_view doc_id) const {
  const auto* d = FindDocument(doc_id);
  if (d == nullptr) {
    throw DataError("unknown doc_id '" + std::string(doc_id) + "'");
  }
  return *d;
}

const Passage& Corpus::passage(std::string_view passage_id) const {
  const auto* p = FindPassage(passage_id);
  if (p == nullptr) {
    throw DataError("unknown passage_id '" + std::string(passage_id) + "'");
  }
  return *p;
}

const TableRecord& Corpus::table(std::string_view table_id) const {
  const auto* t = FindTable(table_id);
  if (t == nullptr) {
    throw DataError("unknown table_id '" + std::string(table_id) + "'");
  }
  return *t;
}

bool Corpus::operator==(const Corpus& other) const {
  return documents_ == other.documents_ && passages_ == other.passages_ &&
         tables_ == other.tables_;
}

Corpus ParseCorpus(std::istream& in, std::string_view source_name,
                   const LoadOptions& options) {
  Corpus corpus;
  LineMap lines;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::ostringstream where;
    where << source_name << ":" << line_no << ": ";
    try {
      const auto j = nlohmann::json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (type == "document") {
        DocumentRecord doc;
        doc.doc_id = j.at("doc_id").get<std::string>();
        doc.title = OptString(j, "title");
        doc.abstract = OptString(j, "abstract");
        doc.release = OptString(j, "release");
        if (j.contains("sections") && !j.at("sections").is_null()) {
          for (const auto& s : j.at("sections")) {
            doc.sections.push_back({s.at("number").get<std::string>(),
                                    s.at("title").get<std::string>(),
                                    s.at("depth").get<int>()});
          }
        }
        corpus.AddDocument(std::move(doc));
      } else if (type == "passage") {
        std::optional<std::string> table_id;
        if (j.contains("table_id") && !j.at("table_id").is_null()) {
          table_id = j.at("table_id").get<std::string>();
        }
        Passage p = MakePassage(
            j.at("passage_id").get<std::string>(),
            j.at("doc_id").get<std::string>(), StringList(j, "section_path"),
            ParsePassageKind(j.at("kind").get<std::string>()),
            j.at("text").get<std::string>(), std::move(table_id));
        lines["p:" + p.passage_id] = line_no;
        corpus.AddPassage(std::move(p));
      } else if (type == "table") {
        TableRecord t;
        t.table_id = j.at("table_id").get<std::string>();
        t.doc_id = j.at("doc_id").get<std::string>();
        t.section_path = StringList(j, "section_path");
        t.caption = OptString(j, "caption");
        t.markdown = j.at("markdown").get<std::string>();
        t.summary = OptString(j, "summary");
        lines["t:" + t.table_id] = line_no;
        corpus.AddTable(std::move(t));
      } else {
        throw DataError("unknown record type '" + type + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw DataError(where.str() + "malformed record: " + e.what());
    } catch (const DataError& e) {
      throw DataError(where.str() + e.what());
    }
  }
  ValidateCorpus(corpus, options.token_limit, &lines, source_name);
  return corpus;
}

Corpus LoadCorpus(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus file '" + path + "'");
  return ParseCorpus(in, path, options);
}

void WriteCorpus(const Corpus& corpus, std::ostream& out) {
  using nlohmann::ordered_json;
  for (const auto& d : corpus.documents()) {
    ordered_json j;
    j["type"] = "document";
    j["doc_id"] = d.doc_id;
    j["title"] = d.title;
    j["abstract"] = d.abstract;
    j["release"] = d.release;
    j["sections"] = ordered_json::array();
    for (const auto& s : d.sections) {
      ordered_json sj;
      sj["number"] = s.number;
      sj["title"] = s.title;
      sj["depth"] = s.depth;
      j["sections"].push_back(std::move(sj));
    }
    out << j.dump() << '\n';
  }
  for (const auto& p : corpus.passages()) {
    ordered_json j;
    j["type"] = "passage";
    j["passage_id"] = p.passage_id;
    j["doc_id"] = p.doc_id;
    j["section_path"] = p.section_path;
    j["kind"] = PassageKindName(p.kind);
    j["text"] = p.text;
    j["table_id"] = p.table_id ? ordered_json(*p.table_id) : ordered_json();
    out << j.dump() << '\n';
  }
  for (const auto& t : corpus.tables()) {
    ordered_json j;
    j["type"] = "table";
    j["table_id"] = t.table_id;
    j["doc_id"] = t.doc_id;
    j["section_path"] = t.section_path;
    j["caption"] = t.caption;
    j["markdown"] = t.markdown;
    j["summary"] = t.summary;
    out << j.dump() << '\n';
  }
}

void SaveCorpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write corpus file '" + path + "'");
  WriteCorpus(corpus, out);
}

StatsReport ComputeCorpusStats(const Corpus& corpus) {
  StatsReport s;
  s.n_documents = corpus.documents().size();
  s.n_passages = corpus.passages().size();
  s.n_tables = corpus.tables().size();
  for (const auto& d : corpus.documents()) {
    ++s.per_release_document_counts[d.release];
  }
  if (s.n_documents > 0) {
    s.tables_per_document_mean =
        static_cast<double>(s.n_tables) / static_cast<double>(s.n_documents);
  }
  double text_tokens = 0.0;
  for (const auto& p : corpus.passages()) {
    if (p.kind != PassageKind::kText) continue;
    ++s.n_text_passages;
    text_tokens += p.token_count;
  }
  if (s.n_text_passages > 0) {
    s.mean_tokens_text_passage =
        text_tokens / static_cast<double>(s.n_text_passages);
  }
  if (s.n_tables > 0) {
    double table_tokens = 0.0;
    for (const auto& t : corpus.tables()) table_tokens += t.token_count;
    s.mean_tokens_table = table_tokens / static_cast<double>(s.n_tables);
  }
  return s;
}

std::string FormatStats(const StatsReport& stats) {
  const auto opt = [](const std::optional<double>& v) {
    if (!v) return std::string("n/a");
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << *v;
    return os.str();
  };
  std::ostringstream os;
  os << "documents            " << stats.n_documents << '\n'
     << "passages             " << stats.n_passages << '\n'
     << "  text passages      " << stats.n_text_passages << '\n'
     << "tables               " << stats.n_tables << '\n'
     << "tables per document  " << opt(stats.tables_per_document_mean) << '\n'
     << "mean text tokens     " << opt(stats.mean_tokens_text_passage) << '\n'
     << "mean table tokens    " << opt(stats.mean_tokens_table) << '\n';
  for (const auto& [release, n] : stats.per_release_document_counts) {
    os << "release " << (release.empty() ? "(none)" : release) << "  " << n
       << '\n';
  }
  return os.str();
}

}  // namespace tdpr
