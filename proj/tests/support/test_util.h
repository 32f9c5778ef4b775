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

#ifndef TDPR_TESTS_SUPPORT_TEST_UTIL_H_
#define TDPR_TESTS_SUPPORT_TEST_UTIL_H_

#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tdpr/corpus.h"

namespace tdpr::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "tdpr") {
    static int counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            (tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

inline std::string SampleDir() { return TDPR_SAMPLE_DIR; }

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline Corpus ParseCorpusText(const std::string& text,
                              const LoadOptions& options = {}) {
  std::istringstream in(text);
  return ParseCorpus(in, "<test>", options);
}

// Lowercase words drawn uniformly from a fixed synthetic vocabulary.
inline std::string RandomWord(std::mt19937_64& rng, int vocab = 200) {
  return "w" + std::to_string(rng() % static_cast<uint64_t>(vocab));
}

inline std::string RandomSentence(std::mt19937_64& rng, int min_words,
                                  int max_words, int vocab = 200) {
  const int n = min_words + static_cast<int>(rng() % static_cast<uint64_t>(
                                                 max_words - min_words + 1));
  std::string s;
  for (int i = 0; i < n; ++i) {
    if (i > 0) s += ' ';
    s += RandomWord(rng, vocab);
  }
  return s;
}

// Three documents, five text passages and one table with both proxies.
inline const char* kTinyCorpus =
    R"({"type":"document","doc_id":"D1","title":"Radio frames","abstract":"Frame timing.","release":"R15","sections":[{"number":"4","title":"Frames","depth":1}]}
{"type":"document","doc_id":"D2","title":"Handover","abstract":"Mobility procedures.","release":"R16","sections":[{"number":"9","title":"Mobility","depth":1},{"number":"9.2","title":"Handover","depth":2}]}
{"type":"document","doc_id":"D3","title":"UE categories","abstract":"Capabilities.","release":"R16","sections":[]}
{"type":"passage","passage_id":"D1#p1","doc_id":"D1","section_path":["Frames"],"kind":"text","text":"A radio frame lasts ten milliseconds and holds ten subframes.","table_id":null}
{"type":"passage","passage_id":"D1#p2","doc_id":"D1","section_path":["Frames"],"kind":"text","text":"Slots per subframe depend on the numerology.","table_id":null}
{"type":"passage","passage_id":"D2#p1","doc_id":"D2","section_path":["Mobility","Handover"],"kind":"text","text":"The source gNB sends a handover request over Xn.","table_id":null}
{"type":"passage","passage_id":"D2#p2","doc_id":"D2","section_path":["Mobility","Handover"],"kind":"text","text":"The target gNB answers with a handover acknowledgement.","table_id":null}
{"type":"passage","passage_id":"D3#p1","doc_id":"D3","section_path":[],"kind":"text","text":"A UE category bounds the peak data rate.","table_id":null}
{"type":"passage","passage_id":"D3#t1c","doc_id":"D3","section_path":[],"kind":"table_caption","text":"UE categories","table_id":"D3#t1"}
{"type":"passage","passage_id":"D3#t1s","doc_id":"D3","section_path":[],"kind":"table_summary","text":"UE categories \u2014 columns: Category, Max rate","table_id":"D3#t1"}
{"type":"table","table_id":"D3#t1","doc_id":"D3","section_path":[],"caption":"UE categories","markdown":"| Category | Max rate |\n|---|---|\n| 1 | 100 Mbps |","summary":"UE categories \u2014 columns: Category, Max rate"}
)";

}  // namespace tdpr::testing

#endif  // TDPR_TESTS_SUPPORT_TEST_UTIL_H_
