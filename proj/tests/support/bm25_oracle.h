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

#ifndef TDPR_TESTS_SUPPORT_BM25_ORACLE_H_
#define TDPR_TESTS_SUPPORT_BM25_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tdpr::testing {

// Five passages with single-token words only, so tokenization is trivial.
inline const std::vector<std::string> kBm25HandCorpus = {
    "the gnb transmits the ssb", "the ue receives the ssb and the pbch",
    "handover is triggered by the gnb", "the amf and the upf",
    "ssb ssb ssb beam"};

// Okapi scores of each hand-corpus passage (p1..p5) for a few queries,
// evaluated independently to 40 significant digits and rounded.
inline std::map<std::vector<std::string>, std::vector<double>>
Bm25HandScores() {
  return {
      {{"ssb"},
       {0.56370431995133309874, 0.45859370780571159552, 0.0, 0.0,
        0.90223327296558476945}},
      {{"the", "gnb"},
       {1.3234536457434671657, 0.41404709493060058716, 1.1301276006944785673,
        0.40785306474176536548, 0.0}},
      {{"handover", "ssb", "ssb"},
       {1.1274086399026661975, 0.91718741561142319104, 1.346935846135414229,
        0.0, 1.8044665459311695389}},
      {{"upf", "missing"}, {0.0, 0.0, 0.0, 1.4498426595073898492, 0.0}},
  };
}

// Exhaustive BM25 oracle written from the formula (k1 = 1.2, b = 0.75):
// every passage, named p%03zu by position, is scored directly from its raw
// term list.
inline std::vector<std::pair<std::string, double>> Bm25OracleRanking(
    const std::vector<std::vector<std::string>>& docs,
    const std::vector<std::string>& query, int k) {
  const double n = static_cast<double>(docs.size());
  double total = 0;
  for (const auto& d : docs) total += static_cast<double>(d.size());
  const double avg = total / n;
  std::vector<std::pair<std::string, double>> scored;
  for (size_t i = 0; i < docs.size(); ++i) {
    double s = 0.0;
    for (const auto& t : query) {
      const double tf =
          static_cast<double>(std::count(docs[i].begin(), docs[i].end(), t));
      if (tf == 0) continue;
      double df = 0;
      for (const auto& d : docs) {
        if (std::find(d.begin(), d.end(), t) != d.end()) df += 1;
      }
      const double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
      const double len = static_cast<double>(docs[i].size());
      s += idf * tf * (1.2 + 1.0) / (tf + 1.2 * (1.0 - 0.75 + 0.75 * len / avg));
    }
    char id[32];
    std::snprintf(id, sizeof(id), "p%03zu", i);
    if (s > 0) scored.emplace_back(id, s);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (scored.size() > static_cast<size_t>(k)) scored.resize(k);
  return scored;
}

}  // namespace tdpr::testing

#endif  // TDPR_TESTS_SUPPORT_BM25_ORACLE_H_
