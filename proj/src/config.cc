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

#include "tdpr/config.h"

#include <cctype>
#include <fstream>
#include <istream>

#include "tdpr/error.h"

namespace tdpr {
namespace {

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool IsBareKey(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      return false;
    }
  }
  return true;
}

class ValueParser {
 public:
  explicit ValueParser(std::string_view text) : s_(text) {}

  std::string ParseTop() {
    SkipSpace();
    std::string out;
    if (Peek() == '[') {
      ++pos_;
      bool first = true;
      SkipSpace();
      while (Peek() != ']') {
        if (!first) {
          Expect(',');
          SkipSpace();
          if (Peek() == ']') break;  // trailing comma
        }
        if (!first) out += ',';
        out += ParseScalar();
        first = false;
        SkipSpace();
      }
      ++pos_;
    } else {
      out = ParseScalar();
    }
    SkipSpace();
    if (pos_ < s_.size() && s_[pos_] != '#') Fail("trailing characters");
    return out;
  }

 private:
  char Peek() const {
    if (pos_ >= s_.size()) Fail("unexpected end of value");
    return s_[pos_];
  }
  void Expect(char c) {
    if (Peek() != c) Fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void SkipSpace() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  [[noreturn]] void Fail(const std::string& what) const { throw UsageError(what); }

  std::string ParseScalar() {
    if (Peek() == '"') {
      ++pos_;
      std::string out;
      while (Peek() != '"') {
        char c = s_[pos_++];
        if (c == '\\') {
          const char e = Peek();
          ++pos_;
          switch (e) {
            case 'n': c = '\n'; break;
            case 't': c = '\t'; break;
            case '"': c = '"'; break;
            case '\\': c = '\\'; break;
            default: Fail(std::string("unsupported escape \\") + e);
          }
        }
        out += c;
      }
      ++pos_;
      return out;
    }
    const size_t start = pos_;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' ||
          c == '-' || c == '+' || c == '_') {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start) Fail("expected a value");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

std::vector<ConfigEntry> ParseConfig(std::istream& in,
                                     std::string_view source) {
  std::vector<ConfigEntry> entries;
  std::string section;
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string where =
        std::string(source) + ":" + std::to_string(line_no) + ": ";
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      const auto close = line.find(']');
      const std::string_view rest =
          close == std::string_view::npos ? "" : Trim(line.substr(close + 1));
      const std::string_view name =
          close == std::string_view::npos ? "" : Trim(line.substr(1, close - 1));
      if (!IsBareKey(name) || (!rest.empty() && rest.front() != '#')) {
        throw UsageError(where + "malformed section header");
      }
      section = name;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError(where + "expected 'key = value'");
    }
    const std::string_view key = Trim(line.substr(0, eq));
    if (!IsBareKey(key)) throw UsageError(where + "malformed key");
    try {
      ConfigEntry e;
      e.section = section;
      e.key = key;
      e.value = ValueParser(line.substr(eq + 1)).ParseTop();
      e.line = line_no;
      entries.push_back(std::move(e));
    } catch (const UsageError& err) {
      throw UsageError(where + err.what());
    }
  }
  return entries;
}

std::vector<ConfigEntry> LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  return ParseConfig(in, path);
}

}  // namespace tdpr
