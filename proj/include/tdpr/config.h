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

#ifndef TDPR_CONFIG_H_
#define TDPR_CONFIG_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tdpr {

// One `key = value` line of a TOML-style config file.
struct ConfigEntry {
  std::string section;  // "" before the first [section] header
  std::string key;
  std::string value;    // unquoted; arrays are kept as "a,b,c"
  size_t line = 0;
};

// Accepts `[section]` headers, `key = value` pairs, '#' comments, basic
// double-quoted strings (with \" \\ \n \t escapes), bare numbers and
// booleans, and flat arrays of those. Throws UsageError with the line number
// on anything else.
std::vector<ConfigEntry> ParseConfig(std::istream& in,
                                     std::string_view source);
std::vector<ConfigEntry> LoadConfig(const std::string& path);

}  // namespace tdpr

#endif  // TDPR_CONFIG_H_
