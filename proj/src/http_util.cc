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

#include "http_util.h"

#include "httplib.h"
#include "tdpr/error.h"

namespace tdpr::internal {

HttpResponse PostJson(const std::string& endpoint, const std::string& path,
                      const std::string& body, int timeout_seconds) {
  std::string base = endpoint;
  std::string prefix;
  const auto scheme = base.find("://");
  const auto slash =
      base.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (slash != std::string::npos) {
    prefix = base.substr(slash);
    base.resize(slash);
  }
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

  httplib::Client client(base);
  if (!client.is_valid()) {
    throw ProviderError("invalid endpoint '" + endpoint + "'", false);
  }
  client.set_connection_timeout(timeout_seconds, 0);
  client.set_read_timeout(timeout_seconds, 0);
  client.set_write_timeout(timeout_seconds, 0);
  auto res = client.Post(prefix + path, body, "application/json");
  if (!res) {
    throw ProviderError("request to " + endpoint + path +
                        " failed: " + httplib::to_string(res.error()));
  }
  return {res->status, res->body};
}

}  // namespace tdpr::internal
