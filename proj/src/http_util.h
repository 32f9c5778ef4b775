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

#ifndef TDPR_SRC_HTTP_UTIL_H_
#define TDPR_SRC_HTTP_UTIL_H_

#include <string>

namespace tdpr::internal {

struct HttpResponse {
  int status = 0;
  std::string body;
};

// POSTs a JSON body to `endpoint` + `path`. `endpoint` may carry a path
// prefix ("http://host:8080/v1"). Transport failures raise ProviderError.
HttpResponse PostJson(const std::string& endpoint, const std::string& path,
                      const std::string& body, int timeout_seconds);

}  // namespace tdpr::internal

#endif  // TDPR_SRC_HTTP_UTIL_H_
