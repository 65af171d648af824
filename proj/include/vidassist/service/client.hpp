// Copyright 2026 The vidassist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <memory>
#include <optional>
#include <string>

#include "vidassist/session/simulate.hpp"

namespace httplib {
class Client;
}

namespace vidassist {

/// SessionDriver speaking to a running service. Non-2xx replies are turned
/// back into the Error they were serialized from.
class HttpDriver final : public SessionDriver {
 public:
  HttpDriver(const std::string& host, int port, std::optional<std::string> token = std::nullopt);
  ~HttpDriver() override;

  std::string start(const StartRequest& request) override;
  void ingest(const std::string& id, const std::vector<Narration>& narrations) override;
  NextStepResult next(const std::string& id) override;
  OutcomeResult outcome(const std::string& id, int index, Outcome outcome) override;
  SessionReport finalize(const std::string& id, bool participant, bool admin) override;

  SessionReport report(const std::string& id);
  Json get(const std::string& path);
  Json post(const std::string& path, const Json& body, int* status = nullptr);

 private:
  Json call(const char* method, const std::string& path, const Json* body, int* status);

  std::unique_ptr<httplib::Client> client_;
  std::optional<std::string> token_;
};

}  // namespace vidassist
