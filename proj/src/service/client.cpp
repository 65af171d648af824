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

#include "vidassist/service/client.hpp"

#include <httplib.h>

#include "vidassist/core/errors.hpp"

namespace vidassist {

namespace {

ErrorKind kind_from_string(const std::string& s) {
  for (ErrorKind k : {ErrorKind::argument, ErrorKind::schema, ErrorKind::data, ErrorKind::budget,
                      ErrorKind::provider, ErrorKind::prediction, ErrorKind::protocol,
                      ErrorKind::not_found}) {
    if (s == to_string(k)) return k;
  }
  return ErrorKind::provider;
}

}  // namespace

HttpDriver::HttpDriver(const std::string& host, int port, std::optional<std::string> token)
    : client_(std::make_unique<httplib::Client>(host, port)), token_(std::move(token)) {
  client_->set_read_timeout(120, 0);
  if (token_) client_->set_bearer_token_auth(*token_);
}

HttpDriver::~HttpDriver() = default;

Json HttpDriver::call(const char* method, const std::string& path, const Json* body, int* status) {
  httplib::Result res = std::string(method) == "GET"
                            ? client_->Get(path)
                            : client_->Post(path, body ? body->dump() : "{}", "application/json");
  if (!res)
    throw ProviderError("unavailable",
                        "service unreachable: " + httplib::to_string(res.error()), true, 1);
  if (status) *status = res->status;
  Json j = res->body.empty() ? Json::object() : parse_json_text(res->body, path);
  if (res->status >= 400) {
    const Json& e = j.contains("error") ? j["error"] : Json::object();
    const std::string code = e.value("code", "http_" + std::to_string(res->status));
    const std::string message = e.value("message", res->body);
    const ErrorKind kind = kind_from_string(e.value("kind", "provider"));
    if (kind == ErrorKind::provider) throw ProviderError(code, message, res->status == 503, 1);
    throw Error(kind, code, message);
  }
  return j;
}

Json HttpDriver::get(const std::string& path) { return call("GET", path, nullptr, nullptr); }

Json HttpDriver::post(const std::string& path, const Json& body, int* status) {
  return call("POST", path, &body, status);
}

std::string HttpDriver::start(const StartRequest& request) {
  return json_field::string(post("/sessions", start_request_to_json(request)), "session_id",
                            "start reply");
}

void HttpDriver::ingest(const std::string& id, const std::vector<Narration>& narrations) {
  Json arr = Json::array();
  for (const auto& n : narrations) arr.push_back(narration_to_json(n));
  post("/sessions/" + id + "/ingest", {{"narrations", arr}});
}

NextStepResult HttpDriver::next(const std::string& id) {
  const Json j = post("/sessions/" + id + "/next", Json::object());
  NextStepResult r;
  r.index = json_field::integer(j, "suggestion_index", "next reply");
  r.instruction = json_field::string(j, "instruction", "next reply");
  r.done = json_field::boolean(j, "done", "next reply");
  r.system_error = json_field::boolean(j, "system_error", "next reply");
  return r;
}

OutcomeResult HttpDriver::outcome(const std::string& id, int index, Outcome outcome) {
  const Json j = post("/sessions/" + id + "/outcome", {{"index", index}, {"outcome", to_string(outcome)}});
  OutcomeResult r;
  r.phase = phase_from_string(json_field::string(j, "phase", "outcome reply"));
  r.consecutive_skips = json_field::integer(j, "consecutive_skips", "outcome reply");
  r.executed_count = json_field::integer(j, "executed_count", "outcome reply");
  if (j.contains("end_reason") && !j["end_reason"].is_null())
    r.end_reason = end_reason_from_string(j["end_reason"].get<std::string>());
  return r;
}

SessionReport HttpDriver::finalize(const std::string& id, bool participant, bool admin) {
  return session_report_from_json(
      post("/sessions/" + id + "/finalize", {{"participant", participant}, {"admin", admin}}));
}

SessionReport HttpDriver::report(const std::string& id) {
  return session_report_from_json(get("/sessions/" + id + "/report"));
}

}  // namespace vidassist
