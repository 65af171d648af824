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

#include <stdexcept>
#include <string>

namespace vidassist {

// Broad failure classes. The CLI maps these onto exit codes and the
// service maps them onto HTTP status classes.
enum class ErrorKind {
  argument,    // caller passed something the contract forbids
  schema,      // a file or payload does not match its schema
  data,        // well-formed input that is semantically unusable
  budget,      // prompt does not fit the context window
  provider,    // model service failure (possibly retriable)
  prediction,  // the model answered but nothing usable could be parsed
  protocol,    // session state machine violation
  not_found,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Machine-readable code, e.g. "no_pending_suggestion".
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

class ProviderError : public Error {
 public:
  ProviderError(std::string code, const std::string& message, bool retriable, int attempts)
      : Error(ErrorKind::provider, std::move(code), message),
        retriable_(retriable),
        attempts_(attempts) {}

  bool retriable() const noexcept { return retriable_; }
  int attempts() const noexcept { return attempts_; }

 private:
  bool retriable_;
  int attempts_;
};

[[noreturn]] inline void throw_argument(const std::string& message) {
  throw Error(ErrorKind::argument, "invalid_argument", message);
}

[[noreturn]] inline void throw_schema(const std::string& message) {
  throw Error(ErrorKind::schema, "schema_violation", message);
}

const char* to_string(ErrorKind kind) noexcept;

}  // namespace vidassist
