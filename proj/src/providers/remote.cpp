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

#include "vidassist/providers/remote.hpp"

#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "vidassist/core/errors.hpp"

namespace vidassist::remote {

RemoteConfig remote_config_from_json(const Json& j, const std::string& where) {
  RemoteConfig c;
  c.endpoint = json_field::string(j, "endpoint", where);
  if (j.contains("name")) c.name = json_field::string(j, "name", where);
  if (j.contains("token_env")) c.token_env = json_field::string(j, "token_env", where);
  if (j.contains("context_limit")) c.context_limit = json_field::integer(j, "context_limit", where);
  if (j.contains("max_attempts")) c.max_attempts = json_field::integer(j, "max_attempts", where);
  if (j.contains("backoff_ms"))
    c.backoff = std::chrono::milliseconds(json_field::integer(j, "backoff_ms", where));
  if (j.contains("timeout_ms"))
    c.timeout = std::chrono::milliseconds(json_field::integer(j, "timeout_ms", where));
  if (j.contains("min_clip_seconds"))
    c.min_clip_seconds = json_field::number(j, "min_clip_seconds", where);
  if (c.max_attempts < 1) throw_schema(where + ".max_attempts: must be >= 1");
  if (c.context_limit < 1) throw_schema(where + ".context_limit: must be >= 1");
  return c;
}

Json post_with_retry(const RemoteConfig& cfg, const std::string& path, const Json& body) {
  httplib::Client client(cfg.endpoint);
  if (!client.is_valid()) {
    throw ProviderError("bad_endpoint", cfg.name + ": invalid endpoint '" + cfg.endpoint + "'",
                        false, 0);
  }
  client.set_connection_timeout(cfg.timeout);
  client.set_read_timeout(cfg.timeout);
  if (const char* token = std::getenv(cfg.token_env.c_str()); token && *token) {
    client.set_bearer_token_auth(token);
  }
  const std::string payload = body.dump();
  std::string last_error;
  auto delay = cfg.backoff;
  for (int attempt = 1; attempt <= cfg.max_attempts; ++attempt) {
    auto res = client.Post(path, payload, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
    } else if (res->status == 200) {
      try {
        return Json::parse(res->body);
      } catch (const Json::parse_error& e) {
        throw ProviderError("bad_response", cfg.name + path + ": response is not JSON: " + e.what(),
                            false, attempt);
      }
    } else if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
    } else {
      throw ProviderError("rejected",
                          cfg.name + path + ": HTTP " + std::to_string(res->status) + ": " + res->body,
                          false, attempt);
    }
    if (attempt < cfg.max_attempts) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
  }
  throw ProviderError("unavailable",
                      cfg.name + path + ": failed after " + std::to_string(cfg.max_attempts) +
                          " attempts (" + last_error + ")",
                      true, cfg.max_attempts);
}

namespace {

template <typename T>
T field_as(const RemoteConfig& cfg, const Json& j, const char* key, const char* path) {
  if (!j.is_object() || !j.contains(key)) {
    throw ProviderError("bad_response",
                        cfg.name + path + ": response lacks '" + std::string(key) + "'", false, 1);
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ProviderError("bad_response", cfg.name + path + ": field '" + key + "': " + e.what(),
                        false, 1);
  }
}

Json clip_ref(const VideoSegment& s) {
  return {{"start_s", s.start_s}, {"end_s", s.end_s}, {"frames", s.frame_refs}};
}

}  // namespace

RemoteLanguageModel::RemoteLanguageModel(RemoteConfig cfg) : cfg_(std::move(cfg)) {}

ProviderDescriptor RemoteLanguageModel::descriptor() const {
  return {ProviderKind::llm, cfg_.name, cfg_.context_limit, false, cfg_.endpoint};
}

std::string RemoteLanguageModel::do_complete(const CompletionRequest& request) {
  Json body = {{"prompt", request.prompt}, {"max_new_tokens", request.max_new_tokens}};
  if (request.vision_block) {
    body["vision_ref"] = request.vision_block->payload;
    body["vision_tokens"] = request.vision_block->token_count;
  }
  return field_as<std::string>(cfg_, post_with_retry(cfg_, "/v1/complete", body), "completion",
                               "/v1/complete");
}

RemoteEmbedder::RemoteEmbedder(RemoteConfig cfg) : cfg_(std::move(cfg)) {}

ProviderDescriptor RemoteEmbedder::descriptor() const {
  return {ProviderKind::embedder, cfg_.name, std::nullopt, false, cfg_.endpoint};
}

std::vector<EmbeddingVector> RemoteEmbedder::do_embed(std::span<const std::string> texts) {
  Json body = {{"texts", std::vector<std::string>(texts.begin(), texts.end())}};
  auto rows = field_as<std::vector<std::vector<float>>>(
      cfg_, post_with_retry(cfg_, "/v1/embed", body), "embeddings", "/v1/embed");
  if (rows.size() != texts.size()) {
    throw ProviderError("bad_response", cfg_.name + "/v1/embed: expected " +
                                            std::to_string(texts.size()) + " vectors, got " +
                                            std::to_string(rows.size()),
                        false, 1);
  }
  std::vector<EmbeddingVector> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.push_back({std::move(r)});
  return out;
}

RemoteNarrator::RemoteNarrator(RemoteConfig cfg) : cfg_(std::move(cfg)) {}

ProviderDescriptor RemoteNarrator::descriptor() const {
  return {ProviderKind::narrator, cfg_.name, std::nullopt, false, cfg_.endpoint};
}

std::vector<Narration> RemoteNarrator::do_narrate(const VideoSegment& clip, int k) {
  Json body = {{"clip_ref", clip_ref(clip)}, {"k", k}};
  const Json res = post_with_retry(cfg_, "/v1/narrate", body);
  const auto items = field_as<Json>(cfg_, res, "narrations", "/v1/narrate");
  std::vector<Narration> out;
  for (const auto& item : items) {
    Narration n;
    if (item.is_string()) {
      n.text = item.get<std::string>();
      n.start_s = clip.start_s;
      n.end_s = clip.end_s;
    } else {
      n = narration_from_json(item, cfg_.name + "/v1/narrate");
    }
    n.source = NarrationSource::narrator;
    out.push_back(std::move(n));
  }
  return out;
}

RemoteVisionEncoder::RemoteVisionEncoder(RemoteConfig cfg) : cfg_(std::move(cfg)) {}

ProviderDescriptor RemoteVisionEncoder::descriptor() const {
  return {ProviderKind::vision_encoder, cfg_.name, std::nullopt, false, cfg_.endpoint};
}

VisionTokenBlock RemoteVisionEncoder::do_encode(std::span<const VideoSegment> segments) {
  Json refs = Json::array();
  for (const auto& s : segments) refs.push_back(clip_ref(s));
  try {
    const Json res = post_with_retry(cfg_, "/v1/encode", {{"clip_refs", refs}});
    VisionTokenBlock block;
    block.token_count = field_as<int>(cfg_, res, "token_count", "/v1/encode");
    block.payload = field_as<std::string>(cfg_, res, "payload", "/v1/encode");
    if (block.token_count <= 0) {
      throw ProviderError("bad_response", cfg_.name + "/v1/encode: token_count must be positive",
                          false, 1);
    }
    return block;
  } catch (const ProviderError& e) {
    throw ProviderError(e.code(),
                        std::string(e.what()) + "; vision encoder unavailable, use the socratic "
                                                "pipeline instead",
                        e.retriable(), e.attempts());
  }
}

}  // namespace vidassist::remote
