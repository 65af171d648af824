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

#include "vidassist/session/session.hpp"

#include <algorithm>

#include "vidassist/core/errors.hpp"

namespace vidassist {

PredictorConfig SessionConfig::online_predictor(PredictorKind kind) {
  PredictorConfig c = kind == PredictorKind::vclm ? PredictorConfig::vclm(Task::vpa, 1)
                                                  : PredictorConfig::socratic(Task::vpa, 1);
  c.open_set_output = true;
  return c;
}

SkipBreakdown count_skips(const std::vector<SuggestionRecord>& suggestions) {
  SkipBreakdown b;
  for (const auto& s : suggestions) {
    switch (s.outcome) {
      case Outcome::skipped_redundant: ++b.redundant; break;
      case Outcome::skipped_infeasible: ++b.infeasible; break;
      case Outcome::skipped_irrelevant: ++b.irrelevant; break;
      default: break;
    }
  }
  return b;
}

namespace {

Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

std::optional<bool> optional_bool_from(const Json& j, const char* key, const std::string& where) {
  const Json& v = json_field::require(j, key, where);
  if (v.is_null()) return std::nullopt;
  if (!v.is_boolean()) throw_schema(where + "." + key + ": expected boolean or null");
  return v.get<bool>();
}

}  // namespace

Json session_report_to_json(const SessionReport& r) {
  Json partial = Json::array();
  for (const auto& n : r.partial_progress) partial.push_back(narration_to_json(n));
  Json suggestions = Json::array();
  for (const auto& s : r.suggestions) suggestions.push_back(suggestion_to_json(s));
  return {{"session_id", r.session_id},
          {"script_id", r.script_id},
          {"method", r.method},
          {"goal", r.goal},
          {"success", r.success},
          {"end_reason", r.end_reason ? Json(to_string(*r.end_reason)) : Json(nullptr)},
          {"end_detected", r.end_detected},
          {"online_miou", r.online_miou},
          {"executed_count", r.executed_count},
          {"skip_breakdown",
           {{"redundant", r.skip_breakdown.redundant},
            {"infeasible", r.skip_breakdown.infeasible},
            {"irrelevant", r.skip_breakdown.irrelevant}}},
          {"ratings",
           {{"participant", optional_bool(r.participant_rating)},
            {"admin", optional_bool(r.admin_rating)}}},
          {"partial_progress", partial},
          {"suggestions", suggestions}};
}

SessionReport session_report_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw_schema(where + ": expected an object");
  SessionReport r;
  r.session_id = json_field::string(j, "session_id", where);
  r.script_id = json_field::string(j, "script_id", where);
  r.method = json_field::string(j, "method", where);
  r.goal = json_field::string(j, "goal", where);
  r.success = json_field::boolean(j, "success", where);
  const Json& end = json_field::require(j, "end_reason", where);
  if (!end.is_null()) {
    if (!end.is_string()) throw_schema(where + ".end_reason: expected string or null");
    r.end_reason = end_reason_from_string(end.get<std::string>());
  }
  r.end_detected = json_field::boolean(j, "end_detected", where);
  r.online_miou = json_field::number(j, "online_miou", where);
  r.executed_count = json_field::integer(j, "executed_count", where);
  const Json& sb = json_field::require(j, "skip_breakdown", where);
  r.skip_breakdown.redundant = json_field::integer(sb, "redundant", where + ".skip_breakdown");
  r.skip_breakdown.infeasible = json_field::integer(sb, "infeasible", where + ".skip_breakdown");
  r.skip_breakdown.irrelevant = json_field::integer(sb, "irrelevant", where + ".skip_breakdown");
  const Json& ratings = json_field::require(j, "ratings", where);
  r.participant_rating = optional_bool_from(ratings, "participant", where + ".ratings");
  r.admin_rating = optional_bool_from(ratings, "admin", where + ".ratings");
  const Json& partial = json_field::require(j, "partial_progress", where);
  if (!partial.is_array()) throw_schema(where + ".partial_progress: expected an array");
  for (std::size_t i = 0; i < partial.size(); ++i)
    r.partial_progress.push_back(
        narration_from_json(partial[i], where + ".partial_progress[" + std::to_string(i) + "]"));
  const Json& sugg = json_field::require(j, "suggestions", where);
  if (!sugg.is_array()) throw_schema(where + ".suggestions: expected an array");
  for (std::size_t i = 0; i < sugg.size(); ++i)
    r.suggestions.push_back(
        suggestion_from_json(sugg[i], where + ".suggestions[" + std::to_string(i) + "]"));
  return r;
}

void write_session_report(const SessionReport& r, const std::filesystem::path& path) {
  write_text_file(path, session_report_to_json(r).dump(2) + "\n");
}

SessionReport read_session_report(const std::filesystem::path& path) {
  return session_report_from_json(parse_json_text(read_text_file(path), path.string()),
                                  path.string());
}

std::vector<SessionReport> read_session_reports(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw Error(ErrorKind::not_found, "not_found", "no session directory " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<SessionReport> out;
  for (const auto& f : files) out.push_back(read_session_report(f));
  return out;
}

double online_miou(const std::vector<SuggestionRecord>& suggestions, const ActivityScript& script,
                   EmbeddingCache& cache, double threshold) {
  std::vector<std::string> texts;
  for (const auto& s : suggestions) {
    if (s.done || s.outcome == Outcome::system_error) continue;
    texts.push_back(s.raw_text);
  }
  return step_set_iou(texts, script, cache, threshold).value;
}

Json outcome_result_to_json(const OutcomeResult& r) {
  return {{"phase", to_string(r.phase)},
          {"consecutive_skips", r.consecutive_skips},
          {"executed_count", r.executed_count},
          {"end_reason", r.end_reason ? Json(to_string(*r.end_reason)) : Json(nullptr)}};
}

Session::Session(std::string session_id, ActivityScript script, std::optional<std::string> goal,
                 SessionConfig cfg, SessionResources resources, std::shared_ptr<EventLog> events)
    : id_(std::move(session_id)),
      script_(std::move(script)),
      goal_(goal && !goal->empty() ? *goal : script_.goal_text()),
      cfg_(std::move(cfg)),
      res_(std::move(resources)),
      events_(events ? std::move(events) : std::make_shared<EventLog>()),
      protocol_(script_.n_eval()) {
  if (goal_.empty()) throw_argument("session " + id_ + ": missing goal");
  if (!res_.cache) {
    if (!res_.providers.embedder) throw_argument("session " + id_ + ": no embedder");
    res_.cache = std::make_shared<EmbeddingCache>(res_.providers.embedder);
  }
  cfg_.predictor.open_set_output = true;
  predictor_ = std::make_unique<Predictor>(cfg_.predictor, res_.providers, res_.pool, res_.cache);
  events_->append("session_started", {{"session_id", id_},
                                      {"script_id", script_.script_id()},
                                      {"method", to_string(cfg_.predictor.kind)},
                                      {"goal", goal_},
                                      {"n_eval", script_.n_eval()},
                                      {"step_cap", script_.step_cap()}});
}

void Session::ingest(const std::vector<Narration>& narrations) {
  if (phase() == Phase::completed)
    throw Error(ErrorKind::protocol, "session_completed", "ingest after the session ended");
  if (!frame_buffer_.empty() && !narrations.empty())
    throw Error(ErrorKind::argument, "mixed_ingest", "session already buffers frames");
  double last = narration_buffer_.empty() ? -1e300 : narration_buffer_.back().start_s;
  for (const auto& n : narrations) {
    n.validate();
    if (n.start_s < last)
      throw Error(ErrorKind::data, "out_of_order",
                  "narration at t=" + std::to_string(n.start_s) + " precedes t=" +
                      std::to_string(last));
    last = n.start_s;
  }
  for (const auto& n : narrations) {
    narration_buffer_.push_back(n);
    if (phase() == Phase::partial_progress) partial_progress_.push_back(n);
    media_time_ = std::max(media_time_, n.end_s);
  }
  events_->append("ingest", {{"kind", "narrations"},
                             {"count", narrations.size()},
                             {"media_time", media_time_}});
}

void Session::ingest(const std::vector<FrameRef>& frames) {
  if (phase() == Phase::completed)
    throw Error(ErrorKind::protocol, "session_completed", "ingest after the session ended");
  if (!narration_buffer_.empty() && !frames.empty())
    throw Error(ErrorKind::argument, "mixed_ingest", "session already buffers narrations");
  double last = frame_buffer_.empty() ? -1e300 : frame_buffer_.back().t;
  for (const auto& f : frames) {
    if (f.t < last)
      throw Error(ErrorKind::data, "out_of_order",
                  "frame " + f.ref + " at t=" + std::to_string(f.t) + " precedes t=" +
                      std::to_string(last));
    last = f.t;
  }
  frame_buffer_.insert(frame_buffer_.end(), frames.begin(), frames.end());
  if (!frames.empty())
    media_time_ = std::max(media_time_, frames.back().t + 1.0 / cfg_.stream.fps);
  events_->append("ingest", {{"kind", "frames"},
                             {"count", frames.size()},
                             {"media_time", media_time_}});
}

EncodedHistory Session::encode() {
  const bool vision = cfg_.predictor.kind == PredictorKind::vclm;
  if (!frame_buffer_.empty())
    return encode_online_history(frame_buffer_, goal_, cfg_.stream, res_.providers, *res_.cache,
                                 vision);
  return encode_online_history(narration_buffer_, goal_, cfg_.stream, res_.providers, *res_.cache,
                               vision);
}

NextStepResult Session::next_step() {
  if (phase() == Phase::completed)
    throw Error(ErrorKind::protocol, "session_completed", "the session has already ended");
  if (protocol_.pending())
    throw Error(ErrorKind::protocol, "pending_suggestion",
                "resolve previous outcome first (suggestion " +
                    std::to_string(*protocol_.pending()) + ")");
  if (phase() == Phase::partial_progress) {
    protocol_.begin_assistance();
    events_->append("assistance_started", {{"media_time", media_time_},
                                           {"partial_narrations", partial_progress_.size()}});
  }

  NextStepResult out;
  try {
    EncodedHistory enc = encode();
    ++summarizations_;
    events_->append("summarized", {{"raw_narrations", enc.raw_narrations},
                                   {"clusters", enc.clusters},
                                   {"fallback", enc.summary_fallback},
                                   {"narrations", enc.history.narration_texts()}});
    history_ = std::move(enc.history);
    Prediction details;
    try {
      out.instruction = predictor_->predict_next(history_, &details);
    } catch (...) {
      if (!details.prompt.text.empty())
        events_->append("prompt", {{"text", details.prompt.text},
                                   {"examples", details.prompt.examples_used}});
      throw;
    }
    events_->append("prompt", {{"text", details.prompt.text},
                               {"examples", details.prompt.examples_used}});
  } catch (const Error& e) {
    out.index = protocol_.issue_system_error();
    out.instruction = kRepeatRequest;
    out.system_error = true;
    SuggestionRecord rec{out.index, out.instruction, std::nullopt, Outcome::system_error,
                         media_time_, false};
    suggestions_.push_back(rec);
    events_->append("system_error", {{"index", out.index},
                                     {"kind", to_string(e.kind())},
                                     {"code", e.code()},
                                     {"message", e.what()}});
    return out;
  }

  out.done = detect_done(out.instruction, *res_.cache, cfg_.done_threshold);
  const auto match = match_to_step(out.instruction, script_, *res_.cache, cfg_.match_threshold);
  out.index = protocol_.issue(out.done);
  SuggestionRecord rec{out.index, out.instruction, match.step_id, Outcome::pending, media_time_,
                       out.done};
  suggestions_.push_back(rec);
  events_->append("suggestion", suggestion_to_json(rec));
  return out;
}

OutcomeResult Session::report_outcome(int index, Outcome outcome) {
  protocol_.resolve(index, outcome);
  suggestions_.at(static_cast<std::size_t>(index)).outcome = outcome;
  OutcomeResult r{protocol_.phase(), protocol_.consecutive_skips(), protocol_.executed_count(),
                  protocol_.end_reason()};
  events_->append("outcome", {{"index", index}, {"outcome", to_string(outcome)}});
  if (r.end_reason) events_->append("terminated", {{"end_reason", to_string(*r.end_reason)}});
  return r;
}

SessionReport Session::finalize(bool participant, bool admin) {
  if (phase() != Phase::completed)
    throw Error(ErrorKind::protocol, "session_active", "finalize needs a completed session");
  if (report_) throw Error(ErrorKind::protocol, "already_finalized", "session already finalized");
  SessionReport r;
  r.session_id = id_;
  r.script_id = script_.script_id();
  r.method = to_string(cfg_.predictor.kind);
  r.goal = goal_;
  r.participant_rating = participant;
  r.admin_rating = admin;
  r.success = participant && admin;
  r.end_reason = protocol_.end_reason();
  r.end_detected = r.end_reason == EndReason::done_step;
  r.online_miou = online_miou(suggestions_, script_, *res_.cache, cfg_.match_threshold);
  r.skip_breakdown = count_skips(suggestions_);
  r.suggestions = suggestions_;
  r.executed_count = protocol_.executed_count();
  r.partial_progress = partial_progress_;
  report_ = r;
  events_->append("finalized", {{"participant", participant},
                                {"admin", admin},
                                {"success", r.success},
                                {"online_miou", r.online_miou}});
  events_->close();
  return r;
}

const SessionReport& Session::report() const {
  if (!report_)
    throw Error(ErrorKind::protocol, "not_finalized", "session " + id_ + " is not finalized");
  return *report_;
}

Json Session::summary() const {
  const auto pending = protocol_.pending();
  return {{"session_id", id_},
          {"script_id", script_.script_id()},
          {"method", to_string(cfg_.predictor.kind)},
          {"goal", goal_},
          {"phase", to_string(phase())},
          {"consecutive_skips", protocol_.consecutive_skips()},
          {"executed_count", protocol_.executed_count()},
          {"step_cap", protocol_.step_cap()},
          {"pending", pending ? Json(*pending) : Json(nullptr)},
          {"end_reason", protocol_.end_reason() ? Json(to_string(*protocol_.end_reason()))
                                                : Json(nullptr)},
          {"suggestions", suggestions_.size()},
          {"finalized", report_.has_value()}};
}

}  // namespace vidassist
