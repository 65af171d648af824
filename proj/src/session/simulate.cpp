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

#include "vidassist/session/simulate.hpp"

#include <algorithm>
#include <set>

#include "vidassist/core/errors.hpp"
#include "vidassist/providers/script_oracle.hpp"

namespace vidassist {

namespace {

bool infeasible_in_variant(const std::string& instruction, const ActivityScript& script,
                           EmbeddingCache& cache, double threshold) {
  const auto q = cache.get(instruction);
  for (const auto& a : script.infeasible_actions())
    if (cosine(q, cache.get(a)) >= threshold - 1e-9) return true;
  return false;
}

}  // namespace

SessionReport simulate_user(SessionDriver& driver, const StartRequest& request,
                            const ActivityScript& script, EmbeddingCache& user_cache,
                            const SimPolicy& policy) {
  const std::string id = driver.start(request);
  std::set<std::string> done;
  double t = 0.0;
  auto narrate = [&](const ScriptStep& step) {
    std::vector<Narration> out;
    const double dt = policy.step_seconds / std::max(1, policy.narrations_per_step);
    for (int k = 0; k < std::max(1, policy.narrations_per_step); ++k) {
      out.push_back({stubs::step_narration(step), t, t + dt, NarrationSource::ground_truth, {}});
      t += dt;
    }
    return out;
  };

  std::vector<Narration> partial;
  for (const auto& id_step : script.partial_progress_step_ids()) {
    auto ns = narrate(script.step(id_step));
    partial.insert(partial.end(), ns.begin(), ns.end());
    done.insert(id_step);
  }
  driver.ingest(id, partial);

  std::vector<std::string> required;
  for (const auto& s : script.steps())
    if (!s.optional) required.push_back(s.step_id);
  auto all_required = [&] {
    return std::all_of(required.begin(), required.end(),
                       [&](const std::string& s) { return done.count(s) > 0; });
  };

  int errors = 0;
  // The protocol guarantees termination; the guard only catches a broken driver.
  const int guard = 4 * (script.step_cap() * (kSkipLimit + 1) + 1) * policy.max_assistant_errors;
  for (int turn = 0; turn < guard; ++turn) {
    const NextStepResult r = driver.next(id);
    if (r.system_error) {
      if (++errors >= policy.max_assistant_errors)
        throw Error(ErrorKind::provider, "assistant_failed",
                    "session " + id + ": assistant failed " + std::to_string(errors) +
                        " turns in a row");
      continue;
    }
    errors = 0;

    Outcome outcome = Outcome::skipped_irrelevant;
    std::vector<Narration> executed;
    if (r.done) {
      outcome = all_required() ? Outcome::executed : Outcome::skipped_infeasible;
    } else if (auto m = match_to_step(r.instruction, script, user_cache, policy.match_threshold);
               m.step_id) {
      const auto preds = script.predecessors(*m.step_id);
      const bool ready = std::all_of(preds.begin(), preds.end(),
                                     [&](const std::string& p) { return done.count(p) > 0; });
      if (done.count(*m.step_id)) {
        outcome = Outcome::skipped_redundant;
      } else if (!ready) {
        outcome = Outcome::skipped_infeasible;
      } else {
        outcome = Outcome::executed;
        done.insert(*m.step_id);
        executed = narrate(script.step(*m.step_id));
      }
    } else if (infeasible_in_variant(r.instruction, script, user_cache, policy.match_threshold)) {
      outcome = Outcome::skipped_infeasible;
    }

    const OutcomeResult res = driver.outcome(id, r.index, outcome);
    if (res.end_reason) {
      const bool ok = all_required();
      return driver.finalize(id, ok, ok);
    }
    if (!executed.empty()) driver.ingest(id, executed);
  }
  throw Error(ErrorKind::protocol, "no_termination", "session " + id + " did not terminate");
}

std::vector<std::vector<PredictorKind>> latin_square(int trials,
                                                     const std::vector<PredictorKind>& methods) {
  std::vector<std::vector<PredictorKind>> out;
  for (int i = 0; i < trials; ++i) {
    std::vector<PredictorKind> order = methods;
    if (!order.empty()) {
      std::rotate(order.begin(), order.begin() + (i % static_cast<int>(order.size())), order.end());
    }
    out.push_back(std::move(order));
  }
  return out;
}

}  // namespace vidassist
