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

#include "vidassist/prompting/goldens.hpp"

#include <fstream>
#include <sstream>

#include "vidassist/core/io.hpp"
#include "vidassist/prompting/prompt.hpp"
#include "vidassist/prompting/templates.hpp"

namespace vidassist::goldens {

namespace {

std::vector<RetrievedExample> lta_examples() {
  const std::vector<std::vector<std::string>> lists = {
      {"take knife", "cut tomato", "put knife", "wash cup"},
      {"open fridge", "take milk", "pour milk", "put milk"},
      {"take pan", "put pan", "open drawer", "take spoon"},
      {"wash tomato", "cut tomato", "put tomato", "take bread"},
      {"take cup", "wash cup", "put cup", "open cupboard"},
      {"take bread", "cut bread", "put bread", "take knife"},
      {"open tap", "wash pan", "close tap", "put pan"},
      {"take spoon", "stir pot", "put spoon", "close lid"},
  };
  std::vector<RetrievedExample> out;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    PromptExample e;
    e.example_id = "golden-" + std::to_string(i + 1);
    e.narrations = lists[i];
    out.push_back({e, 1.0 - 0.1 * static_cast<double>(i)});
  }
  return out;
}

std::vector<RetrievedExample> vpa_examples() {
  std::vector<RetrievedExample> out;
  PromptExample a;
  a.example_id = "golden-vpa-1";
  a.goal = "Make pancakes";
  a.narrations = {"Pour flour into a bowl", "Crack an egg into the bowl", "Whisk the batter",
                  "Pour batter into the pan"};
  PromptExample b;
  b.example_id = "golden-vpa-2";
  b.goal = "Make tea";
  b.narrations = {"Boil water in the kettle", "Put a tea bag in the cup",
                  "Pour hot water into the cup"};
  out.push_back({a, 0.9});
  out.push_back({b, 0.8});
  return out;
}

VisualHistory history_of(const std::vector<std::string>& texts) {
  VisualHistory h;
  double t = 0.0;
  for (const auto& s : texts) {
    h.narrations.push_back({s, t, t + 2.0, NarrationSource::ground_truth, std::nullopt});
    t += 2.0;
  }
  return h;
}

const std::vector<std::string> kLatteHistory = {
    "A person gets a cup and puts it in the espresso machine",
    "A person pulls a double espresso shot",
};

const std::vector<std::string> kLowLevel = {
    "A person picks up a cup",        "A person looks at the espresso machine",
    "A person puts the cup down",     "A person places the cup under the spout",
    "A person presses a button",      "A person waits by the machine",
    "A person opens the fridge",      "A person takes out the milk",
    "A person closes the fridge",     "A person picks up a metal pitcher",
    "A person pours milk into the pitcher", "A person puts the milk carton down",
};

}  // namespace

std::vector<GoldenCase> render_cases() {
  const std::string v = "." + std::string(templates::kVersion) + ".txt";
  std::vector<GoldenCase> out;

  const VisualHistory lta_history =
      history_of({"take cup", "wash cup", "put cup", "open fridge", "take milk", "pour milk",
                  "put milk", "take spoon"});
  out.push_back({"lta_z20" + v, lta_prompt_parts(lta_examples(), lta_history, 20).render_all()});
  out.push_back({"lta_no_text_history_z20" + v, vision_only_prompt_parts(20).render_all()});

  const VisualHistory latte = history_of(kLatteHistory);
  out.push_back({"vpa_goal_z3" + v,
                 vpa_prompt_parts("Make a latte", vpa_examples(), latte, 3, true).render_all()});
  out.push_back({"vpa_no_goal_z3" + v,
                 vpa_prompt_parts("Make a latte", vpa_examples(), latte, 3, false).render_all()});
  out.push_back({"summarize" + v, summarization_prompt("make a latte", kLowLevel)});
  out.push_back({"goal_generation" + v, goal_generation_prompt(kLowLevel)});
  return out;
}

std::vector<GoldenResult> check(const std::filesystem::path& dir) {
  std::vector<GoldenResult> out;
  for (const auto& c : render_cases()) {
    GoldenResult r;
    r.file = c.file;
    const auto path = dir / c.file;
    if (!std::filesystem::exists(path)) {
      r.detail = "missing " + path.string();
      out.push_back(r);
      continue;
    }
    const std::string golden = read_text_file(path);
    r.ok = golden == c.text;
    if (!r.ok) {
      std::istringstream a(golden), b(c.text);
      std::string la, lb;
      int line = 1;
      while (true) {
        const bool ga = static_cast<bool>(std::getline(a, la));
        const bool gb = static_cast<bool>(std::getline(b, lb));
        if (!ga && !gb) {
          r.detail = "trailing bytes differ";
          break;
        }
        if (ga != gb || la != lb) {
          r.detail = "line " + std::to_string(line) + ": golden \"" + (ga ? la : "<eof>") +
                     "\" vs rendered \"" + (gb ? lb : "<eof>") + "\"";
          break;
        }
        ++line;
      }
    }
    out.push_back(r);
  }
  return out;
}

void update(const std::filesystem::path& dir) {
  for (const auto& c : render_cases()) write_text_file(dir / c.file, c.text);
}

}  // namespace vidassist::goldens
