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

// Operator entry point: benchmarks, simulated sessions, analysis, the HTTP
// service and prompt goldens.
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 provider error.

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vidassist/bench/jobs.hpp"
#include "vidassist/bench/synth.hpp"
#include "vidassist/core/errors.hpp"
#include "vidassist/prompting/goldens.hpp"
#include "vidassist/providers/registry.hpp"
#include "vidassist/providers/stubs.hpp"
#include "vidassist/service/server.hpp"
#include "vidassist/session/analysis.hpp"
#include "vidassist/session/resources.hpp"
#include "vidassist/session/simulate.hpp"

namespace fs = std::filesystem;
using namespace vidassist;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitProvider = 3;

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::argument: return kExitUsage;
    case ErrorKind::provider: return kExitProvider;
    default: return kExitData;
  }
}

fs::path data_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("VIDASSIST_DATA_DIR")) return env;
  return VIDASSIST_DEFAULT_DATA_DIR;
}

Json read_json(const fs::path& p) { return parse_json_text(read_text_file(p), p.string()); }

// "oracle[:mode]", "stub:FIXTURE" or "remote:URL" -> provider spec.
Json assistant_spec(const std::string& assistant, const fs::path& synonyms) {
  const auto colon = assistant.find(':');
  const std::string kind = assistant.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : assistant.substr(colon + 1);
  Json embedder = {{"type", "table"}, {"path", synonyms.string()}};
  if (kind == "oracle") return oracle_provider_spec(arg.empty() ? "perfect" : arg, synonyms);
  if (kind == "stub" && !arg.empty())
    return {{"llm", {{"type", "fixture"}, {"path", fs::absolute(arg).string()}}}, {"embedder", embedder}};
  if (kind == "remote" && !arg.empty())
    return {{"llm", {{"type", "remote"}, {"endpoint", arg}}}, {"embedder", embedder}};
  throw_argument("--assistant must be oracle[:mode], stub:FILE or remote:URL, got '" + assistant + "'");
}

ActivityScript resolve_script(const std::string& script, const fs::path& scripts_dir) {
  if (fs::exists(script) && fs::is_regular_file(script)) return load_script(script);
  return ScriptLibrary::load_dir(scripts_dir).get(script);
}

void print_table(const metrics::MetricReport& r, const std::string& label) {
  std::cout << metrics::format_table({r}, {label});
  std::cout << "evaluated " << r.evaluated << ", skipped " << r.skipped << "\n";
  for (const auto& f : r.flags) std::cout << "flag: " << f << "\n";
}

struct Common {
  std::string data;
  int workers = 0;
  std::uint64_t seed = 7;
};

// --- bench -----------------------------------------------------------------

struct BenchArgs {
  std::string config, dataset, vocab, pool, sessions, scripts, providers, predictor, out,
      assistant;
  std::optional<int> z;
  std::optional<bool> goal;
};

int run_bench_cmd(const std::string& kind, const BenchArgs& a, const Common& common) {
  Json j = Json::object();
  fs::path base = fs::current_path();
  if (!a.config.empty()) {
    j = read_json(a.config);
    base = fs::absolute(a.config).parent_path();
  }
  const fs::path cwd = fs::current_path();
  auto set_path = [&](const char* key, const std::string& v) {
    if (!v.empty()) j[key] = fs::absolute(cwd / v).string();
  };
  set_path("dataset", a.dataset);
  set_path("vocabulary", a.vocab);
  set_path("pool", a.pool);
  set_path("sessions", a.sessions);
  set_path("scripts", a.scripts);
  if (!a.providers.empty()) j["providers"] = read_json(a.providers);
  if (!a.assistant.empty()) j["providers"] = assistant_spec(a.assistant, data_dir(common.data) / "synonyms.json");
  if (!a.predictor.empty()) {
    Json p = j.value("predictor", Json::object());
    p["kind"] = a.predictor;
    if (a.predictor == "vclm" && !p.contains("vision_tokens")) p["vision_tokens"] = kVisionTokens;
    j["predictor"] = p;
  }
  if (kind == "rerun" && !j.contains("scripts"))
    j["scripts"] = (data_dir(common.data) / "scripts").string();
  if (a.z) j["z"] = *a.z;
  if (a.goal) j["goal_conditioning"] = *a.goal;
  if (common.workers > 0) j["workers"] = common.workers;

  bench::BenchRequest req = bench::bench_request_from_json(kind, j, base);
  if (!a.out.empty()) req.run.log_dir = fs::absolute(a.out);
  const metrics::MetricReport report = bench::run_bench(req);
  print_table(report, kind);
  return 0;
}

// --- simulate ----------------------------------------------------------------

struct SimArgs {
  std::string script = "caprese";
  std::string assistant = "oracle";
  std::string scripts;
  std::string out;
  std::string pool;
  std::vector<std::string> methods = {"socratic"};
  int trials = 1;
  bool latin_square = false;
};

int run_simulate(const SimArgs& a, const Common& common) {
  const fs::path data = data_dir(common.data);
  const fs::path scripts_dir = a.scripts.empty() ? data / "scripts" : fs::path(a.scripts);
  const fs::path synonyms = data / "synonyms.json";
  if (a.trials <= 0) throw_argument("--trials must be positive");

  const ActivityScript script = resolve_script(a.script, scripts_dir);
  ScriptLibrary lib;
  lib.add(script);
  std::optional<fs::path> pool;
  if (!a.pool.empty()) pool = a.pool;
  std::optional<fs::path> events;
  if (!a.out.empty()) events = fs::path(a.out) / "events";
  SessionManager manager(lib, spec_resource_factory(assistant_spec(a.assistant, synonyms), data, pool),
                         {}, events);
  InProcessDriver driver(manager);
  EmbeddingCache user_cache(stubs::load_table_embedder(synonyms));

  std::vector<PredictorKind> methods;
  for (const auto& m : a.methods) methods.push_back(predictor_kind_from_string(m));
  if (a.latin_square && methods.size() < 2) methods = {PredictorKind::socratic, PredictorKind::vclm};
  const auto orders = a.latin_square ? latin_square(a.trials, methods)
                                     : std::vector<std::vector<PredictorKind>>(a.trials, methods);

  std::vector<SessionReport> reports;
  int successes = 0;
  for (const auto& order : orders) {
    for (PredictorKind m : order) {
      StartRequest req;
      req.script_id = script.script_id();
      req.method = m;
      SessionReport r = simulate_user(driver, req, script, user_cache);
      std::printf("%s %-8s %-8s success=%s end=%s miou=%.3f executed=%d skips=%d/%d/%d\n",
                  r.session_id.c_str(), r.script_id.c_str(), r.method.c_str(),
                  r.success ? "true" : "false",
                  r.end_reason ? to_string(*r.end_reason) : "-", r.online_miou, r.executed_count,
                  r.skip_breakdown.redundant, r.skip_breakdown.infeasible,
                  r.skip_breakdown.irrelevant);
      if (!a.out.empty())
        write_session_report(r, fs::path(a.out) / "sessions" / (r.session_id + ".json"));
      successes += r.success;
      reports.push_back(std::move(r));
    }
  }
  std::printf("success %d/%zu\n\n", successes, reports.size());
  std::cout << format_skip_table(analyze_skips(reports));
  return 0;
}

// --- analyze -----------------------------------------------------------------

int run_analyze(const std::string& sessions, const std::string& rerun, const std::string& scripts,
                const Common& common) {
  const auto reports = read_session_reports(sessions);
  if (reports.empty()) throw Error(ErrorKind::data, "no_sessions", "no session reports in " + sessions);
  std::cout << format_skip_table(analyze_skips(reports)) << "\n";

  std::map<std::string, std::vector<SessionReport>> by_method;
  for (const auto& r : reports) by_method[r.method].push_back(r);
  const fs::path data = data_dir(common.data);
  std::vector<MethodComparison> rows;
  for (const auto& [method, rs] : by_method) {
    MethodComparison c;
    c.method = method;
    c.sessions = static_cast<int>(rs.size());
    int ok = 0;
    for (const auto& r : rs) ok += r.success;
    c.success_rate = static_cast<double>(ok) / rs.size();
    c.online_miou = bench::online_report(rs).aggregates.at(metrics::kMiou);
    if (!rerun.empty()) {
      const ScriptLibrary lib = ScriptLibrary::load_dir(scripts.empty() ? data / "scripts" : fs::path(scripts));
      const auto factory = spec_resource_factory(assistant_spec(rerun, data / "synonyms.json"), data);
      c.offline_miou = bench::offline_rerun(rs, lib, factory).aggregates.at(metrics::kMiou);
    }
    rows.push_back(c);
  }
  std::cout << format_comparison(rows);
  return 0;
}

// --- serve -------------------------------------------------------------------

Service* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

int run_serve(const std::string& config, std::optional<int> port) {
  ServiceConfig cfg = config.empty() ? ServiceConfig{} : load_service_config(config);
  if (config.empty()) {
    apply_env_overrides(cfg);
    cfg.script_dir = data_dir("") / "scripts";
    cfg.providers = oracle_provider_spec("perfect", data_dir("") / "synonyms.json");
  }
  if (port) cfg.port = *port;
  auto manager = make_manager(cfg);
  Service service(*manager, cfg.base_dir, cfg.token, cfg.run_dir);
  const int bound = service.bind(cfg.host, cfg.port);
  std::printf("listening on %s:%d\n", cfg.host.c_str(), bound);
  std::fflush(stdout);
  g_service = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  service.listen();
  g_service = nullptr;
  return 0;
}

// --- goldens -----------------------------------------------------------------

int run_goldens(const std::string& dir, bool update) {
  if (update) {
    goldens::update(dir);
    std::printf("updated %zu goldens in %s\n", goldens::render_cases().size(), dir.c_str());
    return 0;
  }
  int bad = 0;
  for (const auto& r : goldens::check(dir)) {
    std::printf("%-4s %s%s%s\n", r.ok ? "ok" : "FAIL", r.file.c_str(), r.ok ? "" : "  ",
                r.detail.c_str());
    bad += !r.ok;
  }
  return bad == 0 ? 0 : kExitData;
}

// --- synth (hidden) ----------------------------------------------------------

struct SynthArgs {
  std::string kind = "lta";
  std::string vocab;
  std::string out;
  std::string fixture;
  int count = 20;
  int z = 20;
  int steps = 7;
  int length = 6;
  bool goals = false;
};

int run_synth(const SynthArgs& a, const Common& common) {
  const Vocabulary vocab = load_vocabulary(a.vocab);
  if (a.kind == "lta") {
    const auto samples = bench::synth_lta(vocab, a.count, a.z, common.seed);
    save_dataset(samples, a.out);
    if (!a.fixture.empty())
      write_text_file(a.fixture, bench::cheating_fixture(samples, PredictorConfig::socratic(Task::lta, a.z)).dump(1) + "\n");
  } else if (a.kind == "vpa") {
    const auto videos = bench::synth_vpa_videos(vocab, a.count, a.steps, common.seed);
    bench::save_vpa_videos(videos, a.out);
    if (!a.fixture.empty())
      write_text_file(a.fixture, bench::cheating_fixture(bench::expand_vpa_videos(videos, a.z),
                                                         PredictorConfig::socratic(Task::vpa, a.z))
                                         .dump(1) + "\n");
  } else if (a.kind == "pool") {
    save_example_pool(bench::synth_example_pool(vocab, a.count, a.length, common.seed, a.goals), a.out);
  } else {
    throw_argument("synth kind must be lta, vpa or pool");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Video-history-grounded activity assistance tools"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--data-dir", common.data, "Bundled data directory (scripts, synonyms, pools)");
  app.add_option("--workers", common.workers, "Worker threads (default: all cores)");
  app.add_option("--seed", common.seed, "Seed for generators");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Offline benchmarks");
  bench_cmd->require_subcommand(1);
  BenchArgs bargs;
  std::string bench_kind;
  for (const char* kind : {"lta", "vpa", "rerun"}) {
    auto* sub = bench_cmd->add_subcommand(kind, std::string("Run the ") + kind + " benchmark");
    sub->add_option("--config", bargs.config, "Bench config JSON");
    sub->add_option("--providers", bargs.providers, "Provider spec JSON");
    sub->add_option("--assistant", bargs.assistant, "oracle[:mode] | stub:FILE | remote:URL");
    sub->add_option("--predictor", bargs.predictor, "socratic | vclm");
    sub->add_option("--pool", bargs.pool, "Example pool JSONL");
    sub->add_option("--out", bargs.out, "Run directory for report and logs");
    if (std::string(kind) == "rerun") {
      sub->add_option("--sessions", bargs.sessions, "Directory of session reports");
      sub->add_option("--scripts", bargs.scripts, "Script directory");
    } else {
      sub->add_option("--dataset", bargs.dataset, "Dataset JSONL");
      sub->add_option("--vocab", bargs.vocab, "Vocabulary JSON");
      sub->add_option("--z", bargs.z, "Horizon");
    }
    if (std::string(kind) == "vpa") {
      sub->add_flag("--goal,!--no-goal", bargs.goal, "Goal conditioning");
    }
    sub->callback([&bench_kind, kind] { bench_kind = kind; });
  }

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Simulated participant sessions");
  SimArgs sargs;
  sim_cmd->add_option("--script", sargs.script, "Script id or file")->required();
  sim_cmd->add_option("--assistant", sargs.assistant, "oracle[:mode] | stub:FILE | remote:URL");
  sim_cmd->add_option("--trials", sargs.trials, "Trials");
  sim_cmd->add_flag("--latin-square", sargs.latin_square, "Counterbalance method order");
  sim_cmd->add_option("--methods", sargs.methods, "Predictor kinds")->delimiter(',');
  sim_cmd->add_option("--scripts", sargs.scripts, "Script directory");
  sim_cmd->add_option("--pool", sargs.pool, "Example pool JSONL");
  sim_cmd->add_option("--out", sargs.out, "Run directory for reports and events");

  // analyze
  auto* an_cmd = app.add_subcommand("analyze", "Skip breakdown and online vs offline mIoU");
  std::string an_sessions, an_rerun, an_scripts;
  an_cmd->add_option("--sessions", an_sessions, "Directory of session reports")->required();
  an_cmd->add_option("--rerun", an_rerun, "Assistant for the offline rerun column");
  an_cmd->add_option("--scripts", an_scripts, "Script directory");

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  std::string serve_config;
  std::optional<int> serve_port;
  serve_cmd->add_option("--config", serve_config, "Service config JSON")->envname("VIDASSIST_CONFIG");
  serve_cmd->add_option("--port", serve_port, "Port (0 picks a free one)");

  // goldens
  auto* gold_cmd = app.add_subcommand("goldens", "Check or rewrite prompt goldens");
  std::string gold_dir = VIDASSIST_DEFAULT_GOLDEN_DIR;
  bool gold_check = false, gold_update = false;
  gold_cmd->add_option("--dir", gold_dir, "Golden directory");
  auto* check_flag = gold_cmd->add_flag("--check", gold_check, "Compare byte-exact");
  auto* update_flag = gold_cmd->add_flag("--update", gold_update, "Rewrite the files");
  check_flag->excludes(update_flag);

  // synth (hidden)
  auto* synth_cmd = app.add_subcommand("synth", "");
  synth_cmd->group("");
  SynthArgs yargs;
  synth_cmd->add_option("kind", yargs.kind)->required();
  synth_cmd->add_option("--vocab", yargs.vocab)->required();
  synth_cmd->add_option("--out", yargs.out)->required();
  synth_cmd->add_option("--fixture", yargs.fixture);
  synth_cmd->add_option("--count", yargs.count);
  synth_cmd->add_option("--z", yargs.z);
  synth_cmd->add_option("--steps", yargs.steps);
  synth_cmd->add_option("--length", yargs.length);
  synth_cmd->add_flag("--goals", yargs.goals);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*bench_cmd) return run_bench_cmd(bench_kind, bargs, common);
    if (*sim_cmd) return run_simulate(sargs, common);
    if (*an_cmd) return run_analyze(an_sessions, an_rerun, an_scripts, common);
    if (*serve_cmd) return run_serve(serve_config, serve_port);
    if (*gold_cmd) {
      if (!gold_check && !gold_update) {
        std::cerr << "goldens: pass --check or --update\n";
        return kExitUsage;
      }
      return run_goldens(gold_dir, gold_update);
    }
    if (*synth_cmd) return run_synth(yargs, common);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.kind()) << "/" << e.code() << "]: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
