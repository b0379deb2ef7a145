// Copyright 2026 The convsec Authors.
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

// Command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "convsec/convsec.h"
#include "json.hpp"

namespace {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitInternal = 3;

class CliError : public std::runtime_error {
 public:
  CliError(int exit_code, const std::string& message)
      : std::runtime_error(message), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

int ExitCodeFor(cs_status status) {
  switch (status) {
    case CS_OK:
      return kExitOk;
    case CS_ERR_INTERNAL:
    case CS_ERR_GUARD_VIOLATION:
      return kExitInternal;
    default:
      return kExitUsage;
  }
}

void Check(cs_status status) {
  if (status == CS_OK) return;
  throw CliError(ExitCodeFor(status), std::string(cs_status_name(status)) +
                                          ": " + cs_last_error());
}

struct StringDeleter {
  void operator()(char* s) const { cs_free_string(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct InstanceDeleter {
  void operator()(cs_instance* p) const { cs_instance_free(p); }
};
using OwnedInstance = std::unique_ptr<cs_instance, InstanceDeleter>;

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kExitUsage, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError(kExitInternal, "cannot write " + path);
  out << text;
  if (!out) throw CliError(kExitInternal, "failed writing " + path);
}

Json ParseText(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw CliError(kExitUsage, what + ": " + e.what());
  }
}

OwnedInstance LoadInstance(const std::string& path, bool strict) {
  const std::string text = ReadText(path);
  cs_instance* raw = nullptr;
  Check(cs_instance_from_json(text.c_str(), strict ? 1 : 0, &raw));
  return OwnedInstance(raw);
}

struct Flags {
  std::string instance;
  std::string spec;
  std::uint64_t seed = 1;
  std::optional<int> trials;
  std::string pipeline;
  std::string out;
  int workers = 1;
  std::string oracle;
  std::optional<double> eps;
  std::optional<double> eta;
  std::optional<int> n;
  std::optional<int> d;
  std::string level = "quick";
  std::optional<std::string> suites;
};

std::string SolveOptions(const Flags& f) {
  Json o = Json::object();
  if (f.eps) o["eps"] = *f.eps;
  if (f.eta) o["eta"] = *f.eta;
  return o.dump();
}

int RunGen(const Flags& f) {
  Json config = Json::object();
  if (!f.spec.empty()) {
    config = ParseText(ReadText(f.spec), f.spec);
    if (config.contains("generator")) config = config.at("generator");
  }
  if (f.n) config["n"] = *f.n;
  if (f.d) config["d"] = *f.d;
  const std::string text = config.dump();
  cs_instance* raw = nullptr;
  Check(cs_instance_generate(text.c_str(), f.seed, &raw));
  OwnedInstance inst(raw);
  char* out = nullptr;
  Check(cs_instance_to_json(inst.get(), &out));
  OwnedString json(out);
  WriteText(f.out, json.get());
  return kExitOk;
}

int RunSolve(const Flags& f, bool offline) {
  const std::string pipeline = f.pipeline.empty()
                                   ? (offline ? "offline_unconstrained"
                                              : "online_unconstrained")
                                   : f.pipeline;
  const bool is_offline = pipeline.rfind("offline_", 0) == 0;
  if (is_offline != offline) {
    throw CliError(kExitUsage, "pipeline " + pipeline + " does not belong to " +
                                   (offline ? "solve-offline" : "solve-online"));
  }
  OwnedInstance inst = LoadInstance(f.instance, true);
  char* out = nullptr;
  Check(cs_solve(inst.get(), pipeline.c_str(), f.seed,
                 SolveOptions(f).c_str(), &out));
  OwnedString json(out);
  WriteText(f.out, json.get());
  return kExitOk;
}

int RunExperimentCommand(const Flags& f, bool seed_given) {
  const std::string spec_text = ReadText(f.spec);
  const Json spec = ParseText(spec_text, f.spec);
  Json overrides = Json::object();
  if (seed_given) overrides["seed"] = f.seed;
  if (f.trials) overrides["trials"] = *f.trials;
  if (!f.pipeline.empty()) {
    overrides["pipelines"] = Json::array({f.pipeline});
  }
  if (!f.oracle.empty()) overrides["oracle"] = f.oracle;
  if (f.eps) overrides["eps"] = *f.eps;
  if (f.eta) overrides["eta"] = *f.eta;

  std::string csv_path = f.out;
  std::string summary_path;
  if (spec.contains("outputs")) {
    const Json& o = spec.at("outputs");
    if (csv_path.empty()) csv_path = o.value("csv", std::string());
    if (f.out.empty()) summary_path = o.value("summary", std::string());
  }
  if (summary_path.empty() && !csv_path.empty() && csv_path != "-") {
    summary_path = csv_path + ".summary.json";
  }

  char* csv = nullptr;
  char* summary = nullptr;
  Check(cs_experiment(spec_text.c_str(), overrides.dump().c_str(), f.workers,
                      &csv, &summary));
  OwnedString csv_owned(csv);
  OwnedString summary_owned(summary);
  WriteText(csv_path, csv_owned.get());
  if (!summary_path.empty()) WriteText(summary_path, summary_owned.get());
  return kExitOk;
}

int RunVerifyCommand(const Flags& f) {
  OwnedInstance inst;
  if (!f.instance.empty()) inst = LoadInstance(f.instance, false);
  char* report = nullptr;
  int passed = 0;
  Check(cs_verify(f.level.c_str(), f.suites ? f.suites->c_str() : nullptr,
                  inst.get(), f.seed, &report, &passed));
  OwnedString report_owned(report);
  const Json j = ParseText(report_owned.get(), "verify report");
  for (const Json& s : j.at("suites")) {
    std::fprintf(stderr, "%-24s %s  checks=%d failures=%d  %.2fs\n",
                 s.at("suite").get<std::string>().c_str(),
                 s.at("passed").get<bool>() ? "PASS" : "FAIL",
                 s.at("checks").get<int>(), s.at("failures").get<int>(),
                 s.at("seconds").get<double>());
    const std::string witness = s.at("witness").get<std::string>();
    if (!witness.empty()) std::fprintf(stderr, "    witness: %s\n", witness.c_str());
  }
  WriteText(f.out, report_owned.get());
  return passed ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  cs_configure_logging();
  CLI::App app{"Online profit maximization with convex production costs"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->add_option("--spec", f.spec, "Generator config or experiment spec JSON");
  gen->add_option("--seed", f.seed, "Generator seed");
  gen->add_option("--n", f.n, "Number of items")->check(CLI::NonNegativeNumber);
  gen->add_option("--d", f.d, "Resource dimension")->check(CLI::PositiveNumber);
  gen->add_option("--out", f.out, "Output path (stdout if omitted)");

  CLI::App* solve_offline =
      app.add_subcommand("solve-offline", "Run an offline pipeline");
  CLI::App* solve_online =
      app.add_subcommand("solve-online", "Run an online pipeline");
  for (CLI::App* sub : {solve_offline, solve_online}) {
    sub->add_option("--instance", f.instance, "Instance JSON")->required();
    sub->add_option("--pipeline", f.pipeline, "Pipeline name");
    sub->add_option("--seed", f.seed, "Run seed");
    sub->add_option("--eps", f.eps, "Oracle accuracy");
    sub->add_option("--eta", f.eta, "High-profit threshold factor");
    sub->add_option("--out", f.out, "Output path (stdout if omitted)");
  }

  CLI::App* experiment =
      app.add_subcommand("experiment", "Run a seeded experiment spec");
  experiment->add_option("--spec", f.spec, "Experiment spec JSON")->required();
  CLI::Option* seed_opt =
      experiment->add_option("--seed", f.seed, "Base seed override");
  experiment->add_option("--trials", f.trials, "Trials override")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--pipeline", f.pipeline, "Single pipeline override");
  experiment->add_option("--out", f.out, "CSV output path");
  experiment->add_option("--workers", f.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--oracle", f.oracle, "Baseline oracle")
      ->check(CLI::IsMember({"on", "off"}));
  experiment->add_option("--eps", f.eps, "Oracle accuracy");
  experiment->add_option("--eta", f.eta, "High-profit threshold factor");

  CLI::App* verify = app.add_subcommand("verify", "Run self-check suites");
  verify->add_option("level", f.level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--suites", f.suites,
                     "Comma-separated suite names (all if omitted)");
  verify->add_option("--instance", f.instance, "Instance to check");
  verify->add_option("--seed", f.seed, "Seed");
  verify->add_option("--out", f.out, "Report path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return RunGen(f);
    if (solve_offline->parsed()) return RunSolve(f, true);
    if (solve_online->parsed()) return RunSolve(f, false);
    if (experiment->parsed()) return RunExperimentCommand(f, seed_opt->count() > 0);
    if (verify->parsed()) return RunVerifyCommand(f);
  } catch (const CliError& e) {
    std::fprintf(stderr, "convsec: %s\n", e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "convsec: %s\n", e.what());
    return kExitInternal;
  }
  return kExitUsage;
}
