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

#include "convsec/convsec.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>
#include <utility>

#include "convsec/error.h"
#include "convsec/harness.h"
#include "convsec/serialization.h"
#include "convsec/verify.h"

struct cs_instance {
  convsec::Instance inst;
};

namespace {

thread_local std::string last_error;

cs_status ToStatus(convsec::ErrorCode code) {
  using convsec::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return CS_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDimensionMismatch:
      return CS_ERR_DIMENSION_MISMATCH;
    case ErrorCode::kInvalidCost:
      return CS_ERR_INVALID_COST;
    case ErrorCode::kCurveRangeExceeded:
      return CS_ERR_CURVE_RANGE_EXCEEDED;
    case ErrorCode::kRequiresSeparable:
      return CS_ERR_REQUIRES_SEPARABLE;
    case ErrorCode::kNoGoodClassifier:
      return CS_ERR_NO_GOOD_CLASSIFIER;
    case ErrorCode::kTooLarge:
      return CS_ERR_TOO_LARGE;
    case ErrorCode::kUnknownId:
      return CS_ERR_UNKNOWN_ID;
    case ErrorCode::kParse:
      return CS_ERR_PARSE;
    case ErrorCode::kGuardViolation:
      return CS_ERR_GUARD_VIOLATION;
    case ErrorCode::kInternal:
      return CS_ERR_INTERNAL;
  }
  return CS_ERR_INTERNAL;
}

// Runs f, translating exceptions into a status and the thread's message.
template <typename F>
cs_status Call(F&& f) {
  last_error.clear();
  try {
    f();
    return CS_OK;
  } catch (const convsec::Error& e) {
    last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CS_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return CS_ERR_INTERNAL;
  }
}

void Require(const void* p, const char* what) {
  if (p == nullptr) {
    convsec::Fail(convsec::ErrorCode::kInvalidArgument,
                  std::string(what) + " must not be null");
  }
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::string> SplitList(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

extern "C" {

const char* cs_version(void) { return "1.0.0"; }

const char* cs_status_name(cs_status status) {
  switch (status) {
    case CS_OK:
      return "ok";
    case CS_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case CS_ERR_DIMENSION_MISMATCH:
      return "dimension_mismatch";
    case CS_ERR_INVALID_COST:
      return "invalid_cost";
    case CS_ERR_CURVE_RANGE_EXCEEDED:
      return "curve_range_exceeded";
    case CS_ERR_REQUIRES_SEPARABLE:
      return "requires_separable";
    case CS_ERR_NO_GOOD_CLASSIFIER:
      return "no_good_classifier";
    case CS_ERR_TOO_LARGE:
      return "too_large";
    case CS_ERR_UNKNOWN_ID:
      return "unknown_id";
    case CS_ERR_PARSE:
      return "parse";
    case CS_ERR_GUARD_VIOLATION:
      return "guard_violation";
    case CS_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* cs_last_error(void) { return last_error.c_str(); }

void cs_configure_logging(void) { convsec::ConfigureLoggingFromEnv(); }

void cs_free_string(char* s) { std::free(s); }

cs_status cs_instance_from_json(const char* json, int strict,
                                cs_instance** out) {
  return Call([&]() {
    Require(json, "json");
    Require(out, "out");
    *out = nullptr;
    convsec::Instance inst =
        convsec::InstanceFromJson(convsec::ParseJson(json), strict != 0);
    *out = new cs_instance{std::move(inst)};
  });
}

cs_status cs_instance_generate(const char* config_json, uint64_t seed,
                               cs_instance** out) {
  return Call([&]() {
    Require(out, "out");
    *out = nullptr;
    convsec::GeneratorConfig config;
    if (config_json != nullptr) {
      const convsec::Json j = convsec::ParseJson(config_json);
      config = convsec::GeneratorConfigFromJson(
          j.contains("generator") ? j.at("generator") : j);
    }
    *out = new cs_instance{convsec::Generate(config, seed)};
  });
}

cs_status cs_instance_to_json(const cs_instance* inst, char** out) {
  return Call([&]() {
    Require(inst, "inst");
    Require(out, "out");
    *out = Dup(convsec::InstanceToJson(inst->inst).dump(2) + "\n");
  });
}

cs_status cs_instance_size(const cs_instance* inst, size_t* out) {
  return Call([&]() {
    Require(inst, "inst");
    Require(out, "out");
    *out = inst->inst.size();
  });
}

cs_status cs_instance_dim(const cs_instance* inst, int* out) {
  return Call([&]() {
    Require(inst, "inst");
    Require(out, "out");
    *out = inst->inst.dim();
  });
}

void cs_instance_free(cs_instance* inst) { delete inst; }

cs_status cs_solve(const cs_instance* inst, const char* pipeline,
                   uint64_t seed, const char* options_json, char** out_json) {
  return Call([&]() {
    Require(inst, "inst");
    Require(pipeline, "pipeline");
    Require(out_json, "out_json");
    *out_json = nullptr;
    convsec::ExperimentSpec spec;
    if (options_json != nullptr) {
      const convsec::Json o = convsec::ParseJson(options_json);
      spec.eps = o.value("eps", spec.eps);
      spec.eta = o.value("eta", spec.eta);
      spec.beta = o.value("beta", spec.beta);
      spec.secretary_prob = o.value("secretary_prob", spec.secretary_prob);
      spec.preprocess = o.value("preprocess", spec.preprocess);
    }
    const convsec::Pipeline p = convsec::ParsePipeline(pipeline);
    const convsec::SolveOutput result =
        convsec::SolvePipeline(spec, p, inst->inst, seed);
    convsec::Json j;
    if (result.offline) {
      j = convsec::OfflineSolutionToJson(result.solved, *result.offline);
      j["seed"] = seed;
      j["n_solved"] = result.solved.size();
    } else {
      j = convsec::TrialRecordToJson(result.solved, *result.online, seed);
    }
    j["pipeline"] = pipeline;
    *out_json = Dup(j.dump(2) + "\n");
  });
}

cs_status cs_experiment(const char* spec_json, const char* overrides_json,
                        int workers, char** out_csv, char** out_summary_json) {
  return Call([&]() {
    Require(spec_json, "spec_json");
    convsec::Json j = convsec::ParseJson(spec_json);
    if (overrides_json != nullptr) {
      j.merge_patch(convsec::ParseJson(overrides_json));
    }
    const convsec::ExperimentSpec spec = convsec::ExperimentSpecFromJson(j);
    const convsec::ExperimentResult result =
        convsec::RunExperiment(spec, workers);
    if (out_csv != nullptr) *out_csv = Dup(convsec::RowsToCsv(result.rows));
    if (out_summary_json != nullptr) {
      *out_summary_json = Dup(convsec::SummaryToJson(result).dump(2) + "\n");
    }
  });
}

cs_status cs_verify(const char* level, const char* suites,
                    const cs_instance* inst, uint64_t seed,
                    char** out_report_json, int* all_passed) {
  return Call([&]() {
    convsec::VerifyOptions options;
    options.level = convsec::ParseVerifyLevel(level ? level : "quick");
    options.suites = suites ? SplitList(suites) : convsec::AllSuites();
    if (inst != nullptr) options.instance = inst->inst;
    options.seed = seed;
    const std::vector<convsec::SuiteReport> reports = convsec::RunVerify(options);
    bool passed = true;
    convsec::Json j = convsec::Json::array();
    for (const convsec::SuiteReport& r : reports) {
      passed = passed && r.passed;
      j.push_back({{"suite", r.name},
                   {"passed", r.passed},
                   {"checks", r.checks},
                   {"failures", r.failures},
                   {"witness", r.witness},
                   {"seconds", r.seconds}});
    }
    if (all_passed != nullptr) *all_passed = passed ? 1 : 0;
    if (out_report_json != nullptr) {
      *out_report_json = Dup(convsec::Json{{"suites", j}, {"passed", passed}}.dump(2) + "\n");
    }
  });
}

}  // extern "C"
