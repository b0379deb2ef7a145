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

#include "convsec/serialization.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "convsec/error.h"

namespace convsec {
namespace {

template <typename T>
Json OrNull(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json FiniteOrNull(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json IdsOf(const Instance& inst, const Subset& subset) {
  return Json(inst.ToIds(subset));
}

// Runs a loader, mapping JSON access errors to kParse.
template <typename F>
auto Guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kParse, std::string("malformed ") + what + ": " + e.what());
  }
}

CostModel UncheckedQuadratic(int dim, const Vec& q) {
  CustomParams p;
  p.name = "quadratic_unchecked";
  p.separable = false;
  p.eval = [dim, q](const Vec& z) {
    double total = 0.0;
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) total += z[i] * q[i * dim + j] * z[j];
    }
    return total;
  };
  p.grad = [dim, q](const Vec& z) {
    Vec g(dim, 0.0);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        g[i] += (q[i * dim + j] + q[j * dim + i]) * z[j];
      }
    }
    return g;
  };
  return CostModel::Custom(dim, std::move(p));
}

}  // namespace

Json CostToJson(const CostModel& cost) {
  Json j;
  j["kind"] = CostKindName(cost.kind());
  j["dim"] = cost.dim();
  Json params = Json::object();
  if (const auto* p = std::get_if<PowerParams>(&cost.params())) {
    params["coeff"] = p->coeff;
    params["exponent"] = p->exponent;
  } else if (const auto* q = std::get_if<QuadraticParams>(&cost.params())) {
    Json rows = Json::array();
    for (int i = 0; i < q->dim; ++i) {
      Vec row(q->dim);
      for (int k = 0; k < q->dim; ++k) row[k] = q->at(i, k);
      rows.push_back(row);
    }
    params["q"] = rows;
  } else if (const auto* e = std::get_if<ExpParams>(&cost.params())) {
    params["scale"] = e->scale;
    params["rate"] = e->rate;
  } else if (const auto* c = std::get_if<CustomParams>(&cost.params())) {
    params["name"] = c->name;
    params["separable"] = c->separable;
  }
  j["params"] = params;
  return j;
}

CostModel CostFromJson(const Json& j, bool strict) {
  return Guarded("cost", [&]() {
    const std::string kind = j.at("kind").get<std::string>();
    const Json& params = j.at("params");
    if (kind == "separable_power") {
      return CostModel::SeparablePower(params.at("coeff").get<Vec>(),
                                       params.at("exponent").get<Vec>());
    }
    if (kind == "separable_exp") {
      return CostModel::SeparableExp(params.at("scale").get<Vec>(),
                                     params.at("rate").get<Vec>());
    }
    if (kind == "supermodular_quadratic") {
      const auto rows = params.at("q").get<std::vector<Vec>>();
      const int dim = static_cast<int>(rows.size());
      Vec q;
      for (const Vec& row : rows) {
        if (static_cast<int>(row.size()) != dim) {
          Fail(ErrorCode::kParse, "quadratic cost matrix must be square");
        }
        q.insert(q.end(), row.begin(), row.end());
      }
      if (j.contains("dim") && j.at("dim").get<int>() != dim) {
        Fail(ErrorCode::kDimensionMismatch, "cost dim disagrees with q");
      }
      try {
        return CostModel::SupermodularQuadratic(dim, q);
      } catch (const Error& e) {
        if (strict || e.code() != ErrorCode::kInvalidCost || dim < 1) throw;
        return UncheckedQuadratic(dim, q);
      }
    }
    if (kind == "custom") {
      Fail(ErrorCode::kParse, "custom costs have no serialized form");
    }
    Fail(ErrorCode::kParse, "unknown cost kind '" + kind + "'");
  });
}

Json MatroidToJson(const Matroid& matroid) {
  Json j;
  j["kind"] = MatroidKindName(matroid.kind());
  if (matroid.kind() == MatroidKind::kUniform) {
    j["rank"] = matroid.uniform_rank();
  } else if (matroid.kind() == MatroidKind::kPartition) {
    j["blocks"] = matroid.blocks();
    j["caps"] = matroid.caps();
  }
  return j;
}

Matroid MatroidFromJson(const Json& j) {
  return Guarded("matroid", [&]() {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "free") return Matroid::Free();
    if (kind == "uniform") return Matroid::Uniform(j.at("rank").get<int>());
    if (kind == "partition") {
      return Matroid::Partition(
          j.at("blocks").get<std::vector<std::vector<ItemId>>>(),
          j.at("caps").get<std::vector<int>>());
    }
    Fail(ErrorCode::kParse, "unknown matroid kind '" + kind + "'");
  });
}

Json InstanceToJson(const Instance& inst) {
  Json j;
  j["d"] = inst.dim();
  Json items = Json::array();
  for (const Item& e : inst.items()) {
    items.push_back({{"id", e.id}, {"value", e.value}, {"size", e.size}});
  }
  j["items"] = items;
  j["cost"] = CostToJson(inst.cost());
  j["matroid"] = MatroidToJson(inst.matroid());
  const InstanceMeta& m = inst.meta();
  j["meta"] = {{"seed", OrNull(m.seed)},
               {"perturb_seed", OrNull(m.perturb_seed)},
               {"exceptional_free", m.exceptional_free},
               {"general_position", m.general_position},
               {"opt_bound_kind", m.opt_bound_kind}};
  return j;
}

Instance InstanceFromJson(const Json& j, bool strict) {
  return Guarded("instance", [&]() {
    CostModel cost = CostFromJson(j.at("cost"), strict);
    if (j.contains("d") && j.at("d").get<int>() != cost.dim()) {
      Fail(ErrorCode::kDimensionMismatch, "instance d disagrees with its cost");
    }
    std::vector<Item> items;
    for (const Json& e : j.at("items")) {
      items.push_back(Item{e.at("id").get<ItemId>(), e.at("value").get<double>(),
                           e.at("size").get<Vec>()});
    }
    Matroid matroid =
        j.contains("matroid") ? MatroidFromJson(j.at("matroid")) : Matroid::Free();
    InstanceMeta meta;
    if (j.contains("meta")) {
      const Json& m = j.at("meta");
      if (m.contains("seed") && !m.at("seed").is_null()) {
        meta.seed = m.at("seed").get<std::uint64_t>();
      }
      if (m.contains("perturb_seed") && !m.at("perturb_seed").is_null()) {
        meta.perturb_seed = m.at("perturb_seed").get<std::uint64_t>();
      }
      meta.exceptional_free = m.value("exceptional_free", false);
      meta.general_position = m.value("general_position", false);
      meta.opt_bound_kind = m.value("opt_bound_kind", std::string());
    }
    return Instance(std::move(items), std::move(cost), std::move(matroid),
                    std::move(meta));
  });
}

Json GeneratorConfigToJson(const GeneratorConfig& c) {
  Json j = {{"n", c.n},
            {"d", c.d},
            {"fixed_values", c.fixed_values},
            {"value_max", c.value_max},
            {"fixed_sizes", c.fixed_sizes},
            {"size_max", c.size_max},
            {"cost_family", c.cost_family},
            {"coeff_lo", c.coeff_lo},
            {"coeff_hi", c.coeff_hi},
            {"exponent", c.exponent},
            {"offdiag", c.offdiag},
            {"exp_rate", c.exp_rate},
            {"matroid_kind", c.matroid_kind},
            {"rank", c.rank},
            {"num_blocks", c.num_blocks},
            {"block_cap", c.block_cap}};
  if (c.explicit_cost) j["explicit_cost"] = CostToJson(*c.explicit_cost);
  if (c.explicit_matroid) {
    j["explicit_matroid"] = MatroidToJson(*c.explicit_matroid);
  }
  return j;
}

GeneratorConfig GeneratorConfigFromJson(const Json& j) {
  return Guarded("generator config", [&]() {
    GeneratorConfig c;
    c.n = j.value("n", c.n);
    c.d = j.value("d", c.d);
    c.fixed_values = j.value("fixed_values", c.fixed_values);
    c.value_max = j.value("value_max", c.value_max);
    c.fixed_sizes = j.value("fixed_sizes", c.fixed_sizes);
    c.size_max = j.value("size_max", c.size_max);
    c.cost_family = j.value("cost_family", c.cost_family);
    c.coeff_lo = j.value("coeff_lo", c.coeff_lo);
    c.coeff_hi = j.value("coeff_hi", c.coeff_hi);
    c.exponent = j.value("exponent", c.exponent);
    c.offdiag = j.value("offdiag", c.offdiag);
    c.exp_rate = j.value("exp_rate", c.exp_rate);
    c.matroid_kind = j.value("matroid_kind", c.matroid_kind);
    c.rank = j.value("rank", c.rank);
    c.num_blocks = j.value("num_blocks", c.num_blocks);
    c.block_cap = j.value("block_cap", c.block_cap);
    if (j.contains("explicit_cost")) {
      c.explicit_cost = CostFromJson(j.at("explicit_cost"));
    }
    if (j.contains("explicit_matroid")) {
      c.explicit_matroid = MatroidFromJson(j.at("explicit_matroid"));
    }
    return c;
  });
}

Json ExperimentSpecToJson(const ExperimentSpec& s) {
  Json pipelines = Json::array();
  for (Pipeline p : s.pipelines) pipelines.push_back(PipelineName(p));
  return {{"generator", GeneratorConfigToJson(s.generator)},
          {"dims", s.dims},
          {"pipelines", pipelines},
          {"trials", s.trials},
          {"instances", s.instances},
          {"seed", s.seed},
          {"oracle", s.oracle ? "on" : "off"},
          {"eps", s.eps},
          {"eta", s.eta},
          {"beta", s.beta},
          {"secretary_prob", s.secretary_prob},
          {"preprocess", s.preprocess},
          {"outputs", {{"csv", s.csv_path}, {"summary", s.summary_path}}}};
}

ExperimentSpec ExperimentSpecFromJson(const Json& j) {
  return Guarded("experiment spec", [&]() {
    ExperimentSpec s;
    if (j.contains("generator")) {
      s.generator = GeneratorConfigFromJson(j.at("generator"));
    }
    s.dims = j.value("dims", s.dims);
    if (j.contains("pipelines")) {
      s.pipelines.clear();
      for (const Json& p : j.at("pipelines")) {
        s.pipelines.push_back(ParsePipeline(p.get<std::string>()));
      }
    } else if (j.contains("pipeline")) {
      s.pipelines = {ParsePipeline(j.at("pipeline").get<std::string>())};
    }
    s.trials = j.value("trials", s.trials);
    s.instances = j.value("instances", s.instances);
    s.seed = j.value("seed", s.seed);
    if (j.contains("oracle")) {
      const Json& o = j.at("oracle");
      if (o.is_boolean()) {
        s.oracle = o.get<bool>();
      } else {
        const std::string v = o.get<std::string>();
        if (v != "on" && v != "off") {
          Fail(ErrorCode::kParse, "oracle must be 'on' or 'off'");
        }
        s.oracle = v == "on";
      }
    }
    s.eps = j.value("eps", s.eps);
    s.eta = j.value("eta", s.eta);
    s.beta = j.value("beta", s.beta);
    s.secretary_prob = j.value("secretary_prob", s.secretary_prob);
    s.preprocess = j.value("preprocess", s.preprocess);
    if (j.contains("outputs")) {
      s.csv_path = j.at("outputs").value("csv", s.csv_path);
      s.summary_path = j.at("outputs").value("summary", s.summary_path);
    }
    if (s.trials < 1) Fail(ErrorCode::kInvalidArgument, "trials must be >= 1");
    if (s.pipelines.empty()) {
      Fail(ErrorCode::kInvalidArgument, "at least one pipeline is required");
    }
    return s;
  });
}

Json ClassifierToJson(const Classifier& c) {
  if (c.sentinel) return nullptr;
  Json lambda = Json::array();
  for (double l : c.lambda) lambda.push_back(FiniteOrNull(l));
  return {{"tau", FiniteOrNull(c.tau)}, {"lambda", lambda},
          {"on_curve", c.on_curve}};
}

Json OfflineSolutionToJson(const Instance& inst, const OfflineSolution& sol) {
  auto part = [&](const SolutionPart& p) {
    return Json{{"set", IdsOf(inst, p.set)}, {"profit", p.profit}};
  };
  Json j;
  j["chosen"] = IdsOf(inst, sol.chosen);
  j["profit"] = sol.profit;
  j["candidate"] = sol.candidate;
  j["exhaustive"] = sol.exhaustive;
  if (sol.classifier) {
    const GoodClassifier& gc = *sol.classifier;
    Json c = ClassifierToJson(gc.classifier);
    c["i_star"] = gc.i_star;
    c["at_breakpoint"] = gc.at_breakpoint;
    c["p1_holds"] = gc.p1_holds;
    c["balance_spread"] = gc.balance_spread;
    c["threshold_item"] =
        gc.threshold_item ? Json(inst.item(*gc.threshold_item).id) : Json(nullptr);
    j["classifier"] = c;
  } else {
    j["classifier"] = nullptr;
  }
  j["parts"] = {{"x_lin", part(sol.parts.x_lin)},
                {"x_occ", part(sol.parts.x_occ)},
                {"x_rest", part(sol.parts.x_rest)},
                {"x_circ", part(sol.parts.x_circ)},
                {"best_singleton", part(sol.parts.best_singleton)}};
  return j;
}

Json TrialRecordToJson(const Instance& inst, const OnlineRun& run,
                       std::uint64_t seed) {
  const OnlineDiagnostics& d = run.diagnostics;
  return {{"seed", seed},
          {"order", IdsOf(inst, run.order)},
          {"sample_size", run.sample_size},
          {"mu", ClassifierToJson(run.mu)},
          {"filtered", IdsOf(inst, run.filtered)},
          {"selected", IdsOf(inst, run.selected)},
          {"profit", run.profit},
          {"branch", run.branch},
          {"diagnostics",
           {{"fopt_L", d.fopt_sample},
            {"fopt_L_mu", d.fopt_sample_mu},
            {"mu_ge_lambda_star", OrNull(d.mu_ge_lambda_star)},
            {"filtered_size", d.filtered_size},
            {"fopt_U_mu", OrNull(d.fopt_picked_mu)},
            {"guard_evaluations", d.guard_evaluations},
            {"guard_violations", d.guard_violations},
            {"surrogate_profit", OrNull(d.surrogate_profit)}}}};
}

Json SummaryToJson(const ExperimentResult& result) {
  Json cells = Json::array();
  for (const CellSummary& c : result.cells) {
    cells.push_back({{"d", c.d},
                     {"pipeline", PipelineName(c.pipeline)},
                     {"trials", c.trials},
                     {"baseline", c.baseline_kind},
                     {"mean_profit", c.mean_profit},
                     {"mean_ratio", OrNull(c.mean_ratio)},
                     {"median_ratio", OrNull(c.median_ratio)},
                     {"min_ratio", OrNull(c.min_ratio)},
                     {"max_ratio", OrNull(c.max_ratio)},
                     {"freq_mu_ge_lambda_star", OrNull(c.freq_mu_ge_lambda_star)},
                     {"freq_not_too_big", OrNull(c.freq_not_too_big)},
                     {"branches", c.branches},
                     {"infeasible", c.infeasible},
                     {"negative", c.negative},
                     {"guard_violations", c.guard_violations},
                     {"runtime_seconds", c.runtime_seconds}});
  }
  return {{"cells", cells}};
}

Json ParseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kInvalidArgument, "cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  out << contents;
  if (!out) Fail(ErrorCode::kInternal, "write to '" + path + "' failed");
}

}  // namespace convsec
