// Copyright 2026 The Authors.
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

// Command-line front end: one subcommand per library entry point. JSON or
// CSV on stdout, logs on stderr. Exit codes: 0 ok, 2 bad input, 3 refused by
// a resource limit, 1 anything else.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "knnpoison/dataset.h"
#include "knnpoison/errors.h"
#include "knnpoison/experiments.h"
#include "knnpoison/gadgets.h"
#include "knnpoison/geometry.h"
#include "knnpoison/graph.h"
#include "knnpoison/greedy.h"
#include "knnpoison/influence.h"
#include "knnpoison/oracle.h"
#include "knnpoison/pca.h"
#include "knnpoison/search.h"

namespace {

using json = nlohmann::json;
using namespace knnpoison;

constexpr int kExitInput = 2;
constexpr int kExitLimit = 3;

struct Globals {
  uint64_t seed = 0;
  std::string norm = "l2";
  int k = 1;
  bool quiet = false;
  int threads = 0;
};

Globals g;

void Log(const std::string& message) {
  if (!g.quiet) std::cerr << "knnpoison: " << message << "\n";
}

NormSpec Norm() { return NormSpec::Parse(g.norm); }

// The thread count is left out on purpose: results do not depend on it.
json GlobalConfig(const std::string& subcommand) {
  return {{"subcommand", subcommand}, {"seed", g.seed}, {"norm", g.norm},
          {"k", g.k}};
}

void Emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json Vec(const Vector& v) { return json(v); }

template <typename T>
json Opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

void WriteCsvTable(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
  for (size_t i = 0; i < header.size(); ++i) {
    std::cout << (i ? "," : "") << header[i];
  }
  std::cout << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << row[i];
    std::cout << "\n";
  }
}

// Inputs shared by the attack-style subcommands.
struct AttackInputs {
  std::string train;
  std::string targets;
  std::string label = "+";

  void Register(CLI::App* app) {
    app->add_option("--train", train, "Training CSV (f0..,label[,mult])")
        ->required()
        ->check(CLI::ExistingFile);
    app->add_option("--targets", targets, "Target pool CSV")
        ->required()
        ->check(CLI::ExistingFile);
    app->add_option("--label,--yplus", label, "Attack label y+")->capture_default_str();
  }

  json Config() const {
    return {{"train", train}, {"targets", targets}, {"label", label}};
  }
};

struct Loaded {
  LabelMap labels;
  Dataset train;
  Dataset targets;
  ClassId y_plus = 0;
};

Loaded Load(const AttackInputs& in) {
  Loaded l;
  l.train = ReadDatasetCsv(in.train, l.labels);
  l.targets = ReadDatasetCsv(in.targets, l.labels);
  if (l.train.dim() != l.targets.dim()) {
    throw InputError("train and targets differ in dimension");
  }
  l.y_plus = l.labels.Intern(in.label);
  return l;
}

void WriteDelta(const std::string& path, const AttackDelta& delta,
                const LabelMap& labels, size_t dim) {
  Dataset d(dim);
  for (const Insertion& ins : delta.insertions) {
    d.Add(ins.point, ins.label, ins.multiplicity);
  }
  WriteDatasetCsv(path, d, labels, true);
  Log("wrote " + path);
}

json InsertionsJson(const AttackDelta& delta, const LabelMap& labels) {
  json out = json::array();
  for (const Insertion& ins : delta.insertions) {
    out.push_back({{"point", Vec(ins.point)},
                   {"label", labels.Name(ins.label)},
                   {"multiplicity", ins.multiplicity}});
  }
  return out;
}

// ---------------------------------------------------------------- irs

struct IrsCmd {
  AttackInputs in;
  bool weighted = false;
  bool as_json = false;

  void Register(CLI::App* app) {
    in.Register(app);
    app->add_flag("--weighted", weighted,
                  "Signed values for mixed-label target pools");
    app->add_flag("--json", as_json,
                  "Emit JSON instead of CSV "
                  "(target_index,center,radius,value,cost)");
  }

  void Run() const {
    Loaded l = Load(in);
    auto irs = ConstructIrs(l.train, l.targets, l.y_plus, g.k, Norm(),
                            weighted ? ValueMode::kWeighted : ValueMode::kStandard);
    json config = GlobalConfig("irs");
    config.update(in.Config());
    config["weighted"] = weighted;
    if (as_json) {
      json list = json::array();
      for (const LabeledBall& ir : irs) {
        list.push_back({{"target_index", ir.target_index},
                        {"center", Vec(ir.ball.center)},
                        {"radius", ir.ball.radius},
                        {"value", ir.value},
                        {"cost", ir.cost}});
      }
      Emit({{"config", config}, {"irs", list}});
      return;
    }
    Log("config " + config.dump());
    std::vector<std::vector<std::string>> rows;
    for (const LabeledBall& ir : irs) {
      std::string center;
      for (size_t i = 0; i < ir.ball.center.size(); ++i) {
        center += (i ? ";" : "") + FormatReal(ir.ball.center[i]);
      }
      rows.push_back({std::to_string(ir.target_index), center,
                      FormatReal(ir.ball.radius), FormatReal(ir.value),
                      std::to_string(ir.cost)});
    }
    WriteCsvTable({"target_index", "center", "radius", "value", "cost"}, rows);
  }
};

// ---------------------------------------------------------------- attack-one

struct AttackOneCmd {
  AttackInputs in;
  std::optional<int> multiplicity;
  int64_t time_ms = 600000;
  std::optional<long> max_calls;
  std::optional<int> max_level;
  bool no_helly = false;
  std::string out;

  void Register(CLI::App* app) {
    in.Register(app);
    app->add_option("--multiplicity,--mult", multiplicity,
                    "Copies of the attack point (default ceil(k/2))")
        ->check(CLI::PositiveNumber);
    app->add_option("--time-ms", time_ms, "Wall-clock budget")->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--max-calls", max_calls, "Feasibility-call budget")
        ->check(CLI::PositiveNumber);
    app->add_option("--max-level", max_level, "Largest edge size to enumerate")
        ->check(CLI::PositiveNumber);
    app->add_flag("--no-helly", no_helly, "Witness every candidate edge");
    app->add_option("--out", out, "Write the insertion as a delta CSV");
  }

  void Run() const {
    Loaded l = Load(in);
    NormSpec norm = Norm();
    int mult = multiplicity.value_or(HalfCeil(g.k));
    auto irs = ConstructIrs(l.train, l.targets, l.y_plus, g.k, norm);
    SearchBudget budget;
    budget.wall_time = std::chrono::milliseconds(time_ms);
    budget.max_multiplicity = mult;
    budget.max_feasibility_calls = max_calls;
    budget.max_level = max_level;
    budget.use_helly = !no_helly;
    budget.seed = g.seed;
    SearchOutcome r = Choppa(irs, budget, norm);

    json config = GlobalConfig("attack-one");
    config.update(in.Config());
    config["multiplicity"] = mult;
    config["time_ms"] = time_ms;
    config["max_calls"] = Opt(max_calls);
    config["max_level"] = Opt(max_level);
    config["helly"] = !no_helly;
    config["out"] = out.empty() ? json(nullptr) : json(out);
    if (!out.empty()) {
      AttackDelta delta;
      if (r.best_point) {
        delta.insertions.push_back({*r.best_point, l.y_plus, r.best_multiplicity});
      }
      WriteDelta(out, delta, l.labels, l.train.dim());
    }
    Emit({{"config", config},
          {"tsi", r.best_tsi},
          {"point", r.best_point ? Vec(*r.best_point) : json(nullptr)},
          {"multiplicity", r.best_multiplicity},
          {"members", r.best_members},
          {"completed", r.completed},
          {"levels", r.levels_explored},
          {"feasibility_calls", r.feasibility_calls},
          {"edges_accepted", r.edges_accepted},
          {"time_used_ms", r.time_used_ms}});
  }
};

// ---------------------------------------------------------------- attack

struct AttackCmd {
  AttackInputs in;
  int budget = 1;
  int64_t time_ms = 600000;
  std::optional<long> calls_per_search;
  std::optional<double> beta;
  bool no_helly = false;
  std::string out;

  void Register(CLI::App* app) {
    in.Register(app);
    app->add_option("--budget", budget, "Total inserted copies b")->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app->add_option("--time-ms", time_ms, "Total wall-clock budget")->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--calls-per-search", calls_per_search,
                    "Feasibility-call budget per single-point search")
        ->check(CLI::PositiveNumber);
    app->add_option("--beta", beta, "Known approximation quality of the search")
        ->check(CLI::Range(0.0, 1.0));
    app->add_flag("--no-helly", no_helly, "Witness every candidate edge");
    app->add_option("--out,--delta-out", out, "Write the insertions as a delta CSV");
  }

  void Run() const {
    Loaded l = Load(in);
    GreedyConfig config;
    config.budget = budget;
    config.total_time = std::chrono::milliseconds(time_ms);
    config.k = g.k;
    config.norm = Norm();
    config.y_plus = l.y_plus;
    config.calls_per_search = calls_per_search;
    config.beta = beta;
    config.use_helly = !no_helly;
    config.seed = g.seed;
    AttackReport r = Git2aChoppa(l.train, l.targets, config);
    if (!out.empty()) WriteDelta(out, r.delta, l.labels, l.train.dim());

    json cfg = GlobalConfig("attack");
    cfg.update(in.Config());
    cfg["budget"] = budget;
    cfg["time_ms"] = time_ms;
    cfg["calls_per_search"] = Opt(calls_per_search);
    cfg["beta"] = Opt(beta);
    cfg["helly"] = !no_helly;
    cfg["out"] = out.empty() ? json(nullptr) : json(out);
    json calls = json::array();
    for (const SearchOutcome& c : r.calls) {
      calls.push_back({{"tsi", c.best_tsi},
                       {"multiplicity", c.best_multiplicity},
                       {"completed", c.completed},
                       {"feasibility_calls", c.feasibility_calls},
                       {"time_used_ms", c.time_used_ms}});
    }
    Emit({{"config", cfg},
          {"score_before", r.score_before},
          {"score_after", r.score_after},
          {"tsi_total", r.tsi_total},
          {"bound_factor", Opt(r.bound_factor)},
          {"insertions", InsertionsJson(r.delta, l.labels)},
          {"calls", calls}});
  }
};

// ---------------------------------------------------------------- eval

struct EvalCmd {
  AttackInputs in;
  std::string delta;

  void Register(CLI::App* app) {
    in.Register(app);
    app->add_option("--delta", delta, "Insertions CSV (same layout as data)")
        ->required()
        ->check(CLI::ExistingFile);
  }

  void Run() const {
    Loaded l = Load(in);
    Dataset rows = ReadDatasetCsv(delta, l.labels);
    if (!rows.empty() && rows.dim() != l.train.dim()) {
      throw InputError("delta and train differ in dimension");
    }
    AttackDelta d;
    for (const LabeledPoint& p : rows) {
      d.insertions.push_back({p.features, p.label, p.multiplicity});
    }
    NormSpec norm = Norm();
    json config = GlobalConfig("eval");
    config.update(in.Config());
    config["delta"] = delta;
    Emit({{"config", config},
          {"score_before", Score({}, l.targets, l.train, g.k, norm)},
          {"score_after", Score(d, l.targets, l.train, g.k, norm)},
          {"inserted", d.total_multiplicity()}});
  }
};

// ---------------------------------------------------------------- oracle

struct OracleCmd {
  std::string mode = "single";
  AttackInputs in;
  std::string train, targets, graph;
  std::optional<int> multiplicity;
  int budget = 1;
  int extra_random = 0;
  OracleLimits limits;

  void Register(CLI::App* app) {
    app->add_option("--mode", mode, "single | attack | mis")->capture_default_str()
        ->check(CLI::IsMember({"single", "attack", "mis"}));
    app->add_option("--train", in.train, "Training CSV")->check(CLI::ExistingFile);
    app->add_option("--targets", in.targets, "Target pool CSV")
        ->check(CLI::ExistingFile);
    app->add_option("--label,--yplus", in.label, "Attack label y+")->capture_default_str();
    app->add_option("--graph", graph, "Edge list (mode mis)")
        ->check(CLI::ExistingFile);
    app->add_option("--multiplicity,--mult", multiplicity,
                    "Copies for mode single (default ceil(k/2))")
        ->check(CLI::PositiveNumber);
    app->add_option("--budget", budget, "Copies for mode attack")->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app->add_option("--extra-random", extra_random,
                    "Extra random candidate points (mode attack)")->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app->add_option("--max-irs", limits.max_irs, "Region limit")->capture_default_str();
    app->add_option("--max-budget", limits.max_budget, "Budget limit")->capture_default_str();
    app->add_option("--max-vertices", limits.max_vertices, "Vertex limit")->capture_default_str();
  }

  void Run() const {
    json config = GlobalConfig("oracle");
    config["mode"] = mode;
    config["limits"] = {{"max_irs", limits.max_irs},
                        {"max_budget", limits.max_budget},
                        {"max_vertices", limits.max_vertices}};
    if (mode == "mis") {
      if (graph.empty()) throw InputError("--graph is required for mode mis");
      Graph gr = ReadEdgeList(graph);
      config["graph"] = graph;
      Emit({{"config", config}, {"mis", BruteMis(gr, limits)}});
      return;
    }
    if (in.train.empty() || in.targets.empty()) {
      throw InputError("--train and --targets are required for mode " + mode);
    }
    Loaded l = Load(in);
    config.update(in.Config());
    NormSpec norm = Norm();
    if (mode == "single") {
      int mult = multiplicity.value_or(HalfCeil(g.k));
      config["multiplicity"] = mult;
      auto irs = ConstructIrs(l.train, l.targets, l.y_plus, g.k, norm);
      SingleOracleResult r = BruteSingle(irs, mult, norm, limits, g.seed);
      Emit({{"config", config},
            {"best_tsi", r.best_tsi},
            {"witness", r.witness ? Vec(*r.witness) : json(nullptr)},
            {"members", r.members},
            {"subsets_checked", r.subsets_checked},
            {"disagreements", r.disagreements}});
      return;
    }
    config["budget"] = budget;
    config["extra_random"] = extra_random;
    BruteAttackOptions options;
    options.extra_random_points = extra_random;
    options.seed = g.seed;
    long best = BruteAttack(l.train, l.targets, l.y_plus, g.k, budget, norm,
                            limits, options);
    Emit({{"config", config},
          {"score_before", Score({}, l.targets, l.train, g.k, norm)},
          {"best_score", best}});
  }
};

// ---------------------------------------------------------------- gadget

struct GadgetCmd {
  std::string graph;
  double r = 9.0;
  std::optional<double> epsilon;
  double p = 2.0;
  int b = 1;
  std::string out_dir;

  void Register(CLI::App* app) {
    app->add_option("--graph", graph, "Edge list: 1-based 'i j' per line")
        ->required()
        ->check(CLI::ExistingFile);
    app->add_option("--r", r, "Vertex-ball radius")->capture_default_str();
    app->add_option("--epsilon,--eps", epsilon, "Edge-ball shrink (default 1/n)");
    app->add_option("--p", p, "Norm exponent of the gadget")->capture_default_str();
    app->add_option("--b", b, "Disjoint copies of the instance")->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--out-dir", out_dir,
                    "Write train.csv / targets.csv of the realization here");
  }

  void Run() const {
    GadgetParams params;
    params.graph = ReadEdgeList(graph);
    params.r = r;
    params.epsilon = epsilon;
    params.p = p;
    params.Validate();
    auto family = Phi(params);
    AtkKnnInstance inst = RealizeAtkKnn(params);
    Dataset train = ExtendK(inst.train, inst.targets, g.k, inst.train_label,
                            inst.attack_label);
    Dataset targets = inst.targets;
    if (b > 1) std::tie(train, targets) = ExtendB(train, targets, b, CopySpacing(params));
    int mis = BruteMis(params.graph);
    long predicted = static_cast<long>(params.graph.n) *
                         static_cast<long>(params.graph.edges.size()) + mis;

    json config = GlobalConfig("gadget");
    config.update({{"graph", graph}, {"r", r}, {"epsilon", params.eps()},
                   {"p", p}, {"b", b},
                   {"out_dir", out_dir.empty() ? json(nullptr) : json(out_dir)}});
    json balls = json::array();
    for (const WeightedBall& w : family) {
      balls.push_back({{"center", Vec(w.ball.center)},
                       {"radius", w.ball.radius},
                       {"multiplicity", w.multiplicity}});
    }
    json files = nullptr;
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      std::string tr = (std::filesystem::path(out_dir) / "train.csv").string();
      std::string tg = (std::filesystem::path(out_dir) / "targets.csv").string();
      WriteDatasetCsv(tr, train, inst.labels, true);
      WriteDatasetCsv(tg, targets, inst.labels, true);
      Log("wrote " + tr + " and " + tg);
      files = {{"train", tr}, {"targets", tg}};
    }
    Emit({{"config", config},
          {"n", params.graph.n},
          {"m", params.graph.edges.size()},
          {"balls", balls},
          {"mis", mis},
          {"predicted_max_intersection", predicted},
          {"attack_label", inst.labels.Name(inst.attack_label)},
          {"train_rows", train.size()},
          {"target_rows", targets.size()},
          {"files", files}});
  }
};

// ---------------------------------------------------------------- synth

struct SynthCmd {
  std::vector<std::string> families{"uniform"};
  std::vector<int> m_list{8, 16, 32, 64, 128};
  std::vector<int> d_list{2, 4, 8, 16, 32};
  int trials = 10;
  int n_targets = 10;
  int64_t time_ms = 600000;
  std::optional<long> max_calls;
  bool by_dimension = false;
  bool as_json = false;

  void Register(CLI::App* app) {
    app->add_option("--family", families, "uniform and/or normal")->capture_default_str()
        ->delimiter(',')
        ->check(CLI::IsMember({"uniform", "normal"}, CLI::ignore_case));
    app->add_option("--m", m_list, "Training sizes")->capture_default_str()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    app->add_option("--d", d_list, "Dimensions")->capture_default_str()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    app->add_option("--trials", trials, "Trials per cell")->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--targets", n_targets, "Targets per trial")->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--time-ms", time_ms, "Wall-clock budget per attack")->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--max-calls", max_calls, "Feasibility-call budget per attack")
        ->check(CLI::PositiveNumber);
    app->add_flag("--by-dimension", by_dimension,
                  "Average cells over --m per family and d "
                  "(family,norm,k,d,sizes,trials,mean_score)");
    app->add_flag("--json", as_json,
                  "Emit JSON (per-cell rows and per-dimension averages)");
  }

  struct DimensionRow {
    SynthFamily family;
    int d;
    int sizes = 0;
    int trials = 0;
    double total = 0.0;
  };

  // Cells sharing a family and dimension, pooled over training sizes.
  static std::vector<DimensionRow> ByDimension(const std::vector<SynthCell>& cells) {
    std::vector<DimensionRow> out;
    for (const SynthCell& c : cells) {
      auto it = std::find_if(out.begin(), out.end(), [&](const DimensionRow& r) {
        return r.family == c.family && r.d == c.d;
      });
      if (it == out.end()) it = out.insert(out.end(), {c.family, c.d});
      it->sizes += 1;
      it->trials += c.trials;
      it->total += c.mean_score * c.trials;
    }
    return out;
  }

  void Run() const {
    SynthGridSpec spec;
    spec.families.clear();
    for (const std::string& f : families) spec.families.push_back(ParseFamily(f));
    spec.m_list = m_list;
    spec.d_list = d_list;
    spec.trials = trials;
    spec.n_targets = n_targets;
    spec.k = g.k;
    spec.norm = Norm();
    spec.seed = g.seed;
    spec.time_per_attack = std::chrono::milliseconds(time_ms);
    spec.calls_per_attack = max_calls;
    spec.threads = g.threads;

    json config = GlobalConfig("synth");
    config.update({{"families", families}, {"m", m_list}, {"d", d_list},
                   {"trials", trials}, {"targets", n_targets},
                   {"time_ms", time_ms}, {"max_calls", Opt(max_calls)},
                   {"by_dimension", by_dimension}});
    Log("config " + config.dump());
    auto cells = RunSynthGrid(spec);
    if (as_json) {
      json rows = json::array();
      for (const SynthCell& c : cells) {
        rows.push_back({{"family", FamilyName(c.family)}, {"m", c.m}, {"d", c.d},
                        {"trials", c.trials}, {"mean_score", c.mean_score},
                        {"sem", c.sem}, {"completed", c.completed}});
      }
      json dims = json::array();
      for (const DimensionRow& r : ByDimension(cells)) {
        dims.push_back({{"family", FamilyName(r.family)}, {"d", r.d},
                        {"sizes", r.sizes}, {"trials", r.trials},
                        {"mean_score", r.total / r.trials}});
      }
      Emit({{"config", config}, {"rows", rows}, {"by_dimension", dims}});
      return;
    }
    std::vector<std::vector<std::string>> rows;
    if (by_dimension) {
      for (const DimensionRow& r : ByDimension(cells)) {
        rows.push_back({FamilyName(r.family), g.norm, std::to_string(g.k),
                        std::to_string(r.d), std::to_string(r.sizes),
                        std::to_string(r.trials), FormatReal(r.total / r.trials)});
      }
      WriteCsvTable({"family", "norm", "k", "d", "sizes", "trials", "mean_score"},
                    rows);
      return;
    }
    for (const SynthCell& c : cells) {
      rows.push_back({FamilyName(c.family), g.norm, std::to_string(g.k),
                      std::to_string(c.m), std::to_string(c.d),
                      std::to_string(c.trials), FormatReal(c.mean_score),
                      FormatReal(c.sem), std::to_string(c.completed)});
    }
    WriteCsvTable({"family", "norm", "k", "m", "d", "trials", "mean_score",
                   "sem", "completed"},
                  rows);
  }
};

// ---------------------------------------------------------------- pca

struct PcaCmd {
  std::string train;
  std::optional<int> d_prime;
  std::string model_in, model_out, transform, out;

  void Register(CLI::App* app) {
    app->add_option("--train", train, "Fit on this CSV")->check(CLI::ExistingFile);
    app->add_option("--d-prime", d_prime, "Output dimension")
        ->check(CLI::PositiveNumber);
    app->add_option("--model-in", model_in, "Load a fitted model (JSON)")
        ->check(CLI::ExistingFile);
    app->add_option("--model-out", model_out, "Save the fitted model (JSON)");
    app->add_option("--transform", transform, "Project this CSV")
        ->check(CLI::ExistingFile);
    app->add_option("--out", out, "Where to write the projected CSV");
  }

  static PcaModel LoadModel(const std::string& path) {
    std::ifstream f(path);
    json j;
    try {
      f >> j;
      PcaModel m;
      m.mean = j.at("mean").get<Vector>();
      m.components = j.at("components").get<std::vector<Vector>>();
      m.eigenvalues = j.value("eigenvalues", std::vector<double>{});
      m.explained_variance_ratio = j.value("explained_variance_ratio", 1.0);
      for (const Vector& c : m.components) {
        if (c.size() != m.mean.size()) throw InputError("component size mismatch");
      }
      if (m.components.empty()) throw InputError("model has no components");
      return m;
    } catch (const json::exception& e) {
      throw InputError("bad model file '" + path + "': " + e.what());
    }
  }

  void Run() const {
    if (model_in.empty() == train.empty()) {
      throw InputError("give exactly one of --train or --model-in");
    }
    if (!train.empty() && !d_prime) throw InputError("--d-prime is required with --train");
    if (!transform.empty() && out.empty()) throw InputError("--transform needs --out");
    LabelMap labels;
    PcaModel model;
    if (!train.empty()) {
      model = PcaFit(ReadDatasetCsv(train, labels), *d_prime);
    } else {
      model = LoadModel(model_in);
    }
    json model_json = {{"mean", Vec(model.mean)},
                       {"components", model.components},
                       {"eigenvalues", model.eigenvalues},
                       {"explained_variance_ratio", model.explained_variance_ratio}};
    if (!model_out.empty()) {
      std::ofstream f(model_out);
      if (!f) throw InputError("cannot write '" + model_out + "'");
      f << model_json.dump(2) << "\n";
      Log("wrote " + model_out);
    }
    if (!transform.empty()) {
      Dataset data = ReadDatasetCsv(transform, labels);
      WriteDatasetCsv(out, PcaTransform(model, data), labels, true);
      Log("wrote " + out);
    }
    json config = GlobalConfig("pca");
    config.update({{"train", train.empty() ? json(nullptr) : json(train)},
                   {"d_prime", Opt(d_prime)},
                   {"model_in", model_in.empty() ? json(nullptr) : json(model_in)},
                   {"model_out", model_out.empty() ? json(nullptr) : json(model_out)},
                   {"transform", transform.empty() ? json(nullptr) : json(transform)},
                   {"out", out.empty() ? json(nullptr) : json(out)}});
    Emit({{"config", config},
          {"input_dim", model.input_dim()},
          {"output_dim", model.output_dim()},
          {"explained_variance_ratio", model.explained_variance_ratio},
          {"eigenvalues", model.eigenvalues}});
  }
};

// ---------------------------------------------------------------- defend

struct DefendCmd {
  AttackInputs in;
  std::string holdout;
  bool synthetic = false;
  TwoClassSpec gen;
  std::vector<int> d_primes{2, 8, 32};
  std::vector<int> budgets{1, 5};
  int64_t time_ms = 60000;
  std::optional<long> calls_per_search;
  bool as_json = false;

  void Register(CLI::App* app) {
    app->add_option("--train", in.train, "Training CSV")->check(CLI::ExistingFile);
    app->add_option("--targets", in.targets, "Target pool CSV")
        ->check(CLI::ExistingFile);
    app->add_option("--holdout", holdout, "Holdout CSV for the loss column")
        ->check(CLI::ExistingFile);
    app->add_option("--label,--yplus", in.label, "Attack label y+")->capture_default_str();
    app->add_flag("--synthetic", synthetic,
                  "Use the seeded two-class Gaussian data instead of files");
    app->add_option("--dim", gen.d, "Synthetic dimension")->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--per-class", gen.per_class, "Synthetic points per class")->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--holdout-per-class", gen.holdout_per_class,
                    "Synthetic holdout points per class")->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app->add_option("--n-targets", gen.n_targets, "Synthetic targets")->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--separation", gen.separation, "Distance between class means")->capture_default_str();
    app->add_option("--d-prime", d_primes, "PCA dimensions (>= d means original)")->capture_default_str()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    app->add_option("--budgets", budgets, "Attack budgets")->capture_default_str()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    app->add_option("--time-ms", time_ms, "Wall-clock budget per unit of b")->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--calls-per-search", calls_per_search,
                    "Feasibility-call budget per single-point search")
        ->check(CLI::PositiveNumber);
    app->add_flag("--json", as_json, "Emit JSON instead of CSV");
  }

  void Run() {
    Dataset train, targets, hold;
    ClassId y_plus = 0;
    json config = GlobalConfig("defend");
    if (synthetic) {
      if (!in.train.empty() || !in.targets.empty()) {
        throw InputError("--synthetic excludes --train/--targets");
      }
      gen.seed = g.seed;
      TwoClassInstance inst = GenTwoClass(gen);
      train = std::move(inst.train);
      targets = std::move(inst.targets);
      hold = std::move(inst.holdout);
      y_plus = inst.y_plus;
      config.update({{"synthetic", true}, {"dim", gen.d},
                     {"per_class", gen.per_class},
                     {"holdout_per_class", gen.holdout_per_class},
                     {"n_targets", gen.n_targets}, {"separation", gen.separation}});
    } else {
      if (in.train.empty() || in.targets.empty()) {
        throw InputError("--train and --targets are required without --synthetic");
      }
      Loaded l = Load(in);
      if (!holdout.empty()) hold = ReadDatasetCsv(holdout, l.labels);
      train = std::move(l.train);
      targets = std::move(l.targets);
      y_plus = l.y_plus;
      config.update(in.Config());
      config["synthetic"] = false;
      config["holdout"] = holdout.empty() ? json(nullptr) : json(holdout);
    }
    DefenseSpec spec;
    spec.d_primes = d_primes;
    spec.budgets = budgets;
    spec.k = g.k;
    spec.norm = Norm();
    spec.y_plus = y_plus;
    spec.time_per_budget_unit = std::chrono::milliseconds(time_ms);
    spec.calls_per_search = calls_per_search;
    spec.seed = g.seed;
    spec.threads = g.threads;
    config.update({{"d_prime", d_primes}, {"budgets", budgets},
                   {"time_ms", time_ms},
                   {"calls_per_search", Opt(calls_per_search)}});
    Log("config " + config.dump());
    auto rows = RunDefense(train, targets, hold, spec);
    if (as_json) {
      json out = json::array();
      for (const DefenseRow& r : rows) {
        out.push_back({{"d_prime", r.d_prime}, {"original", r.original},
                       {"budget", r.budget}, {"score_fraction", r.score_fraction},
                       {"holdout_loss", hold.empty() ? json(nullptr) : json(r.holdout_loss)},
                       {"var_explained", r.var_explained}});
      }
      Emit({{"config", config}, {"rows", out}});
      return;
    }
    std::vector<std::vector<std::string>> table;
    for (const DefenseRow& r : rows) {
      table.push_back({r.original ? "original" : std::to_string(r.d_prime),
                       std::to_string(r.budget), FormatReal(r.score_fraction),
                       hold.empty() ? "" : FormatReal(r.holdout_loss),
                       FormatReal(r.var_explained)});
    }
    WriteCsvTable({"d_prime", "budget", "score_fraction", "holdout_loss",
                   "var_explained"},
                  table);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "knnpoison: data-insertion attacks on k-nearest-neighbor classifiers.\n"
      "Tables: synth -> family,norm,k,m,d,trials,mean_score,sem,completed;\n"
      "defend -> d_prime,budget,score_fraction,holdout_loss,var_explained."};
  app.require_subcommand(1);
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--norm", g.norm, "Distance: l2 or linf")->capture_default_str()
      ->check(CLI::IsMember({"l2", "linf"}));
  app.add_option("--k", g.k, "Neighbors in the classifier")->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_flag("--quiet", g.quiet, "No logs on stderr");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")->capture_default_str()
      ->check(CLI::NonNegativeNumber);

  IrsCmd irs;
  AttackOneCmd attack_one;
  AttackCmd attack;
  EvalCmd eval;
  OracleCmd oracle;
  GadgetCmd gadget;
  SynthCmd synth;
  PcaCmd pca;
  DefendCmd defend;
  irs.Register(app.add_subcommand("irs", "Influencing region of every target"));
  attack_one.Register(app.add_subcommand("attack-one", "Best single insertion point"));
  attack.Register(app.add_subcommand("attack", "Greedy budgeted attack"));
  eval.Register(app.add_subcommand("eval", "Score of a given insertion set"));
  oracle.Register(app.add_subcommand("oracle", "Exhaustive reference solvers"));
  gadget.Register(app.add_subcommand("gadget", "Hardness gadget for a graph"));
  synth.Register(app.add_subcommand("synth", "Synthetic attackability grid (CSV)"));
  pca.Register(app.add_subcommand("pca", "Fit or apply a PCA projection"));
  defend.Register(app.add_subcommand("defend", "Dimensionality-reduction defense (CSV)"));
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  Log("threads: " + std::to_string(g.threads));
  try {
    if (app.got_subcommand("irs")) irs.Run();
    if (app.got_subcommand("attack-one")) attack_one.Run();
    if (app.got_subcommand("attack")) attack.Run();
    if (app.got_subcommand("eval")) eval.Run();
    if (app.got_subcommand("oracle")) oracle.Run();
    if (app.got_subcommand("gadget")) gadget.Run();
    if (app.got_subcommand("synth")) synth.Run();
    if (app.got_subcommand("pca")) pca.Run();
    if (app.got_subcommand("defend")) defend.Run();
  } catch (const InputError& e) {
    std::cerr << "knnpoison: input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const LimitError& e) {
    std::cerr << "knnpoison: refused: " << e.what() << "\n";
    return kExitLimit;
  } catch (const std::exception& e) {
    std::cerr << "knnpoison: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
