// Copyright 2026 The cooplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cooplab/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cooplab/cfp.hpp"
#include "cooplab/decomposition.hpp"
#include "cooplab/dfp.hpp"
#include "cooplab/equivalence.hpp"
#include "cooplab/error.hpp"
#include "cooplab/experiments.hpp"
#include "cooplab/io.hpp"

namespace cooplab {
namespace {

using Json = nlohmann::ordered_json;

struct GameSource {
  std::string input;
  std::string builtin;

  void Attach(CLI::App* sub) {
    auto* in = sub->add_option("--input", input, "game JSON file (FILE or FILE#KEY)");
    auto* bi = sub->add_option("--builtin", builtin, "builtin game name")
                   ->check(CLI::IsMember(BuiltinNames()));
    in->excludes(bi);
  }

  template <typename T>
  BimatrixGame<T> Load() const {
    if (!builtin.empty()) {
      if constexpr (ScalarTraits<T>::kExact) {
        return Builtin(builtin);
      } else {
        return ToDoubleGame(Builtin(builtin));
      }
    }
    if (input.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "one of --input or --builtin is required");
    }
    return LoadGame<T>(input);
  }

  std::string Describe() const { return builtin.empty() ? input : "builtin:" + builtin; }
};

template <typename T>
Json ScalarJson(const T& x) {
  if constexpr (ScalarTraits<T>::kExact) {
    return ToString(x);
  } else {
    return x;
  }
}

template <typename T>
Json MatrixJson(const Matrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(ScalarJson(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename T>
Json GameJson(const BimatrixGame<T>& g) {
  return Json{{"A", MatrixJson(g.A())}, {"B", MatrixJson(g.B())}};
}

template <typename T>
Json VectorJson(const Vector<T>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(ScalarJson(x));
  return out;
}

Json CycleJson(const std::optional<CycleDescriptor>& cycle) {
  if (!cycle) return nullptr;
  Json pairs = Json::array();
  for (const auto& [i, j] : cycle->pairs) pairs.push_back({i + 1, j + 1});
  return Json{{"pairs", pairs},
              {"entry", cycle->entry_round},
              {"repetitions", cycle->repetitions}};
}

std::string Scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return ToString(v.get<double>());
  return v.dump();
}

// Plain-text rendering of a result object: one "key: value" line per scalar,
// matrices as indented rows.
void PrintHuman(std::ostream& out, const Json& node, const std::string& indent) {
  for (const auto& [key, value] : node.items()) {
    if (value.is_object()) {
      out << indent << key << ":\n";
      PrintHuman(out, value, indent + "  ");
    } else if (value.is_array() && !value.empty() && value[0].is_array() &&
               !value[0].empty() && !value[0][0].is_array()) {
      out << indent << key << ":\n";
      for (const auto& row : value) {
        out << indent << " ";
        for (const auto& x : row) out << ' ' << Scalar(x);
        out << '\n';
      }
    } else if (value.is_array() && !value.empty() && value[0].is_object()) {
      out << indent << key << ":\n";
      for (const auto& row : value) {
        out << indent << " ";
        for (const auto& [k, v] : row.items()) out << ' ' << k << '=' << Scalar(v);
        out << '\n';
      }
    } else if (value.is_array()) {
      out << indent << key << ":";
      for (const auto& x : value) {
        if (x.is_array()) {
          out << " (";
          for (std::size_t k = 0; k < x.size(); ++k) out << (k ? "," : "") << Scalar(x[k]);
          out << ")";
        } else {
          out << ' ' << Scalar(x);
        }
      }
      out << '\n';
    } else if (value.is_null()) {
      out << indent << key << ": none\n";
    } else {
      out << indent << key << ": " << Scalar(value) << '\n';
    }
  }
}

std::vector<std::string> SplitOn(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

ActionPair ParsePair(const std::string& text, std::size_t m, std::size_t n) {
  const auto parts = SplitOn(text, ',');
  if (parts.size() != 2) {
    throw Error(ErrorCode::kInvalidArgument, "expected a pair like 1,2, got '" + text + "'");
  }
  long i = 0, j = 0;
  try {
    i = std::stol(parts[0]);
    j = std::stol(parts[1]);
  } catch (...) {
    throw Error(ErrorCode::kInvalidArgument, "expected a pair like 1,2, got '" + text + "'");
  }
  if (i < 1 || j < 1 || static_cast<std::size_t>(i) > m || static_cast<std::size_t>(j) > n) {
    throw Error(ErrorCode::kIndexOutOfRange, "action pair '" + text + "' outside the game");
  }
  return {static_cast<Action>(i - 1), static_cast<Action>(j - 1)};
}

template <typename T>
Vector<T> ParseVector(const std::string& text) {
  Vector<T> out;
  for (const auto& part : SplitOn(text, ',')) out.push_back(ParseScalar<T>(part));
  return out;
}

template <typename T>
MixedProfile<T> InitProfile(const std::string& init, const std::string& init_p,
                            const std::string& init_q, std::size_t m, std::size_t n,
                            ActionPair fallback) {
  if (!init_p.empty() || !init_q.empty()) {
    if (init_p.empty() || init_q.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "--init-p and --init-q go together");
    }
    return MixedProfile<T>(ParseVector<T>(init_p), ParseVector<T>(init_q));
  }
  const ActionPair pair = init.empty() ? fallback : ParsePair(init, m, n);
  return MixedProfile<T>::Pure(m, n, pair.first, pair.second);
}

std::vector<Rational> ParseGrid(const std::string& text) {
  const auto parts = SplitOn(text, ':');
  if (parts.size() == 3) {
    return LambdaGrid(ParseRational(parts[0]), ParseRational(parts[1]),
                      ParseRational(parts[2]));
  }
  std::vector<Rational> out;
  for (const auto& part : SplitOn(text, ',')) out.push_back(ParseRational(part));
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "empty lambda grid");
  return out;
}

void WriteManifest(const std::string& path, const std::string& command,
                   const CLI::App& sub, const std::string& game,
                   std::uint64_t seed, std::vector<std::string> outputs) {
  RunManifest manifest;
  manifest.command = command;
  manifest.game_path = game;
  manifest.config_hash = Fnv1aHex(command + "\n" + sub.config_to_str(true, false));
  manifest.seed = seed;
  manifest.outputs = std::move(outputs);
  WriteTextFile(path, manifest.ToJson());
}

template <typename T>
Json DecomposeJson(const BimatrixGame<T>& g, const std::string& mode,
                   std::vector<std::pair<std::string, BimatrixGame<T>>>* parts) {
  Json membership;
  if (mode == "hodge") {
    const HodgeParts<T> hp = HodgeDecompose(g);
    *parts = {{"P", hp.P}, {"H", hp.H}, {"E", hp.E}};
    membership = {{"P", IsInSubspace(hp.P, Subspace::kP)},
                  {"H", IsInSubspace(hp.H, Subspace::kH)},
                  {"E", IsInSubspace(hp.E, Subspace::kE)}};
  } else {
    const StrategicParts<T> sp = StrategicDecompose(g);
    *parts = {{"I", sp.identical}, {"Z", sp.zero_sum}, {"B", sp.dominant}};
    membership = {
        {"I", IsInSubspace(sp.identical, Subspace::kI) &&
                  IsInSubspace(sp.identical, Subspace::kN)},
        {"Z", IsInSubspace(sp.zero_sum, Subspace::kZ) &&
                  IsInSubspace(sp.zero_sum, Subspace::kN)},
        {"B", IsInSubspace(sp.dominant, Subspace::kB)}};
  }
  BimatrixGame<T> sum = BimatrixGame<T>::Zero(g.m(), g.n());
  for (const auto& [name, part] : *parts) sum += part;
  const BimatrixGame<T> diff = sum - g;
  const T residual = std::max(MaxAbs(diff.A()), MaxAbs(diff.B()));
  Json result{{"mode", mode}};
  Json games;
  for (const auto& [name, part] : *parts) games[name] = GameJson(part);
  result["parts"] = games;
  result["verification"] = {{"residual", ScalarJson(residual)},
                            {"membership", membership}};
  return result;
}

template <typename T>
Json ClassifyJson(const BimatrixGame<T>& g) {
  const ClassVerdict<T> v = Classify(g);
  Json out{{"label", ClassLabelName(v.label)}};
  out["alpha"] = v.alpha ? ScalarJson(*v.alpha) : Json(nullptr);
  out["beta"] = v.beta ? ScalarJson(*v.beta) : Json(nullptr);
  if (v.alpha && v.beta) {
    out["ratio"] = ScalarJson(T(*v.beta / *v.alpha));
  } else {
    out["ratio"] = nullptr;
  }
  out["residual"] = ScalarJson(v.WitnessResidual(g));
  return out;
}

template <typename T>
Json DfpJson(const Trajectory<T>& traj, std::size_t rounds) {
  Json out{{"converged", traj.converged},
           {"rounds", rounds},
           {"final_me", ToDouble(traj.final_report.ME)},
           {"final_u", ToDouble(traj.final_report.U)},
           {"p", VectorJson(traj.final_profile.p())},
           {"q", VectorJson(traj.final_profile.q())}};
  out["cycle"] = CycleJson(DetectCycle(traj.br_stream));
  return out;
}

struct Options {
  bool json = false;
  std::string validate_csv;
  GameSource game;
  std::string mode = "hodge";
  std::string output;
  bool exact = false;
  // dynamics
  std::string init, init_p, init_q;
  std::size_t rounds = 100000;
  std::size_t record_every = 1000;
  std::string tie = "lowest";
  std::uint64_t seed = 0;
  std::optional<double> eps;
  std::string csv;
  std::string manifest;
  double horizon_log = std::log(1e6);
  std::size_t samples = 401;
  double t0 = 1.0;
  // sweep / threshold
  std::string p_path, h_path;
  std::string lambda = "0:1:1/100";
  std::size_t threads = 0;
  bool shapley_metric = false;
  std::string lo = "0", hi = "1";
  double tol = 1e-6;
  // builtin / certificate
  std::string name;
  std::string cycle;
  std::string cert_lambda = "1";
  std::size_t cert_samples = 2000;
};

void AttachDynamics(CLI::App* sub, Options& o, bool cfp) {
  o.game.Attach(sub);
  sub->add_option("--init", o.init, "pure start pair i,j (1-based)");
  sub->add_option("--init-p", o.init_p, "row mixed start, comma separated");
  sub->add_option("--init-q", o.init_q, "column mixed start, comma separated");
  sub->add_option("--tie", o.tie, "tie rule")
      ->check(CLI::IsMember({"lowest", "sticky", "random"}));
  sub->add_option("--seed", o.seed, "seed for the random tie rule");
  sub->add_option("--eps", o.eps, "convergence threshold on ME");
  sub->add_option("--csv", o.csv, "trajectory CSV output");
  sub->add_option("--manifest", o.manifest, "run manifest JSON output");
  if (cfp) {
    sub->add_option("--horizon-log", o.horizon_log, "horizon in log-time s = ln t");
    sub->add_option("--samples", o.samples, "U samples on the s grid");
    sub->add_option("--t0", o.t0, "start time of the integral identity check");
  } else {
    sub->add_option("--rounds", o.rounds, "number of rounds");
    sub->add_option("--record-every", o.record_every, "sampling stride");
    sub->add_flag("--exact", o.exact, "rational arithmetic");
  }
}

void AttachParts(CLI::App* sub, Options& o) {
  sub->add_option("--p", o.p_path, "normalized potential part (FILE#KEY)");
  sub->add_option("--h", o.h_path, "normalized harmonic part (FILE#KEY)");
  sub->add_option("--builtin", o.game.builtin, "decompose a builtin game instead")
      ->check(CLI::IsMember(BuiltinNames()));
}

std::pair<BimatrixGame<Rational>, BimatrixGame<Rational>> LoadParts(const Options& o) {
  if (!o.game.builtin.empty()) {
    const HodgeParts<Rational> hp = HodgeDecompose(Builtin(o.game.builtin));
    return {hp.P, hp.H};
  }
  if (o.p_path.empty() || o.h_path.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--p and --h (or --builtin) are required");
  }
  return {LoadGame<Rational>(o.p_path), LoadGame<Rational>(o.h_path)};
}

DfpConfig MakeDfpConfig(const Options& o) {
  DfpConfig cfg;
  cfg.rounds = o.rounds;
  cfg.record_every = std::min(o.record_every, o.rounds);
  cfg.tie_rule = ParseTieRule(o.tie);
  cfg.seed = o.seed;
  if (o.eps) cfg.convergence_eps = *o.eps;
  return cfg;
}

template <typename T>
Json PlayDfp(const Options& o, CLI::App* sub) {
  const BimatrixGame<T> game = o.game.Load<T>();
  const MixedProfile<T> init =
      InitProfile<T>(o.init, o.init_p, o.init_q, game.m(), game.n(), {0, 0});
  const DfpConfig cfg = MakeDfpConfig(o);
  const Trajectory<T> traj = RunDfp(game, DfpInit<T>(init), cfg);
  if (!o.csv.empty()) {
    std::ofstream f(o.csv);
    if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + o.csv + "'");
    WriteDfpCsv(f, traj);
  }
  if (!o.manifest.empty()) {
    WriteManifest(o.manifest, "play dfp", *sub, o.game.Describe(), o.seed,
                  o.csv.empty() ? std::vector<std::string>{} : std::vector{o.csv});
  }
  return DfpJson(traj, cfg.rounds);
}

Json PlayCfp(const Options& o, CLI::App* sub) {
  const BimatrixGame<double> game = o.game.Load<double>();
  const MixedProfile<double> init =
      InitProfile<double>(o.init, o.init_p, o.init_q, game.m(), game.n(), {0, 0});
  CfpConfig cfg;
  cfg.horizon_log = o.horizon_log;
  cfg.tie_rule = ParseTieRule(o.tie);
  cfg.seed = o.seed;
  cfg.bru_samples = o.samples;
  if (o.eps) cfg.convergence_eps = *o.eps;
  const CfpTrajectory traj = RunCfp(game, init, cfg);
  if (!o.csv.empty()) {
    std::ofstream f(o.csv);
    if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + o.csv + "'");
    WriteCfpCsv(f, traj, game);
  }
  if (!o.manifest.empty()) {
    WriteManifest(o.manifest, "play cfp", *sub, o.game.Describe(), o.seed,
                  o.csv.empty() ? std::vector<std::string>{} : std::vector{o.csv});
  }
  Json out{{"verdict", CfpVerdictName(traj.verdict)},
           {"segments", traj.segments.size()},
           {"s_end", traj.s_end()},
           {"final_me", traj.final_me},
           {"final_u", traj.bru_series.empty() ? 0.0 : traj.bru_series.back().second},
           {"p", VectorJson(traj.final_profile.p())},
           {"q", VectorJson(traj.final_profile.q())}};
  out["cycle"] = CycleJson(traj.cycle);
  out["integral_residual"] = BruIntegralCheck(traj, game, o.t0);
  return out;
}

Json Sweep(const Options& o, CLI::App* sub) {
  SweepConfig cfg;
  cfg.dfp = MakeDfpConfig(o);
  cfg.dfp.record_every = cfg.dfp.rounds;
  cfg.threads = o.threads;
  const std::vector<Rational> grid = ParseGrid(o.lambda);
  std::vector<SweepRecord> records;
  std::string source;
  if (o.shapley_metric) {
    records = ShapleyMetricSweep(grid, cfg);
    source = "builtin:shapley";
  } else {
    const auto [P, H] = LoadParts(o);
    const BimatrixGame<Rational> probe = P;
    cfg.start = o.init.empty() ? ActionPair{0, 0} : ParsePair(o.init, probe.m(), probe.n());
    records = LambdaSweep(P, H, grid, cfg);
    source = o.game.builtin.empty() ? o.p_path + "," + o.h_path : "builtin:" + o.game.builtin;
  }
  if (!o.csv.empty()) {
    std::ofstream f(o.csv);
    if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + o.csv + "'");
    WriteSweepCsv(f, records);
  }
  if (!o.manifest.empty()) {
    WriteManifest(o.manifest, "sweep", *sub, source, o.seed,
                  o.csv.empty() ? std::vector<std::string>{} : std::vector{o.csv});
  }
  Json rows = Json::array();
  for (const auto& r : records) {
    rows.push_back({{"lambda", ToString(r.lambda)},
                    {"label", ClassLabelName(r.label)},
                    {"converged", r.converged},
                    {"final_me", r.final_me},
                    {"final_u", r.final_u}});
  }
  if (o.shapley_metric) {
    std::vector<double> me, u;
    for (const auto& r : records) {
      me.push_back(r.final_me);
      u.push_back(r.final_u);
    }
    return Json{{"records", rows},
                {"one_peak", IsOnePeak(me)},
                {"smooth_u", SmoothJumps(u)}};
  }
  return Json{{"records", rows}};
}

Json Threshold(const Options& o) {
  const auto [P, H] = LoadParts(o);
  if (o.exact) {
    const Rational r =
        FindClassThresholdExact(P, H, ParseRational(o.lo), ParseRational(o.hi));
    return Json{{"threshold", ToString(r)}, {"value", ToDouble(r)}};
  }
  const double r = FindClassThreshold(P, H, ParseDouble(o.lo), ParseDouble(o.hi), o.tol);
  return Json{{"threshold", r}};
}

Json CertifyT4(const Options& o) {
  const BimatrixGame<double> game = o.game.Load<double>();
  const StrategicParts<double> sp = StrategicDecompose(game);
  CycleDescriptor cycle;
  if (!o.cycle.empty()) {
    for (const auto& part : SplitOn(o.cycle, ';')) {
      cycle.pairs.push_back(ParsePair(part, game.m(), game.n()));
    }
  }
  const Theorem4Certificate cert =
      Theorem4CertificateCheck(sp.zero_sum, ParseDouble(o.cert_lambda), sp.identical,
                               cycle, o.cert_samples, o.seed);
  Json out{{"kind", CertificateKindName(cert.kind)},
           {"path_points", cert.path_points},
           {"evaluated", cert.evaluated},
           {"max_derivative", std::isfinite(cert.max_derivative)
                                  ? Json(cert.max_derivative)
                                  : Json(nullptr)}};
  if (cert.witness) {
    out["witness"] = {{"p", VectorJson(cert.witness->p())},
                      {"q", VectorJson(cert.witness->q())}};
  }
  return out;
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNumericalStall:
    case ErrorCode::kInsufficientPathData:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Options o;
  CLI::App app{"Decomposition, classification and fictitious play for bimatrix games",
               "cooplab"};
  // Long form only: "-h" would clash with the --h option of sweep/threshold.
  app.set_help_flag("--help", "print this help");
  app.fallthrough();
  app.require_subcommand(0, 1);
  app.add_flag("--json", o.json, "machine-readable output");
  app.add_option("--validate-csv", o.validate_csv, "check a CSV written by this tool");

  auto* decompose = app.add_subcommand("decompose", "Hodge or strategic decomposition");
  o.game.Attach(decompose);
  decompose->add_option("--mode", o.mode, "hodge or strategic")
      ->check(CLI::IsMember({"hodge", "strategic"}));
  decompose->add_option("--output", o.output, "write the parts as JSON");
  decompose->add_flag("--exact", o.exact, "rational arithmetic");

  auto* classify = app.add_subcommand("classify", "strategic-equivalence class");
  o.game.Attach(classify);
  classify->add_flag("--exact", o.exact, "rational arithmetic");

  auto* play = app.add_subcommand("play", "run fictitious play");
  play->require_subcommand(1);
  auto* dfp = play->add_subcommand("dfp", "discrete-time fictitious play");
  AttachDynamics(dfp, o, false);
  auto* cfp = play->add_subcommand("cfp", "continuous-time fictitious play");
  AttachDynamics(cfp, o, true);

  auto* sweep = app.add_subcommand("sweep", "classify and play along lambda P + (1 - lambda) H");
  AttachParts(sweep, o);
  sweep->add_option("--lambda", o.lambda, "lo:hi:step or a comma list");
  sweep->add_option("--rounds", o.rounds, "rounds per run");
  sweep->add_option("--init", o.init, "pure start pair i,j (1-based)");
  sweep->add_option("--tie", o.tie, "tie rule")
      ->check(CLI::IsMember({"lowest", "sticky", "random"}));
  sweep->add_option("--seed", o.seed, "seed for the random tie rule");
  sweep->add_option("--eps", o.eps, "convergence threshold on ME");
  sweep->add_option("--threads", o.threads, "worker threads");
  sweep->add_option("--csv", o.csv, "sweep CSV output");
  sweep->add_option("--manifest", o.manifest, "run manifest JSON output");
  sweep->add_flag("--shapley-metric", o.shapley_metric,
                  "Shapley parts from (1,2), with one-peak and smoothness checks");

  auto* threshold = app.add_subcommand("threshold", "lambda where the class flips");
  AttachParts(threshold, o);
  threshold->add_option("--lo", o.lo, "bracket start");
  threshold->add_option("--hi", o.hi, "bracket end");
  threshold->add_option("--tol", o.tol, "bisection tolerance");
  threshold->add_flag("--exact", o.exact, "closed-form rational root");

  auto* builtin = app.add_subcommand("builtin", "write a builtin game");
  builtin->add_option("name", o.name, "builtin name")
      ->required()
      ->check(CLI::IsMember(BuiltinNames()));
  builtin->add_option("--output", o.output, "output JSON file");

  auto* certify = app.add_subcommand("certify-t4", "sample dU/dt along a cycle");
  o.game.Attach(certify);
  certify->add_option("--lambda", o.cert_lambda, "weight of the identical-interest part");
  certify->add_option("--cycle", o.cycle, "pairs like 2,2;1,1;3,3")->required();
  certify->add_option("--samples", o.cert_samples, "convex combinations to test");
  certify->add_option("--seed", o.seed, "sampling seed");

  std::vector<std::string> argv_store{"cooplab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    Json result;
    if (!o.validate_csv.empty()) {
      const CsvReport rep = ValidateCsv(ReadTextFile(o.validate_csv));
      result = {{"valid", rep.ok}, {"kind", rep.kind}, {"rows", rep.rows},
                {"message", rep.message}};
      if (o.json) {
        out << result.dump(2) << '\n';
      } else {
        PrintHuman(out, result, "");
      }
      return rep.ok ? 0 : 1;
    }
    if (decompose->parsed()) {
      if (o.exact) {
        std::vector<std::pair<std::string, BimatrixGame<Rational>>> parts;
        result = DecomposeJson(o.game.Load<Rational>(), o.mode, &parts);
        if (!o.output.empty()) {
          WriteTextFile(o.output, PartsToJson(parts, {{"mode", o.mode}}));
        }
      } else {
        std::vector<std::pair<std::string, BimatrixGame<double>>> parts;
        result = DecomposeJson(o.game.Load<double>(), o.mode, &parts);
        if (!o.output.empty()) {
          WriteTextFile(o.output, PartsToJson(parts, {{"mode", o.mode}}));
        }
      }
    } else if (classify->parsed()) {
      result = o.exact ? ClassifyJson(o.game.Load<Rational>())
                       : ClassifyJson(o.game.Load<double>());
    } else if (dfp->parsed()) {
      result = o.exact ? PlayDfp<Rational>(o, dfp) : PlayDfp<double>(o, dfp);
    } else if (cfp->parsed()) {
      result = PlayCfp(o, cfp);
    } else if (sweep->parsed()) {
      result = Sweep(o, sweep);
    } else if (threshold->parsed()) {
      result = Threshold(o);
    } else if (builtin->parsed()) {
      const std::string text = GameToJson(Builtin(o.name));
      if (o.output.empty()) {
        out << text;
        return 0;
      }
      WriteTextFile(o.output, text);
      result = {{"written", o.output}};
    } else if (certify->parsed()) {
      result = CertifyT4(o);
    } else {
      err << app.help();
      return 1;
    }
    if (o.json) {
      out << result.dump(2) << '\n';
    } else {
      PrintHuman(out, result, "");
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace cooplab
