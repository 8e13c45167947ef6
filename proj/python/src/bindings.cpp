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

// Python bindings. Games cross the boundary as pairs of matrices of decimal
// or fraction strings, so exact values survive; the Python package converts
// them to and from fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cooplab/cfp.hpp"
#include "cooplab/cli.hpp"
#include "cooplab/decomposition.hpp"
#include "cooplab/dfp.hpp"
#include "cooplab/equivalence.hpp"
#include "cooplab/error.hpp"
#include "cooplab/experiments.hpp"

namespace py = pybind11;

namespace cooplab {
namespace {

using StrMatrix = std::vector<std::vector<std::string>>;
using StrGame = std::pair<StrMatrix, StrMatrix>;

template <typename T>
Matrix<T> FromStrings(const StrMatrix& rows) {
  const std::size_t m = rows.size(), n = m == 0 ? 0 : rows[0].size();
  Matrix<T> out(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != n) throw Error(ErrorCode::kDimensionMismatch, "ragged matrix");
    for (std::size_t j = 0; j < n; ++j) out(i, j) = ParseScalar<T>(rows[i][j]);
  }
  return out;
}

template <typename T>
BimatrixGame<T> GameFrom(const StrGame& g) {
  return BimatrixGame<T>(FromStrings<T>(g.first), FromStrings<T>(g.second));
}

StrMatrix ToStrings(const Matrix<Rational>& m) {
  StrMatrix rows(m.rows(), std::vector<std::string>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = ToString(m(i, j));
  return rows;
}

StrGame ToStrings(const BimatrixGame<Rational>& g) { return {ToStrings(g.A()), ToStrings(g.B())}; }

py::object Cycle(const std::optional<CycleDescriptor>& c) {
  if (!c) return py::none();
  py::dict d;
  d["pairs"] = c->pairs;
  d["entry"] = c->entry_round;
  d["repetitions"] = c->repetitions;
  return d;
}

py::dict ClassifyPy(const StrGame& g) {
  const auto v = Classify(GameFrom<Rational>(g));
  py::dict d;
  d["label"] = ClassLabelName(v.label);
  d["alpha"] = v.alpha ? py::cast(ToString(*v.alpha)) : py::none();
  d["beta"] = v.beta ? py::cast(ToString(*v.beta)) : py::none();
  return d;
}

py::dict DecomposePy(const StrGame& g, const std::string& mode) {
  const auto game = GameFrom<Rational>(g);
  py::dict d;
  if (mode == "hodge") {
    const auto parts = HodgeDecompose(game);
    d["P"] = ToStrings(parts.P);
    d["H"] = ToStrings(parts.H);
    d["E"] = ToStrings(parts.E);
  } else if (mode == "strategic") {
    const auto parts = StrategicDecompose(game);
    d["I"] = ToStrings(parts.identical);
    d["Z"] = ToStrings(parts.zero_sum);
    d["B"] = ToStrings(parts.dominant);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "mode must be hodge or strategic");
  }
  return d;
}

std::string ThresholdPy(const StrGame& g, const std::string& lo, const std::string& hi) {
  const auto parts = HodgeDecompose(GameFrom<Rational>(g));
  return ToString(FindClassThresholdExact(parts.P, parts.H, ParseRational(lo), ParseRational(hi)));
}

py::dict DfpPy(const StrGame& g, ActionPair init, std::size_t rounds, const std::string& tie_rule,
               std::uint64_t seed) {
  DfpConfig cfg;
  cfg.rounds = rounds;
  cfg.record_every = rounds;
  cfg.tie_rule = ParseTieRule(tie_rule);
  cfg.seed = seed;
  const auto traj = RunDfp(GameFrom<double>(g), DfpInit<double>(init), cfg);
  py::dict d;
  d["converged"] = traj.converged;
  d["final_me"] = traj.final_report.ME;
  d["final_u"] = traj.final_report.U;
  d["p"] = traj.final_profile.p();
  d["q"] = traj.final_profile.q();
  d["cycle"] = Cycle(DetectCycle(traj.br_stream));
  return d;
}

py::dict CfpPy(const StrGame& g, ActionPair init, double horizon_log) {
  const auto game = GameFrom<double>(g);
  CfpConfig cfg;
  cfg.horizon_log = horizon_log;
  const auto traj = RunCfp(
      game, MixedProfile<double>::Pure(game.m(), game.n(), init.first, init.second), cfg);
  py::dict d;
  d["verdict"] = CfpVerdictName(traj.verdict);
  d["segments"] = traj.segments.size();
  d["final_me"] = traj.final_me;
  d["final_u"] = traj.bru_series.empty() ? 0.0 : traj.bru_series.back().second;
  d["p"] = traj.final_profile.p();
  d["q"] = traj.final_profile.q();
  d["cycle"] = Cycle(traj.cycle);
  return d;
}

std::tuple<int, std::string, std::string> RunCliPy(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace
}  // namespace cooplab

PYBIND11_MODULE(_core, m) {
  using namespace cooplab;
  py::register_exception<Error>(m, "CooplabError", PyExc_ValueError);
  m.def("builtin_names", &BuiltinNames);
  m.def("builtin", [](const std::string& name) { return ToStrings(Builtin(name)); });
  m.def("classify", &ClassifyPy);
  m.def("decompose", &DecomposePy, py::arg("game"), py::arg("mode") = "hodge");
  m.def("threshold", &ThresholdPy, py::arg("game"), py::arg("lo") = "0", py::arg("hi") = "1");
  m.def("dfp", &DfpPy, py::arg("game"), py::arg("init"), py::arg("rounds") = 100000,
        py::arg("tie_rule") = "lowest", py::arg("seed") = 0);
  m.def("cfp", &CfpPy, py::arg("game"), py::arg("init"), py::arg("horizon_log") = std::log(1e6));
  m.def("run_cli", &RunCliPy);
}
