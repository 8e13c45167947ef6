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

#include "cooplab/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "cooplab/error.hpp"
#include "cooplab/equivalence.hpp"

namespace cooplab {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

Error ParseFailure(std::string_view text, std::size_t byte, const std::string& what) {
  std::size_t line = 1, column = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return Error(ErrorCode::kParseError, "line " + std::to_string(line) +
                                           ", column " + std::to_string(column) +
                                           ": " + what);
}

template <typename T>
T Entry(const Json& value) {
  if (value.is_number_integer()) {
    if constexpr (ScalarTraits<T>::kExact) {
      return value.is_number_unsigned() ? Rational(value.get<unsigned long>())
                                        : Rational(value.get<long>());
    } else {
      return static_cast<double>(value.get<long>());
    }
  }
  if (value.is_number_float()) {
    const double x = value.get<double>();
    if constexpr (ScalarTraits<T>::kExact) {
      return RationalFromDouble(x);
    } else {
      return x;
    }
  }
  if (value.is_string()) return ParseScalar<T>(value.get<std::string>());
  throw Error(ErrorCode::kParseError,
              "matrix entry must be a number or string, got " +
                  std::string(value.type_name()));
}

template <typename T>
Matrix<T> MatrixFrom(const Json& node, const char* name) {
  if (!node.is_array()) {
    throw Error(ErrorCode::kParseError,
                std::string("member '") + name + "' must be an array of rows");
  }
  std::vector<std::vector<T>> rows;
  for (const Json& row : node) {
    if (!row.is_array()) {
      throw Error(ErrorCode::kParseError,
                  std::string("rows of '") + name + "' must be arrays");
    }
    rows.emplace_back();
    for (const Json& v : row) rows.back().push_back(Entry<T>(v));
  }
  return Matrix<T>::FromRows(rows);
}

template <typename T>
OrderedJson MatrixJson(const Matrix<T>& m) {
  OrderedJson rows = OrderedJson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    OrderedJson row = OrderedJson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (ScalarTraits<T>::kExact) {
        row.push_back(ToString(m(i, j)));
      } else {
        row.push_back(m(i, j));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename T>
OrderedJson GameNode(const BimatrixGame<T>& game) {
  OrderedJson out;
  out["m"] = game.m();
  out["n"] = game.n();
  out["A"] = MatrixJson(game.A());
  out["B"] = MatrixJson(game.B());
  return out;
}

template <typename T>
std::string Num(const T& x) {
  return ToString(x);
}

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool IsIndexedName(const std::string& name, char prefix, std::size_t index) {
  return name == std::string(1, prefix) + std::to_string(index);
}

std::string CycleField(const std::optional<CycleDescriptor>& cycle) {
  if (!cycle) return "";
  std::string out;
  for (const auto& [i, j] : cycle->pairs) {
    if (!out.empty()) out += ';';
    out += std::to_string(i + 1) + ":" + std::to_string(j + 1);
  }
  return out;
}

}  // namespace

template <typename T>
BimatrixGame<T> ParseGame(std::string_view text, std::string_view key) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseFailure(text, e.byte, "malformed JSON");
  }
  const Json* node = &doc;
  if (!key.empty()) {
    const std::string k(key);
    if (doc.is_object() && doc.contains(k)) {
      node = &doc[k];
    } else if (doc.is_object() && doc.contains("parts") &&
               doc["parts"].is_object() && doc["parts"].contains(k)) {
      node = &doc["parts"][k];
    } else {
      throw Error(ErrorCode::kParseError, "no game named '" + k + "'");
    }
  }
  if (!node->is_object() || !node->contains("A") || !node->contains("B")) {
    throw Error(ErrorCode::kParseError, "game object needs members 'A' and 'B'");
  }
  Matrix<T> a = MatrixFrom<T>((*node)["A"], "A");
  Matrix<T> b = MatrixFrom<T>((*node)["B"], "B");
  for (const char* dim : {"m", "n"}) {
    if (!node->contains(dim)) continue;
    const Json& v = (*node)[dim];
    const std::size_t want = dim[0] == 'm' ? a.rows() : a.cols();
    if (!v.is_number_unsigned() || v.get<std::size_t>() != want) {
      throw Error(ErrorCode::kDimensionMismatch,
                  std::string("declared '") + dim + "' does not match matrix A");
    }
  }
  return BimatrixGame<T>(std::move(a), std::move(b));
}

template <typename T>
BimatrixGame<T> LoadGame(const std::string& path_and_key) {
  const std::size_t hash = path_and_key.rfind('#');
  const std::string path =
      hash == std::string::npos ? path_and_key : path_and_key.substr(0, hash);
  const std::string key =
      hash == std::string::npos ? std::string() : path_and_key.substr(hash + 1);
  return ParseGame<T>(ReadTextFile(path), key);
}

template <typename T>
std::string GameToJson(const BimatrixGame<T>& game, int indent) {
  return GameNode(game).dump(indent) + "\n";
}

template <typename T>
void SaveGame(const BimatrixGame<T>& game, const std::string& path) {
  WriteTextFile(path, GameToJson(game));
}

template <typename T>
std::string PartsToJson(
    const std::vector<std::pair<std::string, BimatrixGame<T>>>& parts,
    const std::map<std::string, std::string>& extra) {
  OrderedJson out;
  for (const auto& [k, v] : extra) out[k] = v;
  OrderedJson obj = OrderedJson::object();
  for (const auto& [name, game] : parts) obj[name] = GameNode(game);
  out["parts"] = std::move(obj);
  return out.dump(2) + "\n";
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteTextFile(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kInvalidArgument, "write failed for '" + path + "'");
}

template <typename T>
void WriteDfpCsv(std::ostream& out, const Trajectory<T>& traj) {
  const std::size_t m = traj.final_profile.p().size();
  const std::size_t n = traj.final_profile.q().size();
  out << "t";
  for (std::size_t k = 1; k <= m; ++k) out << ",p" << k;
  for (std::size_t k = 1; k <= n; ++k) out << ",q" << k;
  out << ",br_i,br_j,U,V,SE,ME\n";
  for (const auto& s : traj.samples) {
    out << s.t;
    for (const auto& x : s.profile.p()) out << ',' << Num(x);
    for (const auto& x : s.profile.q()) out << ',' << Num(x);
    out << ',' << s.br.first + 1 << ',' << s.br.second + 1 << ','
        << Num(s.report.U) << ',' << Num(s.report.V) << ',' << Num(s.report.SE)
        << ',' << Num(s.report.ME) << '\n';
  }
}

void WriteCfpCsv(std::ostream& out, const CfpTrajectory& traj,
                 const BimatrixGame<double>& game) {
  out << "s,t";
  for (std::size_t k = 1; k <= traj.m; ++k) out << ",p" << k;
  for (std::size_t k = 1; k <= traj.n; ++k) out << ",q" << k;
  out << ",br_i,br_j,U,ME,segment_id\n";
  std::size_t seg = 0;
  for (const auto& [s, u] : traj.bru_series) {
    while (seg + 1 < traj.segments.size() && traj.segments[seg + 1].s_start <= s) {
      ++seg;
    }
    const MixedProfile<double> prof = traj.ProfileAt(s);
    const EpsilonReport<double> rep = ComputeEpsilonReport(game, prof);
    out << Num(s) << ',' << Num(std::exp(s));
    for (double x : prof.p()) out << ',' << Num(x);
    for (double x : prof.q()) out << ',' << Num(x);
    out << ',' << traj.segments[seg].br.first + 1 << ','
        << traj.segments[seg].br.second + 1 << ',' << Num(u) << ','
        << Num(rep.ME) << ',' << seg << '\n';
  }
}

void WriteSweepCsv(std::ostream& out, const std::vector<SweepRecord>& records) {
  if (records.empty()) return;
  const std::size_t m = records.front().final_profile.p().size();
  const std::size_t n = records.front().final_profile.q().size();
  out << "lambda,label,converged,final_me,final_u";
  for (std::size_t k = 1; k <= m; ++k) out << ",p" << k;
  for (std::size_t k = 1; k <= n; ++k) out << ",q" << k;
  out << ",cycle\n";
  for (const auto& r : records) {
    out << Num(ToDouble(r.lambda)) << ',' << ClassLabelName(r.label) << ','
        << (r.converged ? "true" : "false") << ',' << Num(r.final_me) << ','
        << Num(r.final_u);
    for (double x : r.final_profile.p()) out << ',' << Num(x);
    for (double x : r.final_profile.q()) out << ',' << Num(x);
    out << ',' << CycleField(r.cycle) << '\n';
  }
}

CsvReport ValidateCsv(std::string_view text) {
  CsvReport report;
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  if (lines.empty()) {
    report.message = "empty file";
    return report;
  }
  const std::vector<std::string> header = SplitCsvLine(lines[0]);
  // Leading columns, then p1..pm, q1..qn, then trailing columns.
  std::vector<std::string> lead, tail;
  if (header.size() >= 2 && header[0] == "t") {
    report.kind = "dfp";
    lead = {"t"};
    tail = {"br_i", "br_j", "U", "V", "SE", "ME"};
  } else if (header.size() >= 3 && header[0] == "s" && header[1] == "t") {
    report.kind = "cfp";
    lead = {"s", "t"};
    tail = {"br_i", "br_j", "U", "ME", "segment_id"};
  } else if (!header.empty() && header[0] == "lambda") {
    report.kind = "sweep";
    lead = {"lambda", "label", "converged", "final_me", "final_u"};
    tail = {"cycle"};
  } else {
    report.message = "unrecognized header";
    return report;
  }
  auto fail = [&](std::size_t line, const std::string& why) {
    report.ok = false;
    report.message = "line " + std::to_string(line) + ": " + why;
    return report;
  };
  if (header.size() < lead.size() + tail.size() + 2) return fail(1, "too few columns");
  for (std::size_t k = 0; k < lead.size(); ++k) {
    if (header[k] != lead[k]) return fail(1, "expected column '" + lead[k] + "'");
  }
  for (std::size_t k = 0; k < tail.size(); ++k) {
    if (header[header.size() - tail.size() + k] != tail[k]) {
      return fail(1, "expected column '" + tail[k] + "'");
    }
  }
  std::size_t m = 0, n = 0;
  std::size_t col = lead.size();
  while (col < header.size() - tail.size() && IsIndexedName(header[col], 'p', m + 1)) {
    ++m;
    ++col;
  }
  while (col < header.size() - tail.size() && IsIndexedName(header[col], 'q', n + 1)) {
    ++n;
    ++col;
  }
  if (m == 0 || n == 0 || col != header.size() - tail.size()) {
    return fail(1, "strategy columns must be p1..pm then q1..qn");
  }
  const std::set<std::string> labels = {"SZ", "SI", "B", "D", "NONE"};
  for (std::size_t row = 1; row < lines.size(); ++row) {
    if (lines[row].empty()) continue;
    const std::size_t line_no = row + 1;
    const std::vector<std::string> cells = SplitCsvLine(lines[row]);
    if (cells.size() != header.size()) return fail(line_no, "wrong column count");
    auto number = [&](std::size_t k, double* out) {
      try {
        *out = ParseDouble(cells[k]);
        return true;
      } catch (const Error&) {
        return false;
      }
    };
    std::vector<double> values(header.size(), 0.0);
    for (std::size_t k = 0; k < header.size(); ++k) {
      const std::string& name = header[k];
      if (name == "label" || name == "converged" || name == "cycle") continue;
      if (!number(k, &values[k])) {
        return fail(line_no, "column '" + name + "' is not a finite number");
      }
    }
    double sum_p = 0.0, sum_q = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double v = values[lead.size() + k];
      if (v < -1e-9) return fail(line_no, "negative probability");
      sum_p += v;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double v = values[lead.size() + m + k];
      if (v < -1e-9) return fail(line_no, "negative probability");
      sum_q += v;
    }
    if (std::abs(sum_p - 1.0) > 1e-6 || std::abs(sum_q - 1.0) > 1e-6) {
      return fail(line_no, "probabilities do not sum to 1");
    }
    auto find = [&](const std::string& name) {
      for (std::size_t k = 0; k < header.size(); ++k) {
        if (header[k] == name) return k;
      }
      return header.size();
    };
    if (report.kind == "sweep") {
      if (!labels.count(cells[1])) return fail(line_no, "unknown class label");
      if (cells[2] != "true" && cells[2] != "false") {
        return fail(line_no, "converged must be true or false");
      }
      if (values[3] < 0.0) return fail(line_no, "negative ME");
      const std::string& cyc = cells.back();
      std::size_t pos = 0;
      while (pos < cyc.size()) {
        std::size_t end = cyc.find(';', pos);
        if (end == std::string::npos) end = cyc.size();
        const std::string pair = cyc.substr(pos, end - pos);
        const std::size_t colon = pair.find(':');
        try {
          if (colon == std::string::npos) throw Error(ErrorCode::kParseError, "");
          const long i = std::stol(pair.substr(0, colon));
          const long j = std::stol(pair.substr(colon + 1));
          if (i < 1 || j < 1 || i > static_cast<long>(m) || j > static_cast<long>(n)) {
            throw Error(ErrorCode::kParseError, "");
          }
        } catch (...) {
          return fail(line_no, "malformed cycle entry '" + pair + "'");
        }
        pos = end + 1;
      }
    } else {
      const double bi = values[find("br_i")], bj = values[find("br_j")];
      if (bi != std::floor(bi) || bj != std::floor(bj) || bi < 1 || bj < 1 ||
          bi > static_cast<double>(m) || bj > static_cast<double>(n)) {
        return fail(line_no, "best-response index out of range");
      }
      if (values[find("ME")] < -1e-12) return fail(line_no, "negative ME");
    }
    ++report.rows;
  }
  report.ok = true;
  return report;
}

std::string RunManifest::ToJson() const {
  OrderedJson out;
  out["command"] = command;
  out["gamePath"] = game_path;
  out["configHash"] = config_hash;
  out["seed"] = seed;
  out["toolVersion"] = tool_version;
  out["outputs"] = outputs;
  return out.dump(2) + "\n";
}

std::string Fnv1aHex(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  static const char* kDigits = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k) {
    out[static_cast<std::size_t>(k)] = kDigits[hash & 0xF];
    hash >>= 4;
  }
  return out;
}

#define COOPLAB_INSTANTIATE_IO(T)                                              \
  template BimatrixGame<T> ParseGame(std::string_view, std::string_view);      \
  template BimatrixGame<T> LoadGame(const std::string&);                       \
  template std::string GameToJson(const BimatrixGame<T>&, int);                \
  template void SaveGame(const BimatrixGame<T>&, const std::string&);          \
  template std::string PartsToJson(                                            \
      const std::vector<std::pair<std::string, BimatrixGame<T>>>&,             \
      const std::map<std::string, std::string>&);                              \
  template void WriteDfpCsv(std::ostream&, const Trajectory<T>&);

COOPLAB_INSTANTIATE_IO(double)
COOPLAB_INSTANTIATE_IO(Rational)

#undef COOPLAB_INSTANTIATE_IO

}  // namespace cooplab
