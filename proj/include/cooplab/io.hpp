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

#ifndef COOPLAB_IO_HPP_
#define COOPLAB_IO_HPP_

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cooplab/cfp.hpp"
#include "cooplab/dfp.hpp"
#include "cooplab/experiments.hpp"
#include "cooplab/game.hpp"

namespace cooplab {

inline constexpr const char* kToolVersion = "0.1.0";

// Game files are JSON objects {"m": .., "n": .., "A": [[..]], "B": [[..]]}.
// Entries may be numbers or strings such as "5/6" or "-0.25". Exact loads
// read decimal numbers by their shortest round-trip spelling, so 0.1 is 1/10.
//
// `key` selects a nested game: a top-level member, or a member of a top-level
// "parts" object. LoadGame accepts "file.json#KEY" for the same lookup.
template <typename T>
BimatrixGame<T> ParseGame(std::string_view text, std::string_view key = "");

template <typename T>
BimatrixGame<T> LoadGame(const std::string& path_and_key);

// Rationals are written as "p/q" strings, doubles as shortest round-trip
// numbers.
template <typename T>
std::string GameToJson(const BimatrixGame<T>& game, int indent = 2);

template <typename T>
void SaveGame(const BimatrixGame<T>& game, const std::string& path);

// {"parts": {name: game, ...}} plus extra string members.
template <typename T>
std::string PartsToJson(const std::vector<std::pair<std::string, BimatrixGame<T>>>& parts,
                        const std::map<std::string, std::string>& extra = {});

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view text);

// CSV writers. Actions are 1-based in every file.
template <typename T>
void WriteDfpCsv(std::ostream& out, const Trajectory<T>& traj);
void WriteCfpCsv(std::ostream& out, const CfpTrajectory& traj,
                 const BimatrixGame<double>& game);
void WriteSweepCsv(std::ostream& out, const std::vector<SweepRecord>& records);

struct CsvReport {
  bool ok = false;
  std::string kind;  // "dfp", "cfp", "sweep" or empty
  std::size_t rows = 0;
  std::string message;
};

// Schema check for files produced by the writers above.
CsvReport ValidateCsv(std::string_view text);

struct RunManifest {
  std::string command;
  std::string game_path;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::vector<std::string> outputs;

  std::string ToJson() const;
};

// 64-bit FNV-1a, hex encoded.
std::string Fnv1aHex(std::string_view text);

}  // namespace cooplab

#endif  // COOPLAB_IO_HPP_
