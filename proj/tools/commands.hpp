// Copyright 2026 The lddkit Authors.
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

// The lddkit subcommands as plain functions, so tests can drive them without
// spawning processes. Each returns the process exit code.

#ifndef LDDKIT_TOOLS_COMMANDS_HPP_
#define LDDKIT_TOOLS_COMMANDS_HPP_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "lddkit/relate.hpp"
#include "lddkit/report.hpp"

namespace lddkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitConformance = 2;

struct IngestOptions {
  std::filesystem::path dialogues;
  std::string format = "dailydialog";  // dailydialog | json
  std::optional<std::filesystem::path> ids;
  std::filesystem::path out;
};

struct AggregateOptions {
  std::filesystem::path corpus;
  std::filesystem::path ballots;
  std::filesystem::path out;
  bool serial = false;
};

struct RelateOptions {
  std::optional<std::filesystem::path> fused;
  std::optional<std::filesystem::path> views;
  std::filesystem::path out;
  RelateConfig config;
  bool serial = false;
};

struct ReportOptions {
  std::filesystem::path relations;
  std::optional<std::filesystem::path> prob_table;
  std::optional<std::filesystem::path> heatmap;      // JSON
  std::optional<std::filesystem::path> heatmap_csv;  // defaults to heatmap with .csv
  std::optional<std::filesystem::path> diagnostics;
  std::optional<std::size_t> top;
  TopKAxis top_axis = TopKAxis::PerEmotionSet;
  std::optional<std::string> discourse;  // combo key, e.g. "H" or "H,M"
};

struct ConformanceOptions {
  std::filesystem::path data_dir;
  std::size_t randomized = 1000;
};

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path corpus;
  std::filesystem::path store;
  std::optional<std::filesystem::path> ui_dir;
  std::string tokens;  // voter:token,...
};

int run_ingest(const IngestOptions& opts, std::ostream& out, std::ostream& err);
int run_aggregate(const AggregateOptions& opts, std::ostream& out, std::ostream& err);
int run_relate(const RelateOptions& opts, std::ostream& out, std::ostream& err);
int run_report(const ReportOptions& opts, std::ostream& out, std::ostream& err);
int run_conformance(const ConformanceOptions& opts, std::ostream& out, std::ostream& err);
int run_serve(const ServeOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace lddkit::cli

#endif  // LDDKIT_TOOLS_COMMANDS_HPP_
