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

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

#ifndef LDDKIT_DATA_DIR
#define LDDKIT_DATA_DIR "data"
#endif

using namespace lddkit;

int main(int argc, char** argv) {
  CLI::App app{"lddkit: discourse/emotion annotation fusion and relation statistics"};
  app.require_subcommand(1);

  cli::IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse a dialogue corpus");
  ingest_cmd->add_option("--dialogues", ingest.dialogues, "Dialogue file")->required();
  ingest_cmd->add_option("--format", ingest.format, "dailydialog | json")
      ->check(CLI::IsMember({"dailydialog", "json"}));
  std::string ids;
  ingest_cmd->add_option("--ids", ids, "Sidecar with one dialogue id per line");
  ingest_cmd->add_option("--out", ingest.out, "Corpus output")->required();

  cli::AggregateOptions aggregate;
  auto* aggregate_cmd = app.add_subcommand("aggregate", "Fuse three voters' ballots per sentence");
  aggregate_cmd->add_option("--corpus", aggregate.corpus)->required();
  aggregate_cmd->add_option("--ballots", aggregate.ballots, "Ballot JSONL")->required();
  aggregate_cmd->add_option("--out", aggregate.out)->required();
  aggregate_cmd->add_flag("--serial", aggregate.serial, "Use the single-threaded reference kernel");

  cli::RelateOptions relate;
  std::string fused, views, weight_mode = "product", normalize = "per-class";
  auto* relate_cmd = app.add_subcommand("relate", "Compute Prob, W, R and RI tables");
  relate_cmd->add_option("--fused", fused, "Fused records");
  relate_cmd->add_option("--views", views, "Sentence views with numeric confidences");
  relate_cmd->add_option("--tau", relate.config.tau, "Emotion presence threshold")->capture_default_str();
  relate_cmd->add_option("--max-emotions", relate.config.max_emotions)->capture_default_str();
  relate_cmd->add_option("--max-discourses", relate.config.max_discourses)->capture_default_str();
  relate_cmd->add_option("--weight-mode", weight_mode)->check(CLI::IsMember({"product", "sum"}));
  relate_cmd->add_option("--normalize", normalize)->check(CLI::IsMember({"per-class", "global"}));
  relate_cmd->add_option("--conf-high", relate.config.confidence.high)->capture_default_str();
  relate_cmd->add_option("--conf-mid", relate.config.confidence.mid)->capture_default_str();
  relate_cmd->add_option("--conf-low", relate.config.confidence.low)->capture_default_str();
  relate_cmd->add_option("--out", relate.out)->required();
  relate_cmd->add_flag("--serial", relate.serial, "Use the single-threaded reference kernel");

  cli::ReportOptions report;
  std::string prob_table, heatmap, heatmap_csv, diag_path, top_axis = "emotions", discourse;
  std::size_t top = 0;
  auto* report_cmd = app.add_subcommand("report", "Export probability table, heat map and rankings");
  report_cmd->add_option("--relations", report.relations)->required();
  report_cmd->add_option("--prob-table", prob_table, "CSV output");
  report_cmd->add_option("--heatmap", heatmap, "JSON output (CSV written next to it)");
  report_cmd->add_option("--heatmap-csv", heatmap_csv);
  report_cmd->add_option("--diagnostics", diag_path, "JSON output");
  auto* top_opt = report_cmd->add_option("--top", top, "Keep the k strongest entries")->check(CLI::PositiveNumber);
  report_cmd->add_option("--top-axis", top_axis, "emotions | discourses")
      ->check(CLI::IsMember({"emotions", "discourses"}));
  report_cmd->add_option("--discourse", discourse, "Rank emotion sets for this combination, e.g. H or H,M");

  cli::ConformanceOptions conformance{LDDKIT_DATA_DIR};
  auto* conformance_cmd = app.add_subcommand("conformance", "Run the shipped rule vectors and worked examples");
  conformance_cmd->add_option("--data-dir", conformance.data_dir)->capture_default_str();
  conformance_cmd->add_option("--randomized", conformance.randomized, "Random relabeling cases")->capture_default_str();

  cli::ServeOptions serve;
  std::string ui_dir;
  auto* serve_cmd = app.add_subcommand("serve", "Run the annotation service");
  serve_cmd->add_option("--host", serve.host)->capture_default_str();
  serve_cmd->add_option("--port", serve.port)->capture_default_str();
  serve_cmd->add_option("--corpus", serve.corpus)->required();
  serve_cmd->add_option("--store", serve.store, "Ballot log (JSONL)")->required();
  serve_cmd->add_option("--ui-dir", ui_dir, "Static UI bundle");
  serve_cmd->add_option("--tokens", serve.tokens, "voter:token,... (default: $LDDKIT_TOKENS)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitValidation;
  }

  if (*ingest_cmd) {
    if (!ids.empty()) ingest.ids = ids;
    return cli::run_ingest(ingest, std::cout, std::cerr);
  }
  if (*aggregate_cmd) return cli::run_aggregate(aggregate, std::cout, std::cerr);
  if (*relate_cmd) {
    if (!fused.empty()) relate.fused = fused;
    if (!views.empty()) relate.views = views;
    relate.config.weight_mode = *parse_weight_mode(weight_mode);
    relate.config.normalize = *parse_normalize_mode(normalize);
    return cli::run_relate(relate, std::cout, std::cerr);
  }
  if (*report_cmd) {
    if (!prob_table.empty()) report.prob_table = prob_table;
    if (!heatmap.empty()) report.heatmap = heatmap;
    if (!heatmap_csv.empty()) report.heatmap_csv = heatmap_csv;
    if (!diag_path.empty()) report.diagnostics = diag_path;
    if (top_opt->count()) report.top = top;
    report.top_axis = *parse_top_k_axis(top_axis);
    if (!discourse.empty()) report.discourse = discourse;
    return cli::run_report(report, std::cout, std::cerr);
  }
  if (*conformance_cmd) return cli::run_conformance(conformance, std::cout, std::cerr);
  if (*serve_cmd) {
    if (!ui_dir.empty()) serve.ui_dir = ui_dir;
    if (serve.tokens.empty()) {
      if (const char* env = std::getenv("LDDKIT_TOKENS")) serve.tokens = env;
    }
    return cli::run_serve(serve, std::cout, std::cerr);
  }
  return cli::kExitValidation;
}
