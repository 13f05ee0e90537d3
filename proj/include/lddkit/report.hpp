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

// Tables and matrices derived from a RelationTable: the emotion-set by
// discourse-combination probability table, the relation-intensity heat map,
// per-discourse rankings and diagnostics. Nothing here draws; outputs are
// plot-ready CSV/JSON.

#ifndef LDDKIT_REPORT_HPP_
#define LDDKIT_REPORT_HPP_

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lddkit/relate.hpp"

namespace lddkit {

// Rows and columns realized in a table. Rows follow table order; columns put
// multi-discourse keys first (alphabetical), then single discourses.
struct MatrixAxes {
  std::vector<EmotionSet> rows;
  std::vector<DiscourseSet> columns;
};

MatrixAxes matrix_axes(const RelationTable& table);

// CSV: one row per emotion set, one column per discourse key, Prob in each
// cell (0 when not realized), plus a "row_sum" column and a trailing
// "column_sum" row.
void export_probability_table(const RelationTable& table, std::ostream& out);

enum class TopKAxis {
  PerEmotionSet,    // keep each emotion set's k strongest discourse combinations
  PerDiscourseSet,  // keep each discourse combination's k strongest emotion sets
};

std::string_view top_k_axis_name(TopKAxis axis);
std::optional<TopKAxis> parse_top_k_axis(std::string_view s);

struct HeatmapOptions {
  std::optional<std::size_t> top_k;
  TopKAxis axis = TopKAxis::PerEmotionSet;
};

// Entries kept by the filter, in table order. Ties on RI go to the lower
// key, so the selection is deterministic.
std::vector<RelationEntry> heatmap_entries(const RelationTable& table, const HeatmapOptions& options);

// Wide CSV of RI rounded to two decimals; rows without a kept entry are
// dropped and cells that were not kept are left empty.
void export_heatmap_csv(const RelationTable& table, std::ostream& out, const HeatmapOptions& options = {});
// Same selection at full precision, with the long-form entry list.
nlohmann::json heatmap_json(const RelationTable& table, const HeatmapOptions& options = {});

// Emotion sets paired with exactly `discourses`, strongest first.
std::vector<std::pair<EmotionSet, double>> top_for_discourse(const RelationTable& table,
                                                             DiscourseSet discourses, std::size_t k);

struct TableDiagnostics {
  std::map<std::string, double> row_sums;     // emotion key -> sum of Prob
  std::map<std::string, double> column_sums;  // discourse key -> sum of Prob
  std::map<std::pair<int, int>, double> class_max_relation;  // (n, l) -> max R
  std::map<std::pair<int, int>, double> class_max_ri;
  std::size_t total_support = 0;
  std::size_t entries = 0;
  std::size_t rows = 0;
  std::size_t multi_nonzero_rows = 0;  // rows with more than one nonzero RI
};

TableDiagnostics diagnostics(const RelationTable& table);
nlohmann::json diagnostics_json(const TableDiagnostics& diag);

// Shortest decimal that round-trips.
std::string format_number(double v);

}  // namespace lddkit

#endif  // LDDKIT_REPORT_HPP_
