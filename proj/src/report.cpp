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

#include "lddkit/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <set>

namespace lddkit {

using nlohmann::json;

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string two_decimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

bool column_less(DiscourseSet a, DiscourseSet b) {
  const bool single_a = a.size() == 1;
  const bool single_b = b.size() == 1;
  if (single_a != single_b) return single_b;
  return combo_key(a) < combo_key(b);
}

// Table index of every kept entry.
std::vector<std::size_t> select(const RelationTable& table, const HeatmapOptions& options) {
  std::vector<std::size_t> all(table.entries.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (!options.top_k) return all;

  // Group indices by the axis, rank inside each group, keep k.
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i : all) {
    const auto& e = table.entries[i];
    groups[options.axis == TopKAxis::PerEmotionSet ? emotion_key(e.emotions) : combo_key(e.discourses)].push_back(i);
  }
  std::vector<std::size_t> kept;
  for (auto& [_, idx] : groups) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      const auto& ea = table.entries[a];
      const auto& eb = table.entries[b];
      if (ea.ri != eb.ri) return ea.ri > eb.ri;
      return a < b;
    });
    if (idx.size() > *options.top_k) idx.resize(*options.top_k);
    kept.insert(kept.end(), idx.begin(), idx.end());
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

MatrixAxes matrix_axes(const RelationTable& table) {
  MatrixAxes axes;
  std::set<std::uint32_t> seen_rows;
  std::set<std::uint8_t> seen_cols;
  for (const auto& e : table.entries) {
    if (seen_rows.insert(e.emotions.bits()).second) axes.rows.push_back(e.emotions);
    if (seen_cols.insert(e.discourses.bits()).second) axes.columns.push_back(e.discourses);
  }
  std::sort(axes.columns.begin(), axes.columns.end(), column_less);
  return axes;
}

void export_probability_table(const RelationTable& table, std::ostream& out) {
  const auto axes = matrix_axes(table);
  out << "emotions";
  for (auto col : axes.columns) out << ',' << csv_field(combo_key(col));
  out << ",row_sum\n";

  std::vector<double> column_sums(axes.columns.size(), 0.0);
  for (auto row : axes.rows) {
    out << csv_field(emotion_tuple_label(row));
    double row_sum = 0.0;
    for (std::size_t c = 0; c < axes.columns.size(); ++c) {
      const RelationEntry* e = table.find(row, axes.columns[c]);
      const double p = e ? e->prob : 0.0;
      row_sum += p;
      column_sums[c] += p;
      out << ',' << format_number(p);
    }
    out << ',' << format_number(row_sum) << '\n';
  }
  out << "column_sum";
  for (double s : column_sums) out << ',' << format_number(s);
  out << ",\n";
}

std::string_view top_k_axis_name(TopKAxis axis) {
  return axis == TopKAxis::PerEmotionSet ? "emotions" : "discourses";
}

std::optional<TopKAxis> parse_top_k_axis(std::string_view s) {
  if (s == "emotions") return TopKAxis::PerEmotionSet;
  if (s == "discourses") return TopKAxis::PerDiscourseSet;
  return std::nullopt;
}

std::vector<RelationEntry> heatmap_entries(const RelationTable& table, const HeatmapOptions& options) {
  std::vector<RelationEntry> out;
  for (std::size_t i : select(table, options)) out.push_back(table.entries[i]);
  return out;
}

void export_heatmap_csv(const RelationTable& table, std::ostream& out, const HeatmapOptions& options) {
  const auto axes = matrix_axes(table);
  const auto kept = heatmap_entries(table, options);
  out << "emotions";
  for (auto col : axes.columns) out << ',' << csv_field(combo_key(col));
  out << '\n';
  for (auto row : axes.rows) {
    std::vector<std::string> cells(axes.columns.size());
    bool any = false;
    for (const auto& e : kept) {
      if (e.emotions != row) continue;
      auto it = std::find(axes.columns.begin(), axes.columns.end(), e.discourses);
      cells[it - axes.columns.begin()] = two_decimals(e.ri);
      any = true;
    }
    if (!any) continue;
    out << csv_field(emotion_tuple_label(row));
    for (const auto& c : cells) out << ',' << c;
    out << '\n';
  }
}

json heatmap_json(const RelationTable& table, const HeatmapOptions& options) {
  const auto axes = matrix_axes(table);
  const auto kept = heatmap_entries(table, options);
  json columns = json::array();
  for (auto col : axes.columns) columns.push_back(combo_key(col));
  json rows = json::array();
  for (auto row : axes.rows) {
    json values = json::object();
    for (const auto& e : kept)
      if (e.emotions == row) values[combo_key(e.discourses)] = e.ri;
    if (values.empty()) continue;
    json names = json::array();
    for (Emotion e : row.members()) names.push_back(std::string(emotion_name(e)));
    rows.push_back(json{{"emotions", std::move(names)}, {"values", std::move(values)}});
  }
  json entries = json::array();
  for (const auto& e : kept) {
    json names = json::array();
    for (Emotion em : e.emotions.members()) names.push_back(std::string(emotion_name(em)));
    entries.push_back(json{{"emotions", std::move(names)}, {"discourses", combo_key(e.discourses)}, {"ri", e.ri}});
  }
  json filter = json{{"top_k", options.top_k ? json(*options.top_k) : json(nullptr)},
                     {"axis", std::string(top_k_axis_name(options.axis))}};
  return json{{"format", "lddkit.heatmap"},
              {"version", 1},
              {"filter", std::move(filter)},
              {"columns", std::move(columns)},
              {"rows", std::move(rows)},
              {"entries", std::move(entries)}};
}

std::vector<std::pair<EmotionSet, double>> top_for_discourse(const RelationTable& table,
                                                             DiscourseSet discourses, std::size_t k) {
  std::vector<std::pair<EmotionSet, double>> out;
  for (const auto& e : table.entries)
    if (e.discourses == discourses) out.emplace_back(e.emotions, e.ri);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return emotion_key(a.first) < emotion_key(b.first);
  });
  if (out.size() > k) out.resize(k);
  return out;
}

TableDiagnostics diagnostics(const RelationTable& table) {
  TableDiagnostics d;
  d.entries = table.entries.size();
  std::map<std::string, int> nonzero_per_row;
  for (const auto& e : table.entries) {
    const auto ek = emotion_key(e.emotions);
    d.row_sums[ek] += e.prob;
    d.column_sums[combo_key(e.discourses)] += e.prob;
    const std::pair<int, int> cls{e.discourses.size(), e.emotions.size()};
    d.class_max_relation[cls] = std::max(d.class_max_relation[cls], e.relation);
    d.class_max_ri[cls] = std::max(d.class_max_ri[cls], e.ri);
    d.total_support += e.support;
    auto& nz = nonzero_per_row[ek];
    if (e.ri != 0.0) ++nz;
  }
  d.rows = nonzero_per_row.size();
  for (const auto& [_, nz] : nonzero_per_row)
    if (nz > 1) ++d.multi_nonzero_rows;
  return d;
}

json diagnostics_json(const TableDiagnostics& d) {
  json classes = json::array();
  for (const auto& [cls, m] : d.class_max_relation) {
    classes.push_back(json{{"n", cls.first}, {"l", cls.second}, {"max_r", m}, {"max_ri", d.class_max_ri.at(cls)}});
  }
  return json{{"format", "lddkit.diagnostics"},
              {"version", 1},
              {"row_sums", d.row_sums},
              {"column_sums", d.column_sums},
              {"classes", std::move(classes)},
              {"total_support", d.total_support},
              {"entries", d.entries},
              {"rows", d.rows},
              {"multi_nonzero_rows", d.multi_nonzero_rows}};
}

}  // namespace lddkit
