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

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "lddkit/report.hpp"
#include "lddkit/serialize.hpp"
#include "lddkit/synth.hpp"
#include "test_util.hpp"

using namespace lddkit;
using testutil::make_view;

namespace {

const std::filesystem::path kData = LDDKIT_DATA_DIR;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) rows.push_back(split_csv(line));
  return rows;
}

RelationTable table_of(const std::vector<SentenceView>& views, RelateConfig config = {}) {
  Diagnostics diag;
  return relation_table(views, config, diag);
}

RelationTable random_table(std::uint64_t seed, std::size_t n = 60) {
  std::mt19937_64 rng(seed);
  return table_of(synth::views(n, rng, 5));
}

}  // namespace

TEST_CASE("weight example gives a 1x1 probability table") {
  auto views = views_from_json(parse_document(read_file(kData / "weight_example_views.json"), "views"));
  std::ostringstream out;
  export_probability_table(table_of(views), out);
  auto rows = read_csv(out.str());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == std::vector<std::string>{"emotions", "H", "row_sum"});
  CHECK(rows[1] == std::vector<std::string>{"('joy',)", "1", "1"});
  CHECK(rows[2][0] == "column_sum");
  CHECK(rows[2][1] == "1");
}

TEST_CASE("probability table rows sum to one on synthetic corpora") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::ostringstream out;
    export_probability_table(random_table(seed), out);
    auto rows = read_csv(out.str());
    REQUIRE(rows.size() >= 2);
    for (std::size_t r = 1; r + 1 < rows.size(); ++r) {
      double sum = 0.0;
      for (std::size_t c = 1; c + 1 < rows[r].size(); ++c) sum += std::stod(rows[r][c]);
      CHECK(std::abs(sum - 1.0) <= 1e-9);
      CHECK(std::abs(std::stod(rows[r].back()) - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("columns list combinations before single discourses") {
  std::vector<SentenceView> views = {make_view(0, {{'M', 1, 1}}, {{"joy", 1}}),
                                     make_view(1, {{'H', 1, 1}, {'M', 1, 1}}, {{"joy", 1}}),
                                     make_view(2, {{'A', 1, 1}, {'C', 1, 1}}, {{"fear", 1}})};
  auto axes = matrix_axes(table_of(views));
  std::vector<std::string> keys;
  for (auto c : axes.columns) keys.push_back(combo_key(c));
  CHECK(keys == std::vector<std::string>{"A,C", "H,M", "M"});
}

TEST_CASE("empty table gives a header-only heat map") {
  RelationTable empty;
  std::ostringstream out;
  export_heatmap_csv(empty, out);
  CHECK(out.str() == "emotions\n");
  CHECK(heatmap_json(empty)["rows"].empty());
}

TEST_CASE("unfiltered heat map keeps every row") {
  auto table = random_table(3);
  auto axes = matrix_axes(table);
  CHECK(heatmap_entries(table, {}).size() == table.entries.size());
  CHECK(heatmap_json(table)["rows"].size() == axes.rows.size());
}

TEST_CASE("top-k keeps at most k per emotion set and never reorders") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto table = random_table(seed, 200);
    const std::size_t rows = matrix_axes(table).rows.size();
    for (auto axis : {TopKAxis::PerEmotionSet, TopKAxis::PerDiscourseSet}) {
      HeatmapOptions opts{5, axis};
      auto kept = heatmap_entries(table, opts);
      if (axis == TopKAxis::PerEmotionSet) CHECK(kept.size() <= 5 * rows);
      std::map<std::string, std::size_t> per_group;
      for (const auto& e : kept)
        ++per_group[axis == TopKAxis::PerEmotionSet ? emotion_key(e.emotions) : combo_key(e.discourses)];
      for (const auto& [_, n] : per_group) CHECK(n <= 5);

      // kept entries appear in the same relative order as in the table
      std::size_t pos = 0;
      for (const auto& e : kept) {
        while (pos < table.entries.size() && !(table.entries[pos] == e)) ++pos;
        REQUIRE(pos < table.entries.size());
        ++pos;
      }
    }
  }
}

TEST_CASE("top-k keeps the strongest entries of each group") {
  auto table = random_table(11, 200);
  auto kept = heatmap_entries(table, HeatmapOptions{2, TopKAxis::PerEmotionSet});
  for (const auto& e : table.entries) {
    const bool is_kept = std::find(kept.begin(), kept.end(), e) != kept.end();
    if (is_kept) continue;
    // a dropped entry is beaten by at least two kept entries of its row
    int stronger = 0;
    for (const auto& k : kept)
      if (k.emotions == e.emotions && k.ri >= e.ri) ++stronger;
    CHECK(stronger == 2);
  }
}

TEST_CASE("heat map CSV and JSON agree up to rounding") {
  auto table = random_table(21, 120);
  HeatmapOptions opts{3, TopKAxis::PerEmotionSet};
  std::ostringstream out;
  export_heatmap_csv(table, out, opts);
  auto csv = read_csv(out.str());
  auto js = heatmap_json(table, opts);
  REQUIRE(csv.size() == js["rows"].size() + 1);
  const auto& header = csv[0];
  for (std::size_t r = 0; r < js["rows"].size(); ++r) {
    const auto& row = js["rows"][r];
    const auto& cells = csv[r + 1];
    REQUIRE(cells.size() == header.size());
    for (std::size_t c = 1; c < header.size(); ++c) {
      if (row["values"].contains(header[c])) {
        const double full = row["values"][header[c]].get<double>();
        CHECK(std::abs(std::stod(cells[c]) - full) <= 0.005 + 1e-12);
      } else {
        CHECK(cells[c].empty());
      }
    }
  }
}

TEST_CASE("top_for_discourse edge cases") {
  std::vector<SentenceView> views = {make_view(0, {{'H', 1, 1}}, {{"joy", 1}}),
                                     make_view(1, {{'H', 1, 0.5}}, {{"fear", 1}}),
                                     make_view(2, {{'M', 1, 1}}, {{"anger", 1}})};
  auto table = table_of(views);
  CHECK(top_for_discourse(table, DiscourseSet{Discourse::Analyst}, 3).empty());
  auto all = top_for_discourse(table, DiscourseSet{Discourse::Hysteric}, 10);
  REQUIRE(all.size() == 2);
  CHECK(all[0].first == EmotionSet{Emotion::joy});
  CHECK(all[0].second >= all[1].second);
  CHECK(top_for_discourse(table, DiscourseSet{Discourse::Hysteric}, 1).size() == 1);
}

TEST_CASE("diagnostics summarise the table") {
  std::vector<SentenceView> views = {make_view(0, {{'H', 1, 1}}, {{"joy", 1}}),
                                     make_view(1, {{'M', 0.6, 1}}, {{"joy", 1}}),
                                     make_view(2, {{'M', 1, 1}}, {{"anger", 1}})};
  auto d = diagnostics(table_of(views));
  CHECK(d.entries == 3);
  CHECK(d.rows == 2);
  CHECK(d.total_support == 3);
  CHECK(d.multi_nonzero_rows == 1);
  CHECK(std::abs(d.row_sums.at("joy") - 1.0) < 1e-12);
  CHECK(std::abs(d.column_sums.at("M") - (0.375 + 1.0)) < 1e-12);
  CHECK(d.class_max_ri.at({1, 1}) == 1.0);
  auto j = diagnostics_json(d);
  CHECK(j["multi_nonzero_rows"] == 1);
}
