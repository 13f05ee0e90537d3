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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. The published-dataset check runs only when
// LDDKIT_PUBLISHED_RELATIONS points at a relations document built from the
// published annotations; otherwise it reports SKIP.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "lddkit/aggregate.hpp"
#include "lddkit/conformance.hpp"
#include "lddkit/relate.hpp"
#include "lddkit/report.hpp"
#include "lddkit/serialize.hpp"
#include "lddkit/synth.hpp"
#include "test_util.hpp"

using namespace lddkit;
namespace fs = std::filesystem;

namespace {

const fs::path kData = LDDKIT_DATA_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(const char* name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %s (%.0f ms)%s%s\n", o.pass ? "PASS" : "FAIL", name, ms, o.detail.empty() ? "" : ": ",
              o.detail.c_str());
}

std::vector<SentenceView> weight_example() {
  return views_from_json(parse_document(read_file(kData / "weight_example_views.json"), "views"));
}

Outcome weight_example_criterion() {
  Outcome o;
  auto views = weight_example();
  const DiscourseSet d{Discourse::Hysteric};
  const EmotionSet e{Emotion::joy};
  auto prob = conditional_probability(d, e, views);
  o.require(prob && *prob == 1.0, "Prob != 1");
  const double w = weight_level(d, e, views, WeightMode::Product);
  o.require(std::abs(w - 0.224) <= 1e-12, "W = " + format_number(w));
  auto r = relation(d, e, views, RelateConfig{});
  o.require(r && std::abs(*r - 0.224) <= 1e-12, "R off");
  Diagnostics diag;
  auto table = relation_table(views, RelateConfig{}, diag);
  o.require(table.entries.size() == 1 && table.entries[0].ri == 1.0, "RI != 1");
  if (o.pass) o.detail = "Prob=1 W=" + format_number(w) + " R=" + format_number(*r) + " RI=1";
  return o;
}

Outcome rule_criterion() {
  Outcome o;
  ConformanceReport report;
  check_rule_vectors(kData / "fusion_rules.json", 1000, 20240917, report);
  o.require(report.rules_total == 29 && report.rules_passed == 29,
            std::to_string(report.rules_passed) + "/" + std::to_string(report.rules_total) + " rules");
  o.require(report.randomized_cases >= 1000 && report.randomized_failures == 0, "randomized relabelings failed");
  if (!report.failures.empty()) o.require(false, report.failures.front());
  if (o.pass)
    o.detail = "29/29 rules x 6 voter orders, " + std::to_string(report.randomized_cases) + " randomized relabelings";
  return o;
}

Outcome dialogue_criterion() {
  Outcome o;
  ConformanceReport report;
  check_worked_dialogue(kData / "frolatte_ad_10", report);
  o.require(report.dialogue_total == 6 && report.dialogue_passed == 6,
            std::to_string(report.dialogue_passed) + "/" + std::to_string(report.dialogue_total) + " sentences");
  if (!report.failures.empty()) o.require(false, report.failures.front());
  if (o.pass) o.detail = "6/6 sentences";
  return o;
}

Outcome emotion_criterion() {
  Outcome o;
  auto make = [](const std::array<int, 3>& labels) {
    std::vector<VoterBallot> ballots;
    for (int v = 0; v < 3; ++v) {
      VoterBallot b;
      b.voter_id = "v" + std::to_string(v);
      b.sentence = SentenceRef{"d", 0};
      if (labels[v] >= 0) b.emotions.push_back({Emotion::curiosity, static_cast<ConfidenceLabel4>(labels[v])});
      ballots.push_back(b);
    }
    return fuse_emotions(ballots)[static_cast<std::size_t>(Emotion::curiosity)];
  };
  o.require(make({3, 3, 3}) == 1.0, "unanimous DY != 1");
  o.require(make({-1, -1, -1}) == 0.0, "unmentioned != 0");
  std::mt19937_64 rng(4711);
  std::uniform_int_distribution<int> label(-1, 3);
  int cases = 0;
  for (; cases < 2000; ++cases) {
    std::array<int, 3> ls{label(rng), label(rng), label(rng)};
    const double s = make(ls);
    o.require(s >= 0.0 && s <= 1.0, "score outside [0,1]");
    const int v = static_cast<int>(rng() % 3);
    if (ls[v] == 3) continue;
    auto up = ls;
    up[v] = ls[v] < 0 ? 1 : ls[v] + 1;
    o.require(make(up) > s, "not monotone in a voter's label");
  }
  if (o.pass) o.detail = std::to_string(cases) + " randomized cases";
  return o;
}

Outcome row_criterion() {
  Outcome o;
  std::mt19937_64 rng(101);
  std::size_t rows = 0;
  for (int c = 0; c < 200; ++c) {
    auto views = synth::views(1 + rng() % 10, rng);
    Diagnostics diag;
    auto d = diagnostics(relation_table(views, RelateConfig{}, diag));
    for (const auto& [key, sum] : d.row_sums) {
      ++rows;
      o.require(std::abs(sum - 1.0) <= 1e-9, "row " + key + " sums to " + format_number(sum));
    }
  }
  if (o.pass) o.detail = "200 corpora, " + std::to_string(rows) + " rows";
  return o;
}

Outcome oracle_criterion() {
  Outcome o;
  std::mt19937_64 rng(101);
  std::size_t compared = 0;
  for (int c = 0; c < 200; ++c) {
    auto views = synth::views(1 + rng() % 10, rng);
    for (auto mode : {WeightMode::Product, WeightMode::Sum}) {
      RelateConfig config;
      config.weight_mode = mode;
      Diagnostics diag;
      auto table = relation_table(views, config, diag);
      auto expected = oracle::relation_entries(testutil::to_oracle(views), mode == WeightMode::Product);
      o.require(expected.size() == table.entries.size(), "entry count differs from the oracle");
      for (const auto& want : expected) {
        DiscourseSet d;
        EmotionSet e;
        for (const auto& code : want.discourses) d.insert(*parse_discourse(code));
        for (const auto& name : want.emotions) e.insert(*parse_emotion(name));
        const RelationEntry* got = table.find(e, d);
        o.require(got != nullptr, "oracle entry missing");
        if (!got) continue;
        ++compared;
        o.require(std::abs(got->prob - want.prob) <= 1e-12 && std::abs(got->weight_level - want.w) <= 1e-12 &&
                      std::abs(got->relation - want.r) <= 1e-12 && std::abs(got->ri - want.ri) <= 1e-12,
                  "value differs from the oracle by more than 1e-12");
      }
      for (const auto& [cls, m] : diagnostics(table).class_max_ri) o.require(m == 1.0, "class max RI != 1");
    }
  }
  if (o.pass) o.detail = std::to_string(compared) + " entries within 1e-12, every class max RI = 1";
  return o;
}

Outcome determinism_criterion() {
  Outcome o;
  testutil::TempDir dir("acceptance");
  std::mt19937_64 rng(2718);
  Corpus corpus = synth::corpus(40, 7, rng);
  std::ostringstream dialogue_text;
  for (const auto& d : corpus.dialogues()) {
    for (const auto& s : d.sentences) dialogue_text << s << " __eou__ ";
    dialogue_text << '\n';
  }
  write_file_atomic(dir / "dialogues.txt", dialogue_text.str());

  // Ballots must point at the ingested ids, which are line-<k>.
  Corpus renamed("x", "dailydialog");
  std::size_t k = 0;
  for (const auto& d : corpus.dialogues()) renamed.add(Dialogue{"line-" + std::to_string(++k), d.sentences});
  std::ostringstream ballots;
  write_ballots(ballots, synth::ballots(renamed, rng));
  write_file_atomic(dir / "ballots.jsonl", ballots.str());

  const std::vector<std::string> artifacts = {"corpus.json", "fused.json", "relations.json", "prob.csv",
                                              "heatmap.json", "heatmap.csv"};
  auto run = [&](const std::string& tag) {
    const fs::path out = dir / tag;
    fs::create_directories(out);
    std::ostringstream sink;
    int rc = cli::run_ingest({dir / "dialogues.txt", "dailydialog", std::nullopt, out / "corpus.json"}, sink, sink);
    rc |= cli::run_aggregate({out / "corpus.json", dir / "ballots.jsonl", out / "fused.json"}, sink, sink);
    cli::RelateOptions relate;
    relate.fused = out / "fused.json";
    relate.out = out / "relations.json";
    rc |= cli::run_relate(relate, sink, sink);
    cli::ReportOptions report;
    report.relations = out / "relations.json";
    report.prob_table = out / "prob.csv";
    report.heatmap = out / "heatmap.json";
    report.top = 5;
    rc |= cli::run_report(report, sink, sink);
    return rc;
  };
  o.require(run("first") == 0, "first run failed");
  o.require(run("second") == 0, "second run failed");
  for (const auto& a : artifacts) {
    const std::string x = read_file(dir / "first" / a);
    o.require(!x.empty() && x == read_file(dir / "second" / a), a + " differs between runs");
  }
  if (o.pass) o.detail = std::to_string(artifacts.size()) + " artifacts byte-identical";
  return o;
}

// Checks against the published dataset; needs the relations document.
void dataset_criterion() {
  const char* path = std::getenv("LDDKIT_PUBLISHED_RELATIONS");
  const char* name = "published dataset: 67/198 heat-map rows, 7 multi-nonzero rows, spot values";
  if (!path || !*path) {
    std::printf("[SKIP] %s: set LDDKIT_PUBLISHED_RELATIONS to a relations document\n", name);
    return;
  }
  criterion(name, [path] {
    Outcome o;
    auto table = relation_table_from_json(parse_document(read_file(path), path));
    const std::size_t unfiltered = matrix_axes(table).rows.size();
    o.require(unfiltered == 198, "unfiltered rows " + std::to_string(unfiltered));
    std::size_t filtered = 0;
    for (auto axis : {TopKAxis::PerEmotionSet, TopKAxis::PerDiscourseSet}) {
      auto rows = heatmap_json(table, HeatmapOptions{5, axis})["rows"].size();
      if (rows == 67) filtered = rows;
    }
    o.require(filtered == 67, "no top-5 axis yields 67 rows");
    o.require(diagnostics(table).multi_nonzero_rows == 7, "multi-nonzero rows != 7");
    const EmotionSet aae{Emotion::admiration, Emotion::approval, Emotion::excitement};
    const RelationEntry* h = table.find(aae, DiscourseSet{Discourse::Hysteric});
    o.require(h && std::abs(h->ri - 0.82) <= 0.01, "RI {admiration, approval, excitement} x {H}");
    const EmotionSet add{Emotion::annoyance, Emotion::disappointment, Emotion::disapproval};
    const RelationEntry* hm = table.find(add, DiscourseSet{Discourse::Hysteric, Discourse::Master});
    o.require(hm && std::abs(hm->prob - 0.6389) <= 1e-4, "Prob {annoyance, disappointment, disapproval} x {H,M}");
    return o;
  });
}

}  // namespace

int main() {
  criterion("weight example: Prob=1, W=R=0.224 (1e-12), RI=1", weight_example_criterion);
  criterion("rule conformance: 29 vectors, all voter orders, >=1000 random relabelings", rule_criterion);
  criterion("worked dialogue: six published common-user outcomes", dialogue_criterion);
  criterion("emotion fusion: DY->1, unmentioned->0, bounded and monotone (>=1000 cases)", emotion_criterion);
  criterion("row normalization: rows sum to 1 +/- 1e-9 on >=100 random corpora", row_criterion);
  criterion("oracle equivalence within 1e-12; per-class RI maxima = 1", oracle_criterion);
  criterion("determinism: two pipeline runs give byte-identical artifacts", determinism_criterion);
  dataset_criterion();
  std::printf("%s\n", failures == 0 ? "acceptance: all criteria passed" : "acceptance: FAILED");
  return failures == 0 ? 0 : 1;
}
