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

#include "lddkit/conformance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "lddkit/relate.hpp"
#include "lddkit/serialize.hpp"

namespace lddkit {

using nlohmann::json;

namespace {

constexpr std::array<std::array<int, 3>, 6> kVoterOrders = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

bool fused_less(const FusedDiscourse& a, const FusedDiscourse& b) {
  auto code = [](const FusedDiscourse& f) { return f.discourse ? static_cast<int>(*f.discourse) : -1; };
  if (code(a) != code(b)) return code(a) < code(b);
  if (a.confidence != b.confidence) return a.confidence < b.confidence;
  return a.weight < b.weight;
}

std::string rule_name(const RuleVector& rv) { return "rule " + std::to_string(rv.rule); }

}  // namespace

std::vector<RuleVector> load_rule_vectors(const std::filesystem::path& path) {
  json doc = parse_document(read_file(path), path.string());
  if (doc.value("format", "") != "lddkit.rule-vectors") throw ParseError("not a rule-vector file: " + path.string());
  std::vector<RuleVector> out;
  try {
    for (const auto& r : doc.at("rules")) {
      RuleVector rv;
      rv.rule = r.at("rule").get<int>();
      const auto& voters = r.at("voters");
      if (voters.size() != kVotersPerSentence) throw ValidationError(rule_name(rv) + ": needs three voters");
      for (std::size_t v = 0; v < kVotersPerSentence; ++v) rv.voters[v] = voters[v].get<std::vector<std::string>>();
      for (const auto& o : r.at("outcome")) {
        auto conf = parse_confidence3(o.at(1).get<std::string>());
        if (!conf) throw ValidationError(rule_name(rv) + ": bad confidence");
        rv.outcome.push_back(RuleOutcome{o.at(0).get<std::string>(), *conf, o.at(2).get<double>()});
      }
      rv.note = r.value("note", "");
      out.push_back(std::move(rv));
    }
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return out;
}

Relabeling default_relabeling() {
  return {{"d1", Discourse::Master}, {"d2", Discourse::University}, {"d3", Discourse::Analyst}, {"d4", Discourse::Hysteric}};
}

std::vector<VoterBallot> rule_ballots(const RuleVector& rv, const Relabeling& relabel,
                                      const std::array<int, kVotersPerSentence>& order) {
  std::vector<VoterBallot> ballots;
  for (std::size_t slot = 0; slot < kVotersPerSentence; ++slot) {
    const int v = order[slot];
    VoterBallot b;
    b.voter_id = "V" + std::to_string(v + 1);
    b.sentence = SentenceRef{"rule-" + std::to_string(rv.rule), 0};
    for (const auto& label : rv.voters[v])
      b.discourses.push_back(DiscourseEntry{relabel.at(label), ConfidenceLevel3::High, std::nullopt});
    ballots.push_back(std::move(b));
  }
  return ballots;
}

std::vector<FusedDiscourse> rule_expected(const RuleVector& rv, const Relabeling& relabel) {
  std::vector<FusedDiscourse> out;
  for (const auto& o : rv.outcome) {
    FusedDiscourse f;
    if (o.discourse != "none") f.discourse = relabel.at(o.discourse);
    f.confidence = o.confidence;
    f.weight = o.weight;
    out.push_back(f);
  }
  return out;
}

bool same_outcome(std::vector<FusedDiscourse> a, std::vector<FusedDiscourse> b) {
  std::sort(a.begin(), a.end(), fused_less);
  std::sort(b.begin(), b.end(), fused_less);
  return a == b;
}

std::string describe(const std::vector<FusedDiscourse>& outcome) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < outcome.size(); ++i) {
    if (i) ss << "; ";
    const auto& f = outcome[i];
    ss << (f.discourse ? std::string(discourse_name(*f.discourse)) : std::string("none")) << ", "
       << confidence3_name(f.confidence) << ", " << f.weight;
  }
  return ss.str();
}

std::string ConformanceReport::summary() const {
  std::ostringstream ss;
  ss << rules_passed << "/" << rules_total << " rules, " << dialogue_passed << "/" << dialogue_total
     << " dialogue sentences, weight example " << (weight_example_ok ? "OK" : "FAILED");
  if (randomized_cases) ss << " (" << randomized_cases - randomized_failures << "/" << randomized_cases << " randomized)";
  return ss.str();
}

void check_rule_vectors(const std::filesystem::path& path, std::size_t randomized, std::uint64_t seed,
                        ConformanceReport& report) {
  const auto vectors = load_rule_vectors(path);
  const auto identity = default_relabeling();
  for (const auto& rv : vectors) {
    ++report.rules_total;
    bool ok = true;
    for (const auto& order : kVoterOrders) {
      auto actual = fuse_discourses(rule_ballots(rv, identity, order));
      auto expected = rule_expected(rv, identity);
      if (!same_outcome(actual, expected)) {
        ok = false;
        report.failures.push_back(rule_name(rv) + ": got [" + describe(actual) + "], expected [" + describe(expected) + "]");
        break;
      }
    }
    if (ok) ++report.rules_passed;
  }

  if (vectors.empty() || randomized == 0) return;
  std::mt19937_64 rng(seed);
  std::array<Discourse, kNumDiscourses> pool = kAllDiscourses;
  for (std::size_t c = 0; c < randomized; ++c) {
    const auto& rv = vectors[c % vectors.size()];
    std::shuffle(pool.begin(), pool.end(), rng);
    Relabeling relabel{{"d1", pool[0]}, {"d2", pool[1]}, {"d3", pool[2]}, {"d4", pool[3]}};
    const auto& order = kVoterOrders[std::uniform_int_distribution<std::size_t>(0, 5)(rng)];
    ++report.randomized_cases;
    auto actual = fuse_discourses(rule_ballots(rv, relabel, order));
    if (!same_outcome(actual, rule_expected(rv, relabel))) {
      ++report.randomized_failures;
      report.failures.push_back(rule_name(rv) + " (relabeled): got [" + describe(actual) + "]");
    }
  }
}

void check_worked_dialogue(const std::filesystem::path& dir, ConformanceReport& report) {
  Diagnostics diag;
  Corpus corpus = parse_corpus_json(parse_document(read_file(dir / "corpus.json"), "corpus.json"), "corpus.json");
  std::ifstream ballots_in(dir / "ballots.jsonl");
  if (!ballots_in) throw Error("cannot open " + (dir / "ballots.jsonl").string());
  auto ballots = parse_ballots(ballots_in, diag);
  resolve_ballots(ballots, corpus);
  auto records = fuse_corpus(corpus, ballots, diag);

  json expected = parse_document(read_file(dir / "expected.json"), "expected.json");
  const std::string dialogue = expected.at("dialogue").get<std::string>();
  for (const auto& s : expected.at("sentences")) {
    ++report.dialogue_total;
    const std::size_t idx = s.at("sentence").get<std::size_t>();
    std::vector<FusedDiscourse> want;
    for (const auto& o : s.at("outcome")) {
      FusedDiscourse f;
      f.discourse = parse_discourse(o.at(0).get<std::string>());
      f.confidence = *parse_confidence3(o.at(1).get<std::string>());
      f.weight = o.at(2).get<double>();
      want.push_back(f);
    }
    auto it = std::find_if(records.begin(), records.end(), [&](const CommonUserRecord& r) {
      return r.sentence == SentenceRef{dialogue, idx};
    });
    if (it != records.end() && it->discourses == want) {
      ++report.dialogue_passed;
    } else {
      report.failures.push_back(dialogue + "#" + std::to_string(idx) + ": got [" +
                                (it == records.end() ? std::string("no record") : describe(it->discourses)) +
                                "], expected [" + describe(want) + "]");
    }
  }
}

void check_weight_example(const std::filesystem::path& path, ConformanceReport& report) {
  auto views = views_from_json(parse_document(read_file(path), path.string()));
  RelateConfig config;
  Diagnostics diag;
  auto table = relation_table(views, config, diag);
  report.weight_example_ok = table.entries.size() == 1 && table.entries[0].prob == 1.0 &&
                     std::abs(table.entries[0].weight_level - 0.224) <= 1e-12 &&
                     std::abs(table.entries[0].relation - 0.224) <= 1e-12 && table.entries[0].ri == 1.0;
  if (!report.weight_example_ok) report.failures.push_back("weight example mismatch");
}

ConformanceReport run_conformance(const std::filesystem::path& data_dir, std::size_t randomized, std::uint64_t seed) {
  ConformanceReport report;
  check_rule_vectors(data_dir / "fusion_rules.json", randomized, seed, report);
  check_worked_dialogue(data_dir / "frolatte_ad_10", report);
  check_weight_example(data_dir / "weight_example_views.json", report);
  return report;
}

}  // namespace lddkit
