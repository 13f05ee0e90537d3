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

// Data-driven conformance checks shipped under data/:
//   fusion_rules.json        fusion rule vectors over abstract discourses d1..d4
//   frolatte_ad_10/          a fully worked three-voter dialogue
//   weight_example_views.json four-sentence weight-level example

#ifndef LDDKIT_CONFORMANCE_HPP_
#define LDDKIT_CONFORMANCE_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lddkit/aggregate.hpp"

namespace lddkit {

struct RuleOutcome {
  std::string discourse;  // "d1".."d4" or "none"
  ConfidenceLevel3 confidence;
  double weight;
};

struct RuleVector {
  int rule = 0;
  std::array<std::vector<std::string>, kVotersPerSentence> voters;
  std::vector<RuleOutcome> outcome;
  std::string note;
};

std::vector<RuleVector> load_rule_vectors(const std::filesystem::path& path);

// Abstract label -> concrete discourse; must be injective over the labels used.
using Relabeling = std::map<std::string, Discourse>;

// Identity-like default: d1..d4 -> Master, University, Analyst, Hysteric.
Relabeling default_relabeling();

// Ballots for a vector under a relabeling, voters reordered by `order`.
std::vector<VoterBallot> rule_ballots(const RuleVector& rv, const Relabeling& relabel,
                                      const std::array<int, kVotersPerSentence>& order = {0, 1, 2});
std::vector<FusedDiscourse> rule_expected(const RuleVector& rv, const Relabeling& relabel);

// Exact comparison, insensitive to output order.
bool same_outcome(std::vector<FusedDiscourse> a, std::vector<FusedDiscourse> b);
std::string describe(const std::vector<FusedDiscourse>& outcome);

struct ConformanceReport {
  int rules_passed = 0;
  int rules_total = 0;
  std::size_t randomized_cases = 0;
  std::size_t randomized_failures = 0;
  int dialogue_passed = 0;
  int dialogue_total = 0;
  bool weight_example_ok = false;
  std::vector<std::string> failures;

  bool ok() const {
    return rules_total > 0 && rules_passed == rules_total && randomized_failures == 0 &&
           dialogue_total > 0 && dialogue_passed == dialogue_total && weight_example_ok;
  }
  std::string summary() const;
};

// Every rule vector under all voter orders plus `randomized` random
// relabelings with random voter orders.
void check_rule_vectors(const std::filesystem::path& path, std::size_t randomized, std::uint64_t seed,
                        ConformanceReport& report);
void check_worked_dialogue(const std::filesystem::path& dir, ConformanceReport& report);
void check_weight_example(const std::filesystem::path& path, ConformanceReport& report);

ConformanceReport run_conformance(const std::filesystem::path& data_dir, std::size_t randomized = 1000,
                                  std::uint64_t seed = 20240917);

}  // namespace lddkit

#endif  // LDDKIT_CONFORMANCE_HPP_
