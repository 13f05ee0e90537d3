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

// Discourse/emotion co-occurrence statistics over fused records.
//
// All set membership is exact: a sentence contributes to the pair (D, E) only
// when its fused discourse set equals D and its emotion set equals E.
//
//   Prob(D|E) = sum_{s: D_s=D, E_s=E} prod c_s(d) prod c_s(e)
//             / sum_{s: E_s=E}        prod_{d in D_s} c_s(d) prod c_s(e)
//   W(D,E)    = prod (product mode) or sum (sum mode) over the matching
//               sentences of prod_{d in D} w_s(d)
//   R         = Prob * W
//   RI        = R / max R within the same (|D|, |E|) class (or globally)

#ifndef LDDKIT_RELATE_HPP_
#define LDDKIT_RELATE_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lddkit/aggregate.hpp"
#include "lddkit/domain.hpp"

namespace lddkit {

enum class WeightMode { Product, Sum };
enum class NormalizeMode { PerClass, Global };

std::string_view weight_mode_name(WeightMode m);
std::optional<WeightMode> parse_weight_mode(std::string_view s);
std::string_view normalize_mode_name(NormalizeMode m);
std::optional<NormalizeMode> parse_normalize_mode(std::string_view s);

struct RelateConfig {
  double tau = 0.33;           // emotion presence threshold on fused scores
  int max_emotions = 3;        // emotions kept per sentence, best first
  int max_discourses = 4;      // larger fused discourse sets are left out
  WeightMode weight_mode = WeightMode::Product;
  NormalizeMode normalize = NormalizeMode::PerClass;
  ConfidenceMapping confidence;

  // Throws ValidationError on out-of-range settings.
  void validate() const;
  bool operator==(const RelateConfig&) const = default;
};

// One sentence as the statistics see it. Arrays are indexed by enum value
// and only meaningful for members of the corresponding set.
struct SentenceView {
  SentenceRef sentence;
  DiscourseSet discourses;
  std::array<double, kNumDiscourses> discourse_confidence{};
  std::array<double, kNumDiscourses> discourse_weight{};
  EmotionSet emotions;
  std::array<double, kNumEmotions> emotion_confidence{};

  // Product of the confidences of every discourse and emotion in the view.
  double joint_confidence() const;
  // Product of the weights of every discourse in the view.
  double weight_product() const;
  bool usable(const RelateConfig& config) const;

  bool operator==(const SentenceView&) const = default;
};

// Skips discarded records. Emotion sets keep scores >= tau, at most
// max_emotions of them by (score desc, name asc). Views with an empty
// emotion set are returned but never contribute to any statistic.
std::vector<SentenceView> build_views(std::span<const CommonUserRecord> records, const RelateConfig& config);

// nullopt when E never occurs (empty denominator).
std::optional<double> conditional_probability(DiscourseSet d, EmotionSet e, std::span<const SentenceView> views);

// 0 when no view matches (D, E) exactly.
double weight_level(DiscourseSet d, EmotionSet e, std::span<const SentenceView> views, WeightMode mode);

// Prob * W; nullopt when Prob is undefined.
std::optional<double> relation(DiscourseSet d, EmotionSet e, std::span<const SentenceView> views,
                               const RelateConfig& config);

struct RelationEntry {
  EmotionSet emotions;
  DiscourseSet discourses;
  double prob = 0.0;
  double weight_level = 0.0;
  double relation = 0.0;
  double ri = 0.0;
  std::size_t support = 0;

  bool operator==(const RelationEntry&) const = default;
};

struct RelationTable {
  std::vector<RelationEntry> entries;  // ordered by (|E|, |D|, emotion key, discourse key)
  RelateConfig config;

  const RelationEntry* find(EmotionSet e, DiscourseSet d) const;
  bool operator==(const RelationTable&) const = default;
};

// Entries for every (D, E) pair realized by at least one usable view.
// Accumulation runs in parallel over pairs with OpenMP; sums inside a pair
// follow view order so results match the serial reference bit for bit.
RelationTable relation_table(std::span<const SentenceView> views, const RelateConfig& config,
                             Diagnostics& diag);

// Single-threaded reference for relation_table.
RelationTable relation_table_serial(std::span<const SentenceView> views, const RelateConfig& config,
                                    Diagnostics& diag);

// Ordering used by RelationTable::entries.
bool entry_order_less(const RelationEntry& a, const RelationEntry& b);

}  // namespace lddkit

#endif  // LDDKIT_RELATE_HPP_
