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

#include "lddkit/relate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

namespace lddkit {

namespace {

using PairKey = std::pair<std::uint32_t, std::uint8_t>;  // (emotion bits, discourse bits)

struct Accumulator {
  double numerator = 0.0;
  double weight = 0.0;
  std::size_t support = 0;
};

void add_weight(Accumulator& acc, double w, WeightMode mode) {
  if (acc.support == 0) {
    acc.weight = w;
  } else if (mode == WeightMode::Product) {
    acc.weight *= w;
  } else {
    acc.weight += w;
  }
}

std::size_t count_oversized(std::span<const SentenceView> views, const RelateConfig& config) {
  std::size_t n = 0;
  for (const auto& v : views)
    if (!v.emotions.empty() && v.discourses.size() > config.max_discourses) ++n;
  return n;
}

// Orders entries, then fills RI. Shared by both kernels.
RelationTable finish_table(std::vector<RelationEntry> entries, const RelateConfig& config,
                           Diagnostics& diag) {
  std::vector<std::pair<std::string, std::string>> keys(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    keys[i] = {emotion_key(entries[i].emotions), combo_key(entries[i].discourses)};
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ea = entries[a];
    const auto& eb = entries[b];
    if (ea.emotions.size() != eb.emotions.size()) return ea.emotions.size() < eb.emotions.size();
    if (ea.discourses.size() != eb.discourses.size()) return ea.discourses.size() < eb.discourses.size();
    return keys[a] < keys[b];
  });

  RelationTable table;
  table.config = config;
  table.entries.reserve(entries.size());
  for (std::size_t i : order) table.entries.push_back(entries[i]);

  std::map<std::pair<int, int>, double> class_max;
  double global_max = 0.0;
  for (const auto& e : table.entries) {
    auto& m = class_max[{e.discourses.size(), e.emotions.size()}];
    m = std::max(m, e.relation);
    global_max = std::max(global_max, e.relation);
  }
  for (const auto& [cls, m] : class_max) {
    if (m <= 0.0 && config.normalize == NormalizeMode::PerClass)
      diag.warn("all relations are zero for n=" + std::to_string(cls.first) +
                " l=" + std::to_string(cls.second) + "; RI set to 0");
  }
  if (global_max <= 0.0 && config.normalize == NormalizeMode::Global && !table.entries.empty())
    diag.warn("all relations are zero; RI set to 0");
  for (auto& e : table.entries) {
    double m = config.normalize == NormalizeMode::Global
                   ? global_max
                   : class_max[{e.discourses.size(), e.emotions.size()}];
    e.ri = m > 0.0 ? e.relation / m : 0.0;
  }
  return table;
}

RelationEntry make_entry(PairKey key, const Accumulator& acc, double denominator) {
  RelationEntry e;
  e.emotions = EmotionSet::from_bits(key.first);
  e.discourses = DiscourseSet::from_bits(key.second);
  e.prob = acc.numerator / denominator;
  e.weight_level = acc.weight;
  e.relation = e.prob * e.weight_level;
  e.support = acc.support;
  return e;
}

}  // namespace

std::string_view weight_mode_name(WeightMode m) { return m == WeightMode::Product ? "product" : "sum"; }

std::optional<WeightMode> parse_weight_mode(std::string_view s) {
  if (s == "product") return WeightMode::Product;
  if (s == "sum") return WeightMode::Sum;
  return std::nullopt;
}

std::string_view normalize_mode_name(NormalizeMode m) {
  return m == NormalizeMode::PerClass ? "per-class" : "global";
}

std::optional<NormalizeMode> parse_normalize_mode(std::string_view s) {
  if (s == "per-class") return NormalizeMode::PerClass;
  if (s == "global") return NormalizeMode::Global;
  return std::nullopt;
}

void RelateConfig::validate() const {
  if (!(tau > 0.0 && tau <= 1.0)) throw ValidationError("tau must be in (0, 1]", "tau");
  if (max_emotions < 1 || max_emotions > kNumEmotions)
    throw ValidationError("max_emotions must be in [1, 30]", "max_emotions");
  if (max_discourses < 1 || max_discourses > kNumDiscourses)
    throw ValidationError("max_discourses must be in [1, 5]", "max_discourses");
  confidence.validate();
}

double SentenceView::joint_confidence() const {
  double p = 1.0;
  for (Discourse d : discourses.members()) p *= discourse_confidence[static_cast<std::size_t>(d)];
  for (Emotion e : emotions.members()) p *= emotion_confidence[static_cast<std::size_t>(e)];
  return p;
}

double SentenceView::weight_product() const {
  double p = 1.0;
  for (Discourse d : discourses.members()) p *= discourse_weight[static_cast<std::size_t>(d)];
  return p;
}

bool SentenceView::usable(const RelateConfig& config) const {
  return !discourses.empty() && !emotions.empty() && discourses.size() <= config.max_discourses;
}

std::vector<SentenceView> build_views(std::span<const CommonUserRecord> records, const RelateConfig& config) {
  config.validate();
  std::vector<SentenceView> views;
  for (const auto& r : records) {
    if (r.discarded) continue;
    SentenceView v;
    v.sentence = r.sentence;
    for (const auto& fd : r.discourses) {
      if (fd.is_none()) continue;
      const auto idx = static_cast<std::size_t>(*fd.discourse);
      v.discourses.insert(*fd.discourse);
      v.discourse_confidence[idx] = confidence3_to_score(fd.confidence, config.confidence);
      v.discourse_weight[idx] = fd.weight;
    }
    if (v.discourses.empty()) continue;

    std::vector<std::pair<double, Emotion>> present;
    for (Emotion e : all_emotions()) {
      double score = r.emotion_scores[static_cast<std::size_t>(e)];
      if (score >= config.tau) present.emplace_back(score, e);
    }
    std::sort(present.begin(), present.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    if (present.size() > static_cast<std::size_t>(config.max_emotions)) present.resize(config.max_emotions);
    for (const auto& [score, e] : present) {
      v.emotions.insert(e);
      v.emotion_confidence[static_cast<std::size_t>(e)] = score;
    }
    views.push_back(std::move(v));
  }
  return views;
}

std::optional<double> conditional_probability(DiscourseSet d, EmotionSet e, std::span<const SentenceView> views) {
  if (d.empty() || e.empty()) throw ValidationError("empty combination");
  double numerator = 0.0;
  double denominator = 0.0;
  for (const auto& v : views) {
    if (v.emotions != e || v.discourses.empty()) continue;
    const double term = v.joint_confidence();
    denominator += term;
    if (v.discourses == d) numerator += term;
  }
  if (denominator <= 0.0) return std::nullopt;
  return numerator / denominator;
}

double weight_level(DiscourseSet d, EmotionSet e, std::span<const SentenceView> views, WeightMode mode) {
  Accumulator acc;
  for (const auto& v : views) {
    if (v.emotions != e || v.discourses != d) continue;
    add_weight(acc, v.weight_product(), mode);
    ++acc.support;
  }
  return acc.support == 0 ? 0.0 : acc.weight;
}

std::optional<double> relation(DiscourseSet d, EmotionSet e, std::span<const SentenceView> views,
                               const RelateConfig& config) {
  auto prob = conditional_probability(d, e, views);
  if (!prob) return std::nullopt;
  return *prob * weight_level(d, e, views, config.weight_mode);
}

const RelationEntry* RelationTable::find(EmotionSet e, DiscourseSet d) const {
  for (const auto& entry : entries)
    if (entry.emotions == e && entry.discourses == d) return &entry;
  return nullptr;
}

bool entry_order_less(const RelationEntry& a, const RelationEntry& b) {
  if (a.emotions.size() != b.emotions.size()) return a.emotions.size() < b.emotions.size();
  if (a.discourses.size() != b.discourses.size()) return a.discourses.size() < b.discourses.size();
  auto ka = emotion_key(a.emotions);
  auto kb = emotion_key(b.emotions);
  if (ka != kb) return ka < kb;
  return combo_key(a.discourses) < combo_key(b.discourses);
}

RelationTable relation_table_serial(std::span<const SentenceView> views, const RelateConfig& config,
                                    Diagnostics& diag) {
  config.validate();
  if (auto n = count_oversized(views, config))
    diag.warn(std::to_string(n) + " sentence(s) exceed max_discourses and were left out");

  std::map<PairKey, Accumulator> pairs;
  std::map<std::uint32_t, double> denominators;
  for (const auto& v : views) {
    if (!v.usable(config)) continue;
    const double term = v.joint_confidence();
    denominators[v.emotions.bits()] += term;
    auto& acc = pairs[{v.emotions.bits(), v.discourses.bits()}];
    acc.numerator += term;
    add_weight(acc, v.weight_product(), config.weight_mode);
    ++acc.support;
  }

  std::vector<RelationEntry> entries;
  entries.reserve(pairs.size());
  for (const auto& [key, acc] : pairs) entries.push_back(make_entry(key, acc, denominators.at(key.first)));
  return finish_table(std::move(entries), config, diag);
}

RelationTable relation_table(std::span<const SentenceView> views, const RelateConfig& config,
                             Diagnostics& diag) {
  config.validate();
  if (auto n = count_oversized(views, config))
    diag.warn(std::to_string(n) + " sentence(s) exceed max_discourses and were left out");

  std::vector<std::size_t> usable;
  usable.reserve(views.size());
  for (std::size_t i = 0; i < views.size(); ++i)
    if (views[i].usable(config)) usable.push_back(i);

  const long long n_usable = static_cast<long long>(usable.size());
  std::vector<double> joint(usable.size());
  std::vector<double> wprod(usable.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n_usable; ++i) {
    joint[i] = views[usable[i]].joint_confidence();
    wprod[i] = views[usable[i]].weight_product();
  }

  // Stable sort keeps view order inside each (E, D) run and each E run, so
  // every sum adds its terms in the same order as the serial reference.
  std::vector<std::size_t> order(usable.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto key_of = [&](std::size_t i) {
    const auto& v = views[usable[i]];
    return PairKey{v.emotions.bits(), v.discourses.bits()};
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return key_of(a).first < key_of(b).first;
  });

  // Runs of equal emotion set; inside each, sentences remain in view order.
  std::vector<std::size_t> e_starts;
  for (std::size_t i = 0; i < order.size(); ++i)
    if (i == 0 || key_of(order[i]).first != key_of(order[i - 1]).first) e_starts.push_back(i);
  e_starts.push_back(order.size());

  const long long n_groups = static_cast<long long>(e_starts.size()) - 1;
  std::vector<std::vector<RelationEntry>> group_entries(n_groups > 0 ? n_groups : 0);
#pragma omp parallel for schedule(dynamic)
  for (long long g = 0; g < n_groups; ++g) {
    const std::size_t begin = e_starts[g];
    const std::size_t end = e_starts[g + 1];
    double denominator = 0.0;
    std::map<std::uint8_t, Accumulator> by_discourse;
    for (std::size_t k = begin; k < end; ++k) {
      const std::size_t i = order[k];
      denominator += joint[i];
      auto& acc = by_discourse[key_of(i).second];
      acc.numerator += joint[i];
      add_weight(acc, wprod[i], config.weight_mode);
      ++acc.support;
    }
    const std::uint32_t e_bits = key_of(order[begin]).first;
    auto& out = group_entries[g];
    for (const auto& [d_bits, acc] : by_discourse) out.push_back(make_entry({e_bits, d_bits}, acc, denominator));
  }

  std::vector<RelationEntry> entries;
  for (auto& g : group_entries)
    for (auto& e : g) entries.push_back(std::move(e));
  return finish_table(std::move(entries), config, diag);
}

}  // namespace lddkit
