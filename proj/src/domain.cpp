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

#include "lddkit/domain.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>

namespace lddkit {

namespace {

constexpr std::array<std::string_view, kNumDiscourses> kDiscourseNames = {
    "Master", "University", "Analyst", "Hysteric", "Capitalist"};
constexpr std::array<char, kNumDiscourses> kDiscourseCodes = {'M', 'U', 'A', 'H', 'C'};

constexpr std::array<std::string_view, kNumEmotions> kEmotionNames = {
    "admiration", "amusement", "anger", "anguish", "annoyance", "anxiety",
    "approval", "caring", "confusion", "curiosity", "desire", "disappointment",
    "disapproval", "disgust", "embarrassment", "excitement", "fear", "gratitude",
    "grief", "joy", "love", "nervousness", "neutral", "optimism",
    "pride", "realization", "relief", "remorse", "sadness", "surprise"};

constexpr std::array<std::string_view, 4> kConfidence4Codes = {"DN", "PN", "PY", "DY"};
constexpr std::array<std::string_view, 4> kConfidence4Names = {
    "definitely not", "probably not", "probably yes", "definitely yes"};

constexpr std::array<std::string_view, 3> kConfidence3Names = {"Low", "Mid", "High"};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

char discourse_code(Discourse d) { return kDiscourseCodes[static_cast<std::size_t>(d)]; }

std::string_view discourse_name(Discourse d) {
  return kDiscourseNames[static_cast<std::size_t>(d)];
}

std::optional<Discourse> parse_discourse(std::string_view text) {
  for (Discourse d : kAllDiscourses) {
    if (iequals(text, discourse_name(d)) ||
        (text.size() == 1 && iequals(text, std::string_view(&kDiscourseCodes[static_cast<std::size_t>(d)], 1))))
      return d;
  }
  return std::nullopt;
}

std::string_view emotion_name(Emotion e) { return kEmotionNames[static_cast<std::size_t>(e)]; }

std::optional<Emotion> parse_emotion(std::string_view text) {
  auto it = std::lower_bound(kEmotionNames.begin(), kEmotionNames.end(), text);
  if (it == kEmotionNames.end() || *it != text) return std::nullopt;
  return static_cast<Emotion>(it - kEmotionNames.begin());
}

const std::array<Emotion, kNumEmotions>& all_emotions() {
  static const auto table = [] {
    std::array<Emotion, kNumEmotions> t{};
    for (int i = 0; i < kNumEmotions; ++i) t[i] = static_cast<Emotion>(i);
    return t;
  }();
  return table;
}

std::string_view confidence4_code(ConfidenceLabel4 label) {
  return kConfidence4Codes[static_cast<std::size_t>(label)];
}

std::optional<ConfidenceLabel4> parse_confidence4(std::string_view text) {
  for (std::size_t i = 0; i < kConfidence4Codes.size(); ++i) {
    if (iequals(text, kConfidence4Codes[i]) || iequals(text, kConfidence4Names[i]))
      return static_cast<ConfidenceLabel4>(i);
  }
  return std::nullopt;
}

std::string_view confidence3_name(ConfidenceLevel3 level) {
  return kConfidence3Names[static_cast<std::size_t>(level)];
}

char confidence3_code(ConfidenceLevel3 level) { return confidence3_name(level)[0]; }

std::optional<ConfidenceLevel3> parse_confidence3(std::string_view text) {
  for (std::size_t i = 0; i < kConfidence3Names.size(); ++i) {
    if (iequals(text, kConfidence3Names[i]) ||
        (text.size() == 1 && iequals(text, kConfidence3Names[i].substr(0, 1))))
      return static_cast<ConfidenceLevel3>(i);
  }
  if (iequals(text, "Medium")) return ConfidenceLevel3::Mid;
  return std::nullopt;
}

void ConfidenceMapping::validate() const {
  if (!(low > 0.0 && low < mid && mid < high && high <= 1.0))
    throw ValidationError("confidence mapping must satisfy 0 < low < mid < high <= 1",
                          "confidence_mapping");
}

double confidence3_to_score(ConfidenceLevel3 level, const ConfidenceMapping& mapping) {
  switch (level) {
    case ConfidenceLevel3::Low: return mapping.low;
    case ConfidenceLevel3::Mid: return mapping.mid;
    case ConfidenceLevel3::High: return mapping.high;
  }
  return 0.0;
}

int DiscourseSet::size() const { return std::popcount(bits_); }

std::vector<Discourse> DiscourseSet::members() const {
  std::vector<Discourse> out;
  for (Discourse d : kAllDiscourses)
    if (contains(d)) out.push_back(d);
  return out;
}

int EmotionSet::size() const { return std::popcount(bits_); }

std::vector<Emotion> EmotionSet::members() const {
  std::vector<Emotion> out;
  for (Emotion e : all_emotions())
    if (contains(e)) out.push_back(e);
  return out;
}

std::string combo_key(DiscourseSet discourses) {
  if (discourses.empty()) throw ValidationError("empty combination");
  std::string codes;
  for (Discourse d : discourses.members()) codes.push_back(discourse_code(d));
  std::sort(codes.begin(), codes.end());
  std::string key;
  for (char c : codes) {
    if (!key.empty()) key.push_back(',');
    key.push_back(c);
  }
  return key;
}

std::string emotion_key(EmotionSet emotions) {
  std::string key;
  for (Emotion e : emotions.members()) {
    if (!key.empty()) key.push_back(',');
    key.append(emotion_name(e));
  }
  return key;
}

std::string emotion_tuple_label(EmotionSet emotions) {
  std::string out = "(";
  auto members = emotions.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ", ";
    out += '\'';
    out += emotion_name(members[i]);
    out += '\'';
  }
  if (members.size() == 1) out += ',';
  out += ')';
  return out;
}

DiscourseSet parse_combo_key(std::string_view key) {
  DiscourseSet set;
  std::size_t start = 0;
  while (start <= key.size()) {
    std::size_t comma = key.find(',', start);
    if (comma == std::string_view::npos) comma = key.size();
    std::string_view token = key.substr(start, comma - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    auto d = parse_discourse(token);
    if (!d) throw ValidationError("unknown discourse '" + std::string(token) + "'");
    set.insert(*d);
    start = comma + 1;
  }
  if (set.empty()) throw ValidationError("empty combination");
  return set;
}

double quantize_voter_weight(double w) {
  if (!std::isfinite(w) || w < 0.0 || w > 1.0) throw ValidationError("weight out of range");
  return std::round(w * 10.0) / 10.0;
}

}  // namespace lddkit
