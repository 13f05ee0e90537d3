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

// Core vocabulary: discourses, emotions, confidence scales and the compact
// set types the statistics run on.

#ifndef LDDKIT_DOMAIN_HPP_
#define LDDKIT_DOMAIN_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lddkit {

// Errors ---------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that is well-formed but violates a vocabulary or range rule.
// `field` names the offending field (e.g. "discourses[4]") when known.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message, std::string field = {})
      : Error(message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Malformed input text (bad JSON, bad version tag, ...).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Discourses -----------------------------------------------------------

enum class Discourse : std::uint8_t { Master, University, Analyst, Hysteric, Capitalist };

inline constexpr int kNumDiscourses = 5;

inline constexpr std::array<Discourse, kNumDiscourses> kAllDiscourses = {
    Discourse::Master, Discourse::University, Discourse::Analyst, Discourse::Hysteric,
    Discourse::Capitalist};

char discourse_code(Discourse d);
std::string_view discourse_name(Discourse d);
// Accepts the short code ("H") or the full name ("Hysteric"), case-insensitive.
std::optional<Discourse> parse_discourse(std::string_view text);

// Emotions -------------------------------------------------------------

// The 27 GoEmotions labels, neutral, anguish and anxiety. Enumerators are in
// lexicographic order of their names, so enum order is export order.
enum class Emotion : std::uint8_t {
  admiration, amusement, anger, anguish, annoyance, anxiety, approval, caring,
  confusion, curiosity, desire, disappointment, disapproval, disgust, embarrassment,
  excitement, fear, gratitude, grief, joy, love, nervousness, neutral, optimism,
  pride, realization, relief, remorse, sadness, surprise,
};

inline constexpr int kNumEmotions = 30;

std::string_view emotion_name(Emotion e);
std::optional<Emotion> parse_emotion(std::string_view text);
const std::array<Emotion, kNumEmotions>& all_emotions();

// Confidence scales ----------------------------------------------------

// Per-emotion voter label.
enum class ConfidenceLabel4 : std::uint8_t { DefinitelyNot, ProbablyNot, ProbablyYes, DefinitelyYes };

// DN=0, PN=1, PY=2, DY=3.
constexpr int confidence4_to_score(ConfidenceLabel4 label) { return static_cast<int>(label); }
std::string_view confidence4_code(ConfidenceLabel4 label);
std::optional<ConfidenceLabel4> parse_confidence4(std::string_view text);

// Fused discourse confidence.
enum class ConfidenceLevel3 : std::uint8_t { Low, Mid, High };

std::string_view confidence3_name(ConfidenceLevel3 level);
char confidence3_code(ConfidenceLevel3 level);
// "High"/"Mid"/"Low" or "H"/"M"/"L", case-insensitive.
std::optional<ConfidenceLevel3> parse_confidence3(std::string_view text);

// Numeric value of a fused confidence level.
struct ConfidenceMapping {
  double low = 0.2;
  double mid = 0.6;
  double high = 1.0;

  // Requires 0 < low < mid < high <= 1.
  void validate() const;
  bool operator==(const ConfidenceMapping&) const = default;
};

double confidence3_to_score(ConfidenceLevel3 level, const ConfidenceMapping& mapping = {});

// Sets -----------------------------------------------------------------

// A set of discourses as a 5-bit mask.
class DiscourseSet {
 public:
  constexpr DiscourseSet() = default;
  DiscourseSet(std::initializer_list<Discourse> ds) {
    for (Discourse d : ds) insert(d);
  }
  static constexpr DiscourseSet from_bits(std::uint8_t bits) {
    DiscourseSet s;
    s.bits_ = bits & 0x1f;
    return s;
  }

  void insert(Discourse d) { bits_ |= bit(d); }
  bool contains(Discourse d) const { return (bits_ & bit(d)) != 0; }
  bool empty() const { return bits_ == 0; }
  int size() const;
  std::uint8_t bits() const { return bits_; }
  // Members in enum order.
  std::vector<Discourse> members() const;

  bool operator==(const DiscourseSet&) const = default;
  auto operator<=>(const DiscourseSet&) const = default;

 private:
  static constexpr std::uint8_t bit(Discourse d) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(d));
  }
  std::uint8_t bits_ = 0;
};

// A set of emotions as a 30-bit mask.
class EmotionSet {
 public:
  constexpr EmotionSet() = default;
  EmotionSet(std::initializer_list<Emotion> es) {
    for (Emotion e : es) insert(e);
  }
  static constexpr EmotionSet from_bits(std::uint32_t bits) {
    EmotionSet s;
    s.bits_ = bits & 0x3fffffffu;
    return s;
  }

  void insert(Emotion e) { bits_ |= bit(e); }
  bool contains(Emotion e) const { return (bits_ & bit(e)) != 0; }
  bool empty() const { return bits_ == 0; }
  int size() const;
  std::uint32_t bits() const { return bits_; }
  // Members in lexicographic (= enum) order.
  std::vector<Emotion> members() const;

  bool operator==(const EmotionSet&) const = default;
  auto operator<=>(const EmotionSet&) const = default;

 private:
  static constexpr std::uint32_t bit(Emotion e) { return 1u << static_cast<unsigned>(e); }
  std::uint32_t bits_ = 0;
};

// Canonical key: short codes sorted alphabetically, joined by ",".
// {Hysteric, Master, University} -> "H,M,U". Throws ValidationError on an
// empty set.
std::string combo_key(DiscourseSet discourses);
// Emotion names in lexicographic order joined by ",".
std::string emotion_key(EmotionSet emotions);
// Python tuple style used in probability tables: "('annoyance', 'disapproval')".
std::string emotion_tuple_label(EmotionSet emotions);

DiscourseSet parse_combo_key(std::string_view key);

// Weights --------------------------------------------------------------

// Rounds a voter weight to the nearest 0.1. Throws ValidationError outside [0,1].
double quantize_voter_weight(double w);

// Warnings collected during a run; callers decide where they are printed.
struct Diagnostics {
  std::vector<std::string> warnings;
  void warn(std::string message) { warnings.push_back(std::move(message)); }
};

// References -----------------------------------------------------------

struct SentenceRef {
  std::string dialogue_id;
  std::size_t sentence_index = 0;

  bool operator==(const SentenceRef&) const = default;
  auto operator<=>(const SentenceRef&) const = default;
};

}  // namespace lddkit

#endif  // LDDKIT_DOMAIN_HPP_
