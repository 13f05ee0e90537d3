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

#include <algorithm>
#include <random>

#include "doctest.h"
#include "lddkit/domain.hpp"
#include "lddkit/serialize.hpp"

using namespace lddkit;

TEST_CASE("confidence3_to_score default mapping") {
  CHECK(confidence3_to_score(ConfidenceLevel3::High) == 1.0);
  CHECK(confidence3_to_score(ConfidenceLevel3::Mid) == 0.6);
  CHECK(confidence3_to_score(ConfidenceLevel3::Low) == 0.2);

  ConfidenceMapping custom{0.1, 0.5, 0.9};
  CHECK(confidence3_to_score(ConfidenceLevel3::Mid, custom) == 0.5);
}

TEST_CASE("confidence mapping must be strictly increasing in (0,1]") {
  CHECK_NOTHROW(ConfidenceMapping{}.validate());
  CHECK_THROWS_AS((ConfidenceMapping{0.6, 0.6, 1.0}.validate()), ValidationError);
  CHECK_THROWS_AS((ConfidenceMapping{0.0, 0.5, 1.0}.validate()), ValidationError);
  CHECK_THROWS_AS((ConfidenceMapping{0.2, 0.6, 1.1}.validate()), ValidationError);
}

TEST_CASE("confidence4_to_score is DN=0 PN=1 PY=2 DY=3 and strictly monotone") {
  CHECK(confidence4_to_score(ConfidenceLabel4::DefinitelyNot) == 0);
  CHECK(confidence4_to_score(ConfidenceLabel4::ProbablyNot) == 1);
  CHECK(confidence4_to_score(ConfidenceLabel4::ProbablyYes) == 2);
  CHECK(confidence4_to_score(ConfidenceLabel4::DefinitelyYes) == 3);
  for (int i = 0; i + 1 < 4; ++i)
    CHECK(confidence4_to_score(static_cast<ConfidenceLabel4>(i)) <
          confidence4_to_score(static_cast<ConfidenceLabel4>(i + 1)));
  CHECK(parse_confidence4("PY") == ConfidenceLabel4::ProbablyYes);
  CHECK(parse_confidence4("definitely not") == ConfidenceLabel4::DefinitelyNot);
  CHECK_FALSE(parse_confidence4("maybe").has_value());
}

TEST_CASE("combo_key examples") {
  CHECK(combo_key({Discourse::Master}) == "M");
  CHECK(combo_key({Discourse::Hysteric, Discourse::Master, Discourse::University}) == "H,M,U");
  CHECK(combo_key({Discourse::Capitalist, Discourse::Analyst}) == "A,C");
  CHECK_THROWS_WITH_AS(combo_key(DiscourseSet{}), "empty combination", ValidationError);
}

TEST_CASE("combo_key is insensitive to insertion order") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<Discourse, kNumDiscourses> pool = kAllDiscourses;
    std::shuffle(pool.begin(), pool.end(), rng);
    const int n = 1 + static_cast<int>(rng() % kNumDiscourses);
    DiscourseSet forward, backward;
    for (int i = 0; i < n; ++i) forward.insert(pool[i]);
    for (int i = n - 1; i >= 0; --i) backward.insert(pool[i]);
    REQUIRE(combo_key(forward) == combo_key(backward));
    CHECK(parse_combo_key(combo_key(forward)) == forward);
  }
}

TEST_CASE("parse_combo_key accepts table-style spacing") {
  CHECK(parse_combo_key("H, M, U") == DiscourseSet{Discourse::Hysteric, Discourse::Master, Discourse::University});
  CHECK_THROWS_AS(parse_combo_key("H,X"), ValidationError);
}

TEST_CASE("emotion vocabulary is the closed 30-label set in lexicographic order") {
  const auto& all = all_emotions();
  REQUIRE(all.size() == 30);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(emotion_name(all[i - 1]) < emotion_name(all[i]));
  CHECK(parse_emotion("anguish") == Emotion::anguish);
  CHECK(parse_emotion("anxiety") == Emotion::anxiety);
  CHECK(parse_emotion("neutral") == Emotion::neutral);
  CHECK_FALSE(parse_emotion("comfort").has_value());
  CHECK_FALSE(parse_emotion("Joy").has_value());
}

TEST_CASE("discourse names and codes") {
  CHECK(parse_discourse("H") == Discourse::Hysteric);
  CHECK(parse_discourse("capitalist") == Discourse::Capitalist);
  CHECK_FALSE(parse_discourse("X").has_value());
  std::string codes;
  for (Discourse d : kAllDiscourses) codes.push_back(discourse_code(d));
  CHECK(codes == "MUAHC");
}

TEST_CASE("emotion keys and tuple labels") {
  EmotionSet s{Emotion::disapproval, Emotion::annoyance, Emotion::disappointment};
  CHECK(emotion_key(s) == "annoyance,disappointment,disapproval");
  CHECK(emotion_tuple_label(s) == "('annoyance', 'disappointment', 'disapproval')");
  CHECK(emotion_tuple_label({Emotion::joy}) == "('joy',)");
}

TEST_CASE("voter weights quantize to 0.1 inside [0,1]") {
  CHECK(quantize_voter_weight(0.9) == 0.9);
  CHECK(quantize_voter_weight(0.44) == 0.4);
  CHECK(quantize_voter_weight(0.0) == 0.0);
  CHECK_THROWS_WITH_AS(quantize_voter_weight(1.3), "weight out of range", ValidationError);
  CHECK_THROWS_AS(quantize_voter_weight(-0.1), ValidationError);
}

TEST_CASE("manifest publishes the canonical tables") {
  auto m = manifest_json();
  CHECK(m["discourses"].size() == 5);
  CHECK(m["emotions"].size() == 30);
  CHECK(m["emotions"][0] == "admiration");
  CHECK(m["emotion_confidence"][3]["code"] == "DY");
  CHECK(m["emotion_confidence"][3]["value"] == 3);
  CHECK(m["max_discourses_per_ballot"] == 4);
  CHECK(m.dump() == manifest_json().dump());
}
