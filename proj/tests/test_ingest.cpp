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

#include <random>
#include <sstream>

#include "doctest.h"
#include "lddkit/ingest.hpp"
#include "lddkit/serialize.hpp"
#include "lddkit/synth.hpp"

using namespace lddkit;
using nlohmann::json;

namespace {

// 40 dialogues whose lengths add up to 276 sentences.
std::string forty_dialogue_file() {
  std::string text;
  int total = 0;
  for (int d = 0; d < 40; ++d) {
    const int n = d < 36 ? 7 : 6;  // 36*7 + 4*6 = 276
    for (int s = 0; s < n; ++s) text += "dialogue " + std::to_string(d) + " utterance " + std::to_string(s) + " __eou__ ";
    text += "\n";
    total += n;
  }
  REQUIRE(total == 276);
  return text;
}

std::string ballot_line(const std::string& discourses, const std::string& emotions = "[]",
                        const std::string& voter = "v1", int sentence = 0) {
  return R"({"voter":")" + voter + R"(","dialogue":"d","sentence":)" + std::to_string(sentence) +
         R"(,"discourses":)" + discourses + R"(,"emotions":)" + emotions + "}";
}

}  // namespace

TEST_CASE("DailyDialog line splits on the end-of-utterance marker") {
  std::istringstream in("Hello there. __eou__ Hi! __eou__\n");
  Diagnostics diag;
  Corpus c = parse_dailydialog(in, diag);
  REQUIRE(c.dialogues().size() == 1);
  CHECK(c.dialogues()[0].id == "line-1");
  CHECK(c.dialogues()[0].sentences == std::vector<std::string>{"Hello there.", "Hi!"});
  CHECK(diag.warnings.empty());
}

TEST_CASE("DailyDialog line with no utterance is skipped with a warning") {
  std::istringstream in("A. __eou__ B. __eou__\n__eou__\nC. __eou__\n");
  Diagnostics diag;
  Corpus c = parse_dailydialog(in, diag);
  CHECK(c.dialogues().size() == 2);
  CHECK(c.dialogues()[1].id == "line-3");
  REQUIRE(diag.warnings.size() == 1);
  CHECK(diag.warnings[0].find("line 2") != std::string::npos);
}

TEST_CASE("empty DailyDialog file is a validation error") {
  std::istringstream in("");
  Diagnostics diag;
  CHECK_THROWS_AS(parse_dailydialog(in, diag), ValidationError);
}

TEST_CASE("DailyDialog id sidecar names dialogues") {
  std::istringstream in("A. __eou__\nB. __eou__\n");
  std::istringstream ids("first\nsecond\n");
  Diagnostics diag;
  Corpus c = parse_dailydialog(in, ids, diag);
  CHECK(c.find("second") != nullptr);
  CHECK(c.find("line-2") == nullptr);
}

TEST_CASE("40-dialogue file yields 276 sentences and round-trips") {
  std::istringstream in(forty_dialogue_file());
  Diagnostics diag;
  Corpus c = parse_dailydialog(in, diag, "forty.txt");
  CHECK(c.dialogues().size() == 40);
  CHECK(c.sentence_count() == 276);

  Corpus back = corpus_from_json(parse_document(dump_document(corpus_to_json(c)), "corpus"));
  CHECK(back == c);
  CHECK(back.sentence_count() == 276);
}

TEST_CASE("empty corpus round-trips") {
  Corpus empty("nothing", "json");
  Corpus back = corpus_from_json(parse_document(dump_document(corpus_to_json(empty)), "corpus"));
  CHECK(back == empty);
  CHECK(back.sentence_count() == 0);
}

TEST_CASE("JSON corpus requires unique ids and non-empty sentences") {
  CHECK_NOTHROW(parse_corpus_json(json::parse(R"([{"id":"a","sentences":["x"]}])")));
  CHECK_THROWS_AS(parse_corpus_json(json::parse(R"([{"id":"a","sentences":["x"]},{"id":"a","sentences":["y"]}])")),
                  ValidationError);
  CHECK_THROWS_AS(parse_corpus_json(json::parse(R"([{"id":"a","sentences":[]}])")), ValidationError);
  CHECK_THROWS_AS(parse_corpus_json(json::parse(R"({"id":"a"})")), ValidationError);
}

TEST_CASE("corrupted document reports the position") {
  std::string text = dump_document(corpus_to_json(Corpus("x", "json")));
  text.insert(text.find("\"version\""), "#");
  try {
    parse_document(text, "corpus.json");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
    CHECK(std::string(e.what()).find("corpus.json") != std::string::npos);
  }
}

TEST_CASE("document with the wrong version or format tag is rejected") {
  json doc = corpus_to_json(Corpus("x", "json"));
  doc["version"] = 2;
  CHECK_THROWS_AS(corpus_from_json(doc), ParseError);
  doc = corpus_to_json(Corpus("x", "json"));
  doc["format"] = kFusedFormat;
  CHECK_THROWS_AS(corpus_from_json(doc), ParseError);
}

TEST_CASE("ballot with five discourses is rejected") {
  const std::string five = R"([{"d":"M","conf":"H","w":1},{"d":"U","conf":"H","w":1},{"d":"A","conf":"H","w":1},)"
                           R"({"d":"H","conf":"H","w":1},{"d":"C","conf":"H","w":1}])";
  try {
    ballot_from_json(json::parse(ballot_line(five)));
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()) == "max 4 discourses");
    CHECK(e.field() == "discourses");
  }
}

TEST_CASE("ballot weight outside [0,1] is rejected with its field") {
  try {
    ballot_from_json(json::parse(ballot_line(R"([{"d":"M","conf":"H","w":1.3}])")));
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()) == "weight out of range");
    CHECK(e.field() == "discourses[0].w");
  }
}

TEST_CASE("null weight is read as absent") {
  VoterBallot b = ballot_from_json(json::parse(ballot_line(R"([{"d":"A","conf":"M","w":null}])")));
  REQUIRE(b.discourses.size() == 1);
  CHECK_FALSE(b.discourses[0].weight.has_value());
  CHECK(ballot_from_json(ballot_to_json(b)) == b);
}

TEST_CASE("numeric confidences and quantized weights survive a round trip") {
  VoterBallot b = ballot_from_json(json::parse(
      ballot_line(R"([{"d":"H","conf":0.45,"w":0.7}])", R"([{"e":"joy","conf":"PY"},{"e":"fear","conf":"DN"}])")));
  CHECK(std::get<double>(b.discourses[0].confidence) == 0.45);
  CHECK(b.emotions.size() == 2);
  CHECK(ballot_from_json(json::parse(ballot_to_line(b))) == b);
}

TEST_CASE("unknown emotion is reported with its line number") {
  std::istringstream in(ballot_line(R"([{"d":"M","conf":"H","w":1}])") + "\n" +
                        ballot_line(R"([{"d":"M","conf":"H","w":1}])", R"([{"e":"comfort","conf":"PY"}])", "v2") +
                        "\n");
  Diagnostics diag;
  try {
    parse_ballots(in, diag);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("unknown emotion 'comfort'") != std::string::npos);
  }
}

TEST_CASE("malformed ballot line is a parse error with its line number") {
  std::istringstream in(ballot_line("[]") + "\n{not json\n");
  Diagnostics diag;
  try {
    parse_ballots(in, diag);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("duplicate ballot keeps the last one and warns") {
  std::istringstream in(ballot_line(R"([{"d":"M","conf":"H","w":1}])") + "\n" +
                        ballot_line(R"([{"d":"U","conf":"H","w":1}])") + "\n");
  Diagnostics diag;
  auto ballots = parse_ballots(in, diag);
  REQUIRE(ballots.size() == 1);
  CHECK(ballots[0].discourse_set() == DiscourseSet{Discourse::University});
  CHECK(diag.warnings.size() == 1);
}

TEST_CASE("ballots must point at sentences of the corpus") {
  Corpus c("x", "json");
  c.add(Dialogue{"d", {"one", "two"}});
  Diagnostics diag;
  std::istringstream ok(ballot_line("[]", "[]", "v1", 1));
  CHECK_NOTHROW(resolve_ballots(parse_ballots(ok, diag), c));
  std::istringstream bad(ballot_line("[]", "[]", "v1", 2));
  CHECK_THROWS_AS(resolve_ballots(parse_ballots(bad, diag), c), ValidationError);
}

TEST_CASE("write_ballots and parse_ballots round-trip synthetic ballots") {
  std::mt19937_64 rng(5);
  Corpus c = synth::corpus(6, 5, rng);
  auto ballots = synth::ballots(c, rng);
  std::ostringstream out;
  write_ballots(out, ballots);
  std::istringstream in(out.str());
  Diagnostics diag;
  CHECK(parse_ballots(in, diag) == ballots);
  CHECK(diag.warnings.empty());
}
