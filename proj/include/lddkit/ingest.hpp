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

// Dialogue corpora and voter ballots.

#ifndef LDDKIT_INGEST_HPP_
#define LDDKIT_INGEST_HPP_

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "lddkit/domain.hpp"

namespace lddkit {

struct Dialogue {
  std::string id;
  std::vector<std::string> sentences;

  bool operator==(const Dialogue&) const = default;
};

class Corpus {
 public:
  Corpus() = default;
  Corpus(std::string source, std::string format) : source_(std::move(source)), format_(std::move(format)) {}

  // Throws ValidationError on a duplicate id, an empty dialogue or an empty
  // sentence.
  void add(Dialogue dialogue);

  const std::vector<Dialogue>& dialogues() const { return dialogues_; }
  const Dialogue* find(const std::string& id) const;
  std::size_t sentence_count() const;
  bool contains(const SentenceRef& ref) const;

  const std::string& source() const { return source_; }
  const std::string& format() const { return format_; }

  bool operator==(const Corpus& other) const {
    return dialogues_ == other.dialogues_ && source_ == other.source_ && format_ == other.format_;
  }

 private:
  std::vector<Dialogue> dialogues_;  // source order
  std::map<std::string, std::size_t> index_;
  std::string source_;
  std::string format_;
};

// DailyDialog text: one dialogue per line, utterances terminated by "__eou__".
// Dialogues are named "line-<k>" with k the 1-based source line. Lines with
// no utterance are skipped with a warning; an empty input throws.
Corpus parse_dailydialog(std::istream& in, Diagnostics& diag, const std::string& source = "<stream>");
// Same, with ids taken from a sidecar stream (one id per line of `in`).
Corpus parse_dailydialog(std::istream& in, std::istream& ids, Diagnostics& diag,
                         const std::string& source = "<stream>");

// Plain JSON corpus: [{"id": "...", "sentences": ["...", ...]}, ...].
Corpus parse_corpus_json(const nlohmann::json& doc, const std::string& source = "<json>");

// Ballots ----------------------------------------------------------------

// A voter's own discourse confidence, kept as entered: a label or a number in [0,1].
using RawConfidence = std::variant<ConfidenceLevel3, double>;

struct DiscourseEntry {
  Discourse discourse;
  RawConfidence confidence;
  std::optional<double> weight;  // absent when the voter gave "None"

  bool operator==(const DiscourseEntry&) const = default;
};

struct EmotionEntry {
  Emotion emotion;
  ConfidenceLabel4 confidence;

  bool operator==(const EmotionEntry&) const = default;
};

inline constexpr std::size_t kMaxDiscoursesPerBallot = 4;

struct VoterBallot {
  std::string voter_id;
  SentenceRef sentence;
  std::vector<DiscourseEntry> discourses;  // empty means "(none)"
  std::vector<EmotionEntry> emotions;

  DiscourseSet discourse_set() const;
  bool operator==(const VoterBallot&) const = default;
};

// The one validation path for ballots, used by file ingestion and the
// annotation service alike. Throws ValidationError naming the field.
VoterBallot ballot_from_json(const nlohmann::json& record);
nlohmann::json ballot_to_json(const VoterBallot& ballot);
// Canonical single-line JSONL form.
std::string ballot_to_line(const VoterBallot& ballot);

// Reads JSONL ballots. Errors carry the 1-based line number. A repeated
// (voter, sentence) pair replaces the earlier record in place and warns.
std::vector<VoterBallot> parse_ballots(std::istream& in, Diagnostics& diag);

// Throws ValidationError when a ballot points outside the corpus.
void resolve_ballots(const std::vector<VoterBallot>& ballots, const Corpus& corpus);

}  // namespace lddkit

#endif  // LDDKIT_INGEST_HPP_
