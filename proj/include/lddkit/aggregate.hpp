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

// Fusion of three voters' ballots into a single "common user" vote.
//
// Discourses: a discourse named by all three voters is kept with High
// confidence, by exactly two with Mid, by one voter it is dropped. The kept
// discourse starts at weight 1.0 and loses 0.2 for every distinct discourse
// that shares a ballot with it and was named by a single voter. Two or more
// empty ballots give the "none" outcome (none, Low, 0).
//
// Emotions: each voter's DN/PN/PY/DY label maps to 0..3 (unmentioned = DN),
// and the score is the voters' sum divided by the voter count and by 3.

#ifndef LDDKIT_AGGREGATE_HPP_
#define LDDKIT_AGGREGATE_HPP_

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "lddkit/domain.hpp"
#include "lddkit/ingest.hpp"

namespace lddkit {

inline constexpr std::size_t kVotersPerSentence = 3;

struct FusedDiscourse {
  std::optional<Discourse> discourse;  // nullopt is the "none" outcome
  ConfidenceLevel3 confidence = ConfidenceLevel3::Low;
  double weight = 0.0;

  bool is_none() const { return !discourse.has_value(); }
  bool operator==(const FusedDiscourse&) const = default;
};

using EmotionScores = std::array<double, kNumEmotions>;

struct CommonUserRecord {
  SentenceRef sentence;
  std::vector<FusedDiscourse> discourses;
  EmotionScores emotion_scores{};
  // Set when the discourse outcome is "none" or no discourse reached
  // agreement; such records stay out of the statistics.
  bool discarded = false;

  bool operator==(const CommonUserRecord&) const = default;
};

// Throws ValidationError unless exactly three ballots from distinct voters
// on the same sentence are given. Output is ordered by confidence (desc),
// weight (desc), then discourse enum order (M, U, A, H, C).
std::vector<FusedDiscourse> fuse_discourses(std::span<const VoterBallot> ballots);

// Same preconditions as fuse_discourses. Every emotion gets a score in [0,1].
EmotionScores fuse_emotions(std::span<const VoterBallot> ballots);

// Fuses one sentence's ballots; the record is discarded when the discourse
// outcome carries no usable discourse.
CommonUserRecord fuse_sentence(std::span<const VoterBallot> ballots);

// One record per sentence with exactly three ballots, in corpus order.
// Sentences with fewer (or more) ballots are skipped with a warning.
// Ballots must already be resolved against the corpus. Per-sentence fusion
// runs in parallel with OpenMP; output order does not depend on threads.
std::vector<CommonUserRecord> fuse_corpus(const Corpus& corpus, std::span<const VoterBallot> ballots,
                                          Diagnostics& diag);

// Single-threaded reference for fuse_corpus; same output, same warnings.
std::vector<CommonUserRecord> fuse_corpus_serial(const Corpus& corpus,
                                                 std::span<const VoterBallot> ballots,
                                                 Diagnostics& diag);

}  // namespace lddkit

#endif  // LDDKIT_AGGREGATE_HPP_
