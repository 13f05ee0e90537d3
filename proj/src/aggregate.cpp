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

#include "lddkit/aggregate.hpp"

#include <algorithm>
#include <map>

namespace lddkit {

namespace {

void check_three_ballots(std::span<const VoterBallot> ballots) {
  if (ballots.size() != kVotersPerSentence) throw ValidationError("exactly three voters required");
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    if (ballots[i].sentence != ballots[0].sentence)
      throw ValidationError("ballots reference different sentences", "sentence");
    for (std::size_t j = 0; j < i; ++j)
      if (ballots[i].voter_id == ballots[j].voter_id)
        throw ValidationError("duplicate voter '" + ballots[i].voter_id + "'", "voter");
  }
}

// Weight after `k` 0.2 decrements, on the exact decimal grid.
double stepped_weight(int k) {
  int tenths = 10 - 2 * k;
  return tenths <= 0 ? 0.0 : tenths / 10.0;
}

struct SentenceSlot {
  SentenceRef ref;
  std::vector<std::size_t> ballot_indices;
};

// Groups ballots by sentence in corpus order and reports sentences that do
// not carry exactly three ballots. Shared by both corpus kernels.
std::vector<SentenceSlot> plan_slots(const Corpus& corpus, std::span<const VoterBallot> ballots,
                                     Diagnostics& diag) {
  std::map<SentenceRef, std::vector<std::size_t>> by_sentence;
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    if (!corpus.contains(ballots[i].sentence))
      throw ValidationError("ballot references unknown sentence " + ballots[i].sentence.dialogue_id +
                                "#" + std::to_string(ballots[i].sentence.sentence_index),
                            "sentence");
    by_sentence[ballots[i].sentence].push_back(i);
  }

  std::vector<SentenceSlot> slots;
  for (const auto& dialogue : corpus.dialogues()) {
    for (std::size_t s = 0; s < dialogue.sentences.size(); ++s) {
      SentenceRef ref{dialogue.id, s};
      auto it = by_sentence.find(ref);
      if (it == by_sentence.end()) continue;
      auto& indices = it->second;
      if (indices.size() != kVotersPerSentence) {
        diag.warn(dialogue.id + "#" + std::to_string(s) + ": " + std::to_string(indices.size()) +
                  " ballot(s), exactly three voters required; skipped");
        continue;
      }
      std::sort(indices.begin(), indices.end(), [&](std::size_t a, std::size_t b) {
        return ballots[a].voter_id < ballots[b].voter_id;
      });
      if (ballots[indices[0]].voter_id == ballots[indices[1]].voter_id ||
          ballots[indices[1]].voter_id == ballots[indices[2]].voter_id) {
        diag.warn(dialogue.id + "#" + std::to_string(s) + ": repeated voter; skipped");
        continue;
      }
      slots.push_back(SentenceSlot{std::move(ref), indices});
    }
  }
  return slots;
}

CommonUserRecord fuse_slot(const SentenceSlot& slot, std::span<const VoterBallot> ballots) {
  std::array<VoterBallot, kVotersPerSentence> group;
  for (std::size_t v = 0; v < kVotersPerSentence; ++v) group[v] = ballots[slot.ballot_indices[v]];
  return fuse_sentence(group);
}

}  // namespace

std::vector<FusedDiscourse> fuse_discourses(std::span<const VoterBallot> ballots) {
  check_three_ballots(ballots);

  std::array<DiscourseSet, kVotersPerSentence> sets;
  int empty_ballots = 0;
  for (std::size_t v = 0; v < kVotersPerSentence; ++v) {
    sets[v] = ballots[v].discourse_set();
    if (sets[v].empty()) ++empty_ballots;
  }
  if (empty_ballots >= 2) return {FusedDiscourse{std::nullopt, ConfidenceLevel3::Low, 0.0}};

  std::array<int, kNumDiscourses> frequency{};
  for (const auto& s : sets)
    for (Discourse d : s.members()) ++frequency[static_cast<std::size_t>(d)];

  std::vector<FusedDiscourse> out;
  for (Discourse d : kAllDiscourses) {
    const int f = frequency[static_cast<std::size_t>(d)];
    if (f < 2) continue;
    // Discourses sharing a ballot with d.
    DiscourseSet companions;
    for (const auto& s : sets) {
      if (!s.contains(d)) continue;
      for (Discourse other : s.members())
        if (other != d) companions.insert(other);
    }
    int singletons = 0;
    for (Discourse other : companions.members())
      if (frequency[static_cast<std::size_t>(other)] == 1) ++singletons;
    out.push_back(FusedDiscourse{d, f == 3 ? ConfidenceLevel3::High : ConfidenceLevel3::Mid,
                                 stepped_weight(singletons)});
  }
  std::stable_sort(out.begin(), out.end(), [](const FusedDiscourse& a, const FusedDiscourse& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.weight != b.weight) return a.weight > b.weight;
    return *a.discourse < *b.discourse;
  });
  return out;
}

EmotionScores fuse_emotions(std::span<const VoterBallot> ballots) {
  check_three_ballots(ballots);
  std::array<int, kNumEmotions> sums{};
  for (const auto& b : ballots)
    for (const auto& e : b.emotions) sums[static_cast<std::size_t>(e.emotion)] += confidence4_to_score(e.confidence);

  const double voters = static_cast<double>(ballots.size());
  const double top = confidence4_to_score(ConfidenceLabel4::DefinitelyYes);
  EmotionScores scores{};
  for (std::size_t i = 0; i < scores.size(); ++i) scores[i] = sums[i] / voters / top;
  return scores;
}

CommonUserRecord fuse_sentence(std::span<const VoterBallot> ballots) {
  CommonUserRecord record;
  record.discourses = fuse_discourses(ballots);
  record.emotion_scores = fuse_emotions(ballots);
  record.sentence = ballots[0].sentence;
  record.discarded = record.discourses.empty() || record.discourses.front().is_none();
  return record;
}

std::vector<CommonUserRecord> fuse_corpus(const Corpus& corpus, std::span<const VoterBallot> ballots,
                                          Diagnostics& diag) {
  const auto slots = plan_slots(corpus, ballots, diag);
  std::vector<CommonUserRecord> records(slots.size());
  const long long n = static_cast<long long>(slots.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < n; ++i) records[i] = fuse_slot(slots[i], ballots);
  return records;
}

std::vector<CommonUserRecord> fuse_corpus_serial(const Corpus& corpus,
                                                 std::span<const VoterBallot> ballots,
                                                 Diagnostics& diag) {
  const auto slots = plan_slots(corpus, ballots, diag);
  std::vector<CommonUserRecord> records;
  records.reserve(slots.size());
  for (const auto& slot : slots) records.push_back(fuse_slot(slot, ballots));
  return records;
}

}  // namespace lddkit
