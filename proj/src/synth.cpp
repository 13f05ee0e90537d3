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

#include "lddkit/synth.hpp"

#include <algorithm>

namespace lddkit::synth {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<Discourse> pick_discourses(std::mt19937_64& rng, int count) {
  std::array<Discourse, kNumDiscourses> pool = kAllDiscourses;
  std::shuffle(pool.begin(), pool.end(), rng);
  return {pool.begin(), pool.begin() + count};
}

std::vector<Emotion> pick_emotions(std::mt19937_64& rng, int pool_size, int count) {
  std::vector<Emotion> pool;
  for (int i = 0; i < pool_size; ++i) pool.push_back(static_cast<Emotion>(i));
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(std::min<std::size_t>(count, pool.size()));
  return pool;
}

}  // namespace

Corpus corpus(std::size_t dialogues, std::size_t sentences_per_dialogue, std::mt19937_64& rng) {
  Corpus c("synthetic", "synthetic");
  for (std::size_t d = 0; d < dialogues; ++d) {
    Dialogue dialogue{"synth-" + std::to_string(d), {}};
    for (std::size_t s = 0; s < sentences_per_dialogue; ++s)
      dialogue.sentences.push_back("sentence " + std::to_string(s) + " token " + std::to_string(rng() % 1000));
    c.add(std::move(dialogue));
  }
  return c;
}

std::vector<VoterBallot> ballots(const Corpus& corpus, std::mt19937_64& rng, int emotion_pool) {
  std::vector<VoterBallot> out;
  for (const auto& d : corpus.dialogues()) {
    for (std::size_t s = 0; s < d.sentences.size(); ++s) {
      // A shared "true" discourse makes agreement common.
      const Discourse anchor = kAllDiscourses[uniform(rng, 0, kNumDiscourses - 1)];
      for (int v = 1; v <= 3; ++v) {
        VoterBallot b;
        b.voter_id = "v" + std::to_string(v);
        b.sentence = SentenceRef{d.id, s};
        const int roll = uniform(rng, 0, 19);
        if (roll > 0) {
          const int extra = roll < 12 ? 0 : roll < 17 ? 1 : roll < 19 ? 2 : 3;
          DiscourseSet chosen{anchor};
          for (Discourse x : pick_discourses(rng, kNumDiscourses)) {
            if (chosen.size() > extra) break;
            chosen.insert(x);
          }
          for (Discourse x : chosen.members()) {
            b.discourses.push_back(DiscourseEntry{x, static_cast<ConfidenceLevel3>(uniform(rng, 0, 2)),
                                                  uniform(rng, 0, 10) / 10.0});
          }
        }
        for (Emotion e : pick_emotions(rng, emotion_pool, uniform(rng, 0, 3)))
          b.emotions.push_back(EmotionEntry{e, static_cast<ConfidenceLabel4>(uniform(rng, 0, 3))});
        out.push_back(std::move(b));
      }
    }
  }
  return out;
}

std::vector<SentenceView> views(std::size_t n, std::mt19937_64& rng, int emotion_pool) {
  static constexpr double kConf[] = {0.2, 0.6, 1.0};
  std::vector<SentenceView> out;
  for (std::size_t i = 0; i < n; ++i) {
    SentenceView v;
    v.sentence = SentenceRef{"synth", i};
    for (Discourse d : pick_discourses(rng, uniform(rng, 1, 4))) {
      v.discourses.insert(d);
      v.discourse_confidence[static_cast<std::size_t>(d)] = kConf[uniform(rng, 0, 2)];
      v.discourse_weight[static_cast<std::size_t>(d)] = uniform(rng, 1, 5) * 2 / 10.0;
    }
    for (Emotion e : pick_emotions(rng, emotion_pool, uniform(rng, 1, 3))) {
      v.emotions.insert(e);
      v.emotion_confidence[static_cast<std::size_t>(e)] = uniform(rng, 3, 9) / 9.0;
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace lddkit::synth
