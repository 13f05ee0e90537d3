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

// Seeded random corpora, ballots and views for tests and benchmarks.

#ifndef LDDKIT_SYNTH_HPP_
#define LDDKIT_SYNTH_HPP_

#include <random>
#include <vector>

#include "lddkit/ingest.hpp"
#include "lddkit/relate.hpp"

namespace lddkit::synth {

Corpus corpus(std::size_t dialogues, std::size_t sentences_per_dialogue, std::mt19937_64& rng);

// Three ballots per sentence, voters "v1".."v3". Discourse counts 0..4 with
// empty ballots kept rare; emotions drawn from the first `emotion_pool`
// emotions so sets repeat.
std::vector<VoterBallot> ballots(const Corpus& corpus, std::mt19937_64& rng, int emotion_pool = 8);

// Views with fused-style values: confidences from {0.2, 0.6, 1.0}, weights on
// the 0.2 grid, 1..3 emotions from a pool of `emotion_pool`, 1..4 discourses.
std::vector<SentenceView> views(std::size_t n, std::mt19937_64& rng, int emotion_pool = 4);

}  // namespace lddkit::synth

#endif  // LDDKIT_SYNTH_HPP_
