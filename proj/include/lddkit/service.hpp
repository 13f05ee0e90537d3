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

// Annotation service: an append-only JSONL ballot store and the HTTP API the
// annotation frontend talks to.
//
//   GET  /api/manifest                               vocabulary tables (no auth)
//   GET  /api/dialogues                              listing with per-voter status
//   GET  /api/dialogues/{id}                         sentences + the caller's ballots
//   POST /api/dialogues/{id}/sentences/{idx}/ballot  store the caller's ballot
//   GET  /api/progress                               per-voter / per-dialogue counts
//   GET  /api/export                                 the ballot log, verbatim
//
// Every /api route except the manifest needs "Authorization: Bearer <token>".

#ifndef LDDKIT_SERVICE_HPP_
#define LDDKIT_SERVICE_HPP_

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "lddkit/ingest.hpp"

namespace httplib {
class Server;
}

namespace lddkit {

// Ballot log on disk plus an in-memory last-write-wins index. Lines are only
// ever appended. Reads may run concurrently; appends are serialized.
class AnnotationStore {
 public:
  // Creates the file if missing, otherwise replays it. A line that fails
  // ballot validation aborts the load with its line number.
  explicit AnnotationStore(std::filesystem::path path);

  // Appends unless the same voter's current ballot for that sentence is
  // identical. Returns whether a line was written.
  bool put(const VoterBallot& ballot);

  std::optional<VoterBallot> get(const std::string& voter, const SentenceRef& ref) const;
  // Effective ballots ordered by (sentence, voter).
  std::vector<VoterBallot> effective() const;
  // The log file's bytes.
  std::string export_log() const;
  std::size_t log_lines() const;

  const std::filesystem::path& path() const { return path_; }

 private:
  using Key = std::pair<SentenceRef, std::string>;  // (sentence, voter)

  std::filesystem::path path_;
  mutable std::shared_mutex mutex_;
  std::map<Key, VoterBallot> latest_;
  std::size_t lines_ = 0;
};

struct ProgressSummary {
  std::map<std::string, std::size_t> per_voter;            // voter -> sentences annotated
  std::map<std::string, std::size_t> complete_per_dialogue;  // dialogue -> sentences with 3 ballots
  std::size_t complete_sentences = 0;
  std::size_t total_sentences = 0;

  nlohmann::json to_json() const;
};

ProgressSummary progress(const Corpus& corpus, const AnnotationStore& store);

// token -> voter id
using TokenMap = std::map<std::string, std::string>;

// "voter1:tokenA,voter2:tokenB". Throws ValidationError on malformed input
// or a token used twice.
TokenMap parse_token_map(const std::string& spec);

struct ServiceOptions {
  std::optional<std::filesystem::path> ui_dir;  // served at "/" when set
};

class AnnotationService {
 public:
  AnnotationService(const Corpus& corpus, AnnotationStore& store, TokenMap tokens, ServiceOptions options = {});

  // Installs every route on `server`.
  void install(httplib::Server& server);

 private:
  const Corpus& corpus_;
  AnnotationStore& store_;
  TokenMap tokens_;
  ServiceOptions options_;
};

}  // namespace lddkit

#endif  // LDDKIT_SERVICE_HPP_
