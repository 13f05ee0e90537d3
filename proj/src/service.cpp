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

#include "lddkit/service.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "httplib.h"
#include "lddkit/serialize.hpp"

namespace lddkit {

using nlohmann::json;

// Store ------------------------------------------------------------------

AnnotationStore::AnnotationStore(std::filesystem::path path) : path_(std::move(path)) {
  if (!std::filesystem::exists(path_)) {
    std::ofstream create(path_, std::ios::binary);
    if (!create) throw Error("cannot create store " + path_.string());
    return;
  }
  std::ifstream in(path_, std::ios::binary);
  if (!in) throw Error("cannot open store " + path_.string());
  std::string line;
  while (std::getline(in, line)) {
    ++lines_;
    if (line.empty()) continue;
    VoterBallot b;
    try {
      b = ballot_from_json(json::parse(line));
    } catch (const std::exception& e) {
      throw ParseError(path_.string() + ": line " + std::to_string(lines_) + ": " + e.what());
    }
    Key key{b.sentence, b.voter_id};
    latest_[key] = std::move(b);
  }
}

bool AnnotationStore::put(const VoterBallot& ballot) {
  std::unique_lock lock(mutex_);
  Key key{ballot.sentence, ballot.voter_id};
  if (auto it = latest_.find(key); it != latest_.end() && it->second == ballot) return false;
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  out << ballot_to_line(ballot) << '\n';
  out.flush();
  if (!out) throw Error("cannot append to store " + path_.string());
  ++lines_;
  latest_[key] = ballot;
  return true;
}

std::optional<VoterBallot> AnnotationStore::get(const std::string& voter, const SentenceRef& ref) const {
  std::shared_lock lock(mutex_);
  auto it = latest_.find(Key{ref, voter});
  if (it == latest_.end()) return std::nullopt;
  return it->second;
}

std::vector<VoterBallot> AnnotationStore::effective() const {
  std::shared_lock lock(mutex_);
  std::vector<VoterBallot> out;
  out.reserve(latest_.size());
  for (const auto& [_, b] : latest_) out.push_back(b);
  return out;
}

std::string AnnotationStore::export_log() const {
  std::shared_lock lock(mutex_);
  return read_file(path_);
}

std::size_t AnnotationStore::log_lines() const {
  std::shared_lock lock(mutex_);
  return lines_;
}

// Progress ---------------------------------------------------------------

json ProgressSummary::to_json() const {
  return json{{"per_voter", per_voter},
              {"complete_per_dialogue", complete_per_dialogue},
              {"complete_sentences", complete_sentences},
              {"total_sentences", total_sentences}};
}

ProgressSummary progress(const Corpus& corpus, const AnnotationStore& store) {
  ProgressSummary p;
  p.total_sentences = corpus.sentence_count();
  std::map<SentenceRef, std::size_t> per_sentence;
  for (const auto& b : store.effective()) {
    ++p.per_voter[b.voter_id];
    ++per_sentence[b.sentence];
  }
  for (const auto& d : corpus.dialogues()) p.complete_per_dialogue[d.id] = 0;
  for (const auto& [ref, n] : per_sentence) {
    if (n < 3) continue;
    ++p.complete_sentences;
    ++p.complete_per_dialogue[ref.dialogue_id];
  }
  return p;
}

TokenMap parse_token_map(const std::string& spec) {
  TokenMap tokens;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == item.size())
      throw ValidationError("token entry must look like voter:token", "tokens");
    std::string voter = item.substr(0, colon);
    std::string token = item.substr(colon + 1);
    if (!tokens.emplace(token, voter).second) throw ValidationError("token used twice", "tokens");
  }
  if (tokens.empty()) throw ValidationError("no voter tokens configured", "tokens");
  return tokens;
}

// HTTP -------------------------------------------------------------------

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message,
                const std::string& field = {}) {
  json body{{"error", code}, {"message", message}};
  if (!field.empty()) body["field"] = field;
  send_json(res, status, body);
}

}  // namespace

AnnotationService::AnnotationService(const Corpus& corpus, AnnotationStore& store, TokenMap tokens,
                                     ServiceOptions options)
    : corpus_(corpus), store_(store), tokens_(std::move(tokens)), options_(std::move(options)) {}

void AnnotationService::install(httplib::Server& server) {
  // Resolves the bearer token; writes a 401 and returns nullopt otherwise.
  auto authenticate = [this](const httplib::Request& req, httplib::Response& res) -> std::optional<std::string> {
    const std::string header = req.get_header_value("Authorization");
    const std::string prefix = "Bearer ";
    if (header.rfind(prefix, 0) == 0) {
      auto it = tokens_.find(header.substr(prefix.size()));
      if (it != tokens_.end()) return it->second;
    }
    send_error(res, 401, "unauthorized", "missing or unknown bearer token");
    return std::nullopt;
  };

  server.Get("/api/manifest", [](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, manifest_json());
  });

  server.Get("/api/dialogues", [this, authenticate](const httplib::Request& req, httplib::Response& res) {
    auto voter = authenticate(req, res);
    if (!voter) return;
    const auto ballots = store_.effective();
    std::map<SentenceRef, std::size_t> totals;
    std::set<SentenceRef> mine;
    for (const auto& b : ballots) {
      ++totals[b.sentence];
      if (b.voter_id == *voter) mine.insert(b.sentence);
    }
    json list = json::array();
    for (const auto& d : corpus_.dialogues()) {
      std::size_t annotated = 0, complete = 0;
      for (std::size_t i = 0; i < d.sentences.size(); ++i) {
        SentenceRef ref{d.id, i};
        if (mine.count(ref)) ++annotated;
        if (auto it = totals.find(ref); it != totals.end() && it->second >= 3) ++complete;
      }
      list.push_back(json{{"id", d.id}, {"sentences", d.sentences.size()}, {"annotated", annotated}, {"complete", complete}});
    }
    send_json(res, 200, json{{"voter", *voter}, {"dialogues", std::move(list)}});
  });

  server.Get(R"(/api/dialogues/([^/]+))", [this, authenticate](const httplib::Request& req, httplib::Response& res) {
    auto voter = authenticate(req, res);
    if (!voter) return;
    const std::string id = req.matches[1];
    const Dialogue* d = corpus_.find(id);
    if (!d) return send_error(res, 404, "not_found", "unknown dialogue '" + id + "'", "dialogue");
    json sentences = json::array();
    for (std::size_t i = 0; i < d->sentences.size(); ++i) {
      auto own = store_.get(*voter, SentenceRef{id, i});
      sentences.push_back(json{{"index", i},
                               {"text", d->sentences[i]},
                               {"annotated", own.has_value()},
                               {"ballot", own ? ballot_to_json(*own) : json(nullptr)}});
    }
    send_json(res, 200, json{{"id", id}, {"voter", *voter}, {"sentences", std::move(sentences)}});
  });

  server.Post(R"(/api/dialogues/([^/]+)/sentences/(\d+)/ballot)",
              [this, authenticate](const httplib::Request& req, httplib::Response& res) {
    auto voter = authenticate(req, res);
    if (!voter) return;
    const std::string id = req.matches[1];
    const Dialogue* d = corpus_.find(id);
    if (!d) return send_error(res, 404, "not_found", "unknown dialogue '" + id + "'", "dialogue");
    std::size_t idx = 0;
    try {
      idx = std::stoull(req.matches[2]);
    } catch (const std::exception&) {
      return send_error(res, 404, "not_found", "bad sentence index", "sentence");
    }
    if (idx >= d->sentences.size())
      return send_error(res, 404, "not_found", "sentence index out of range", "sentence");

    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::parse_error& e) {
      return send_error(res, 400, "parse_error", e.what());
    }
    if (!body.is_object()) return send_error(res, 400, "validation", "ballot must be a JSON object");
    // The path and the token decide where the ballot goes and whose it is.
    if (body.contains("voter") && body["voter"] != *voter)
      return send_error(res, 403, "forbidden", "voter does not match token", "voter");
    if (body.contains("dialogue") && body["dialogue"] != id)
      return send_error(res, 400, "validation", "dialogue does not match path", "dialogue");
    if (body.contains("sentence") && body["sentence"] != idx)
      return send_error(res, 400, "validation", "sentence does not match path", "sentence");
    body["voter"] = *voter;
    body["dialogue"] = id;
    body["sentence"] = idx;

    VoterBallot ballot;
    try {
      ballot = ballot_from_json(body);
    } catch (const ValidationError& e) {
      return send_error(res, 400, "validation", e.what(), e.field());
    }
    bool written = store_.put(ballot);
    send_json(res, written ? 201 : 200, json{{"stored", written}, {"ballot", ballot_to_json(ballot)}});
  });

  server.Get("/api/progress", [this, authenticate](const httplib::Request& req, httplib::Response& res) {
    if (!authenticate(req, res)) return;
    send_json(res, 200, progress(corpus_, store_).to_json());
  });

  server.Get("/api/export", [this, authenticate](const httplib::Request& req, httplib::Response& res) {
    if (!authenticate(req, res)) return;
    res.status = 200;
    res.set_content(store_.export_log(), "application/x-ndjson");
  });

  if (options_.ui_dir) {
    if (!server.set_mount_point("/", options_.ui_dir->string()))
      throw Error("UI directory not found: " + options_.ui_dir->string());
  }
}

}  // namespace lddkit
