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

#include "lddkit/ingest.hpp"

#include <map>
#include <set>
#include <sstream>

namespace lddkit {

using nlohmann::json;

namespace {

constexpr std::string_view kUtteranceSeparator = "__eou__";

std::string trim(std::string_view s) {
  const char* ws = " \t\r\n\f\v";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_utterances(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < line.size()) {
    std::size_t pos = line.find(kUtteranceSeparator, start);
    std::string_view piece =
        line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
    std::string text = trim(piece);
    if (!text.empty()) out.push_back(std::move(text));
    if (pos == std::string_view::npos) break;
    start = pos + kUtteranceSeparator.size();
  }
  return out;
}

Corpus parse_dailydialog_impl(std::istream& in, std::istream* ids, Diagnostics& diag,
                              const std::string& source) {
  Corpus corpus(source, "dailydialog");
  std::string line;
  std::size_t line_no = 0;
  bool any_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string id;
    if (ids) {
      if (!std::getline(*ids, id))
        throw ValidationError("id sidecar has fewer lines than the dialogue file", "ids");
      id = trim(id);
    }
    if (trim(line).empty()) continue;
    any_content = true;
    auto sentences = split_utterances(line);
    if (sentences.empty()) {
      diag.warn("line " + std::to_string(line_no) + ": no utterances, skipped");
      continue;
    }
    if (id.empty()) id = "line-" + std::to_string(line_no);
    corpus.add(Dialogue{std::move(id), std::move(sentences)});
  }
  if (!any_content) throw ValidationError("empty dialogue file");
  return corpus;
}

std::string line_prefix(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

RawConfidence raw_confidence_from_json(const json& v, const std::string& field) {
  if (v.is_string()) {
    auto level = parse_confidence3(v.get<std::string>());
    if (!level) throw ValidationError("unknown confidence '" + v.get<std::string>() + "'", field);
    return *level;
  }
  if (v.is_number()) {
    double c = v.get<double>();
    if (!(c >= 0.0 && c <= 1.0)) throw ValidationError("confidence out of range", field);
    return c;
  }
  throw ValidationError("confidence must be a label or a number", field);
}

json raw_confidence_to_json(const RawConfidence& c) {
  if (const auto* level = std::get_if<ConfidenceLevel3>(&c))
    return std::string(confidence3_name(*level));
  return std::get<double>(c);
}

const json& require(const json& record, const char* key) {
  auto it = record.find(key);
  if (it == record.end()) throw ValidationError(std::string("missing field '") + key + "'", key);
  return *it;
}

}  // namespace

// Corpus -----------------------------------------------------------------

void Corpus::add(Dialogue dialogue) {
  if (dialogue.id.empty()) throw ValidationError("dialogue id must not be empty", "id");
  if (index_.count(dialogue.id))
    throw ValidationError("duplicate dialogue id '" + dialogue.id + "'", "id");
  if (dialogue.sentences.empty())
    throw ValidationError("dialogue '" + dialogue.id + "' has no sentences", "sentences");
  for (auto& s : dialogue.sentences) {
    s = trim(s);
    if (s.empty()) throw ValidationError("dialogue '" + dialogue.id + "' has an empty sentence", "sentences");
  }
  index_.emplace(dialogue.id, dialogues_.size());
  dialogues_.push_back(std::move(dialogue));
}

const Dialogue* Corpus::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &dialogues_[it->second];
}

std::size_t Corpus::sentence_count() const {
  std::size_t n = 0;
  for (const auto& d : dialogues_) n += d.sentences.size();
  return n;
}

bool Corpus::contains(const SentenceRef& ref) const {
  const Dialogue* d = find(ref.dialogue_id);
  return d && ref.sentence_index < d->sentences.size();
}

Corpus parse_dailydialog(std::istream& in, Diagnostics& diag, const std::string& source) {
  return parse_dailydialog_impl(in, nullptr, diag, source);
}

Corpus parse_dailydialog(std::istream& in, std::istream& ids, Diagnostics& diag,
                         const std::string& source) {
  return parse_dailydialog_impl(in, &ids, diag, source);
}

Corpus parse_corpus_json(const json& doc, const std::string& source) {
  if (!doc.is_array()) throw ValidationError("JSON corpus must be an array of dialogues");
  Corpus corpus(source, "json");
  for (const auto& d : doc) {
    if (!d.is_object()) throw ValidationError("dialogue entry must be an object");
    Dialogue dialogue;
    dialogue.id = require(d, "id").get<std::string>();
    for (const auto& s : require(d, "sentences")) dialogue.sentences.push_back(s.get<std::string>());
    corpus.add(std::move(dialogue));
  }
  return corpus;
}

// Ballots ----------------------------------------------------------------

DiscourseSet VoterBallot::discourse_set() const {
  DiscourseSet s;
  for (const auto& e : discourses) s.insert(e.discourse);
  return s;
}

VoterBallot ballot_from_json(const json& record) {
  if (!record.is_object()) throw ValidationError("ballot must be a JSON object");
  VoterBallot b;
  try {
    const json& voter = require(record, "voter");
    if (!voter.is_string() || voter.get<std::string>().empty())
      throw ValidationError("voter must be a non-empty string", "voter");
    b.voter_id = voter.get<std::string>();

    const json& dialogue = require(record, "dialogue");
    if (!dialogue.is_string()) throw ValidationError("dialogue must be a string", "dialogue");
    b.sentence.dialogue_id = dialogue.get<std::string>();

    const json& sentence = require(record, "sentence");
    if (!sentence.is_number_integer() || sentence.get<long long>() < 0)
      throw ValidationError("sentence must be a non-negative integer", "sentence");
    b.sentence.sentence_index = sentence.get<std::size_t>();

    const json& discourses = require(record, "discourses");
    if (!discourses.is_array()) throw ValidationError("discourses must be an array", "discourses");
    if (discourses.size() > kMaxDiscoursesPerBallot)
      throw ValidationError("max 4 discourses", "discourses");
    DiscourseSet seen;
    for (std::size_t i = 0; i < discourses.size(); ++i) {
      const json& entry = discourses[i];
      const std::string field = "discourses[" + std::to_string(i) + "]";
      if (!entry.is_object()) throw ValidationError("discourse entry must be an object", field);
      auto d_it = entry.find("d");
      if (d_it == entry.end() || !d_it->is_string())
        throw ValidationError("discourse code missing", field + ".d");
      auto d = parse_discourse(d_it->get<std::string>());
      if (!d) throw ValidationError("unknown discourse '" + d_it->get<std::string>() + "'", field + ".d");
      if (seen.contains(*d))
        throw ValidationError("duplicate discourse '" + std::string(1, discourse_code(*d)) + "'", field + ".d");
      seen.insert(*d);

      auto c_it = entry.find("conf");
      if (c_it == entry.end()) throw ValidationError("confidence missing", field + ".conf");
      RawConfidence conf = raw_confidence_from_json(*c_it, field + ".conf");

      std::optional<double> weight;
      auto w_it = entry.find("w");
      if (w_it != entry.end() && !w_it->is_null()) {
        if (!w_it->is_number()) throw ValidationError("weight must be a number or null", field + ".w");
        try {
          weight = quantize_voter_weight(w_it->get<double>());
        } catch (const ValidationError& e) {
          throw ValidationError(e.what(), field + ".w");
        }
      }
      b.discourses.push_back(DiscourseEntry{*d, conf, weight});
    }

    const json& emotions = require(record, "emotions");
    if (!emotions.is_array()) throw ValidationError("emotions must be an array", "emotions");
    EmotionSet seen_e;
    for (std::size_t i = 0; i < emotions.size(); ++i) {
      const json& entry = emotions[i];
      const std::string field = "emotions[" + std::to_string(i) + "]";
      if (!entry.is_object()) throw ValidationError("emotion entry must be an object", field);
      auto e_it = entry.find("e");
      if (e_it == entry.end() || !e_it->is_string())
        throw ValidationError("emotion name missing", field + ".e");
      auto e = parse_emotion(e_it->get<std::string>());
      if (!e) throw ValidationError("unknown emotion '" + e_it->get<std::string>() + "'", field + ".e");
      if (seen_e.contains(*e))
        throw ValidationError("duplicate emotion '" + e_it->get<std::string>() + "'", field + ".e");
      seen_e.insert(*e);
      auto c_it = entry.find("conf");
      if (c_it == entry.end() || !c_it->is_string())
        throw ValidationError("emotion confidence missing", field + ".conf");
      auto c = parse_confidence4(c_it->get<std::string>());
      if (!c) throw ValidationError("unknown emotion confidence '" + c_it->get<std::string>() + "'", field + ".conf");
      b.emotions.push_back(EmotionEntry{*e, *c});
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad field type: ") + e.what());
  }
  return b;
}

json ballot_to_json(const VoterBallot& b) {
  json discourses = json::array();
  for (const auto& e : b.discourses) {
    json entry = json::object();
    entry["d"] = std::string(1, discourse_code(e.discourse));
    entry["conf"] = raw_confidence_to_json(e.confidence);
    entry["w"] = e.weight ? json(*e.weight) : json(nullptr);
    discourses.push_back(std::move(entry));
  }
  json emotions = json::array();
  for (const auto& e : b.emotions) {
    emotions.push_back(json{{"e", std::string(emotion_name(e.emotion))},
                            {"conf", std::string(confidence4_code(e.confidence))}});
  }
  return json{{"voter", b.voter_id},
              {"dialogue", b.sentence.dialogue_id},
              {"sentence", b.sentence.sentence_index},
              {"discourses", std::move(discourses)},
              {"emotions", std::move(emotions)}};
}

std::string ballot_to_line(const VoterBallot& ballot) { return ballot_to_json(ballot).dump(); }

std::vector<VoterBallot> parse_ballots(std::istream& in, Diagnostics& diag) {
  std::vector<VoterBallot> out;
  std::map<std::pair<std::string, SentenceRef>, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(line_prefix(line_no) + e.what());
    }
    VoterBallot b;
    try {
      b = ballot_from_json(record);
    } catch (const ValidationError& e) {
      throw ValidationError(line_prefix(line_no) + e.what(), e.field());
    }
    auto key = std::make_pair(b.voter_id, b.sentence);
    if (auto it = seen.find(key); it != seen.end()) {
      diag.warn(line_prefix(line_no) + "duplicate ballot for voter '" + b.voter_id + "' on " +
                b.sentence.dialogue_id + "#" + std::to_string(b.sentence.sentence_index) +
                ", later record wins");
      out[it->second] = std::move(b);
    } else {
      seen.emplace(std::move(key), out.size());
      out.push_back(std::move(b));
    }
  }
  return out;
}

void resolve_ballots(const std::vector<VoterBallot>& ballots, const Corpus& corpus) {
  for (const auto& b : ballots) {
    if (!corpus.find(b.sentence.dialogue_id))
      throw ValidationError("unknown dialogue '" + b.sentence.dialogue_id + "'", "dialogue");
    if (!corpus.contains(b.sentence))
      throw ValidationError("sentence " + std::to_string(b.sentence.sentence_index) +
                                " out of range for dialogue '" + b.sentence.dialogue_id + "'",
                            "sentence");
  }
}

}  // namespace lddkit
