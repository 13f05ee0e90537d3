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

#include "lddkit/serialize.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

namespace lddkit {

using nlohmann::json;

namespace {

json header(const char* format) { return json{{"format", format}, {"version", kFormatVersion}}; }

void check_header(const json& doc, const char* format) {
  if (!doc.is_object()) throw ParseError(std::string("expected a ") + format + " document");
  auto f = doc.find("format");
  auto v = doc.find("version");
  if (f == doc.end() || !f->is_string() || f->get<std::string>() != format)
    throw ParseError(std::string("format tag mismatch: expected ") + format);
  if (v == doc.end() || !v->is_number_integer() || v->get<int>() != kFormatVersion)
    throw ParseError(std::string("version tag mismatch: expected ") + std::to_string(kFormatVersion));
}

Discourse discourse_from(const json& j) {
  auto d = parse_discourse(j.get<std::string>());
  if (!d) throw ValidationError("unknown discourse '" + j.get<std::string>() + "'");
  return *d;
}

Emotion emotion_from(const json& j) {
  auto e = parse_emotion(j.get<std::string>());
  if (!e) throw ValidationError("unknown emotion '" + j.get<std::string>() + "'");
  return *e;
}

json emotion_list(EmotionSet set) {
  json out = json::array();
  for (Emotion e : set.members()) out.push_back(std::string(emotion_name(e)));
  return out;
}

EmotionSet emotion_set_from(const json& j) {
  EmotionSet s;
  for (const auto& e : j) s.insert(emotion_from(e));
  return s;
}

json sentence_ref_json(const SentenceRef& r) {
  return json{{"dialogue", r.dialogue_id}, {"sentence", r.sentence_index}};
}

SentenceRef sentence_ref_from(const json& j) {
  return SentenceRef{j.at("dialogue").get<std::string>(), j.at("sentence").get<std::size_t>()};
}

template <typename Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

// Corpus -----------------------------------------------------------------

json corpus_to_json(const Corpus& corpus) {
  json doc = header(kCorpusFormat);
  doc["provenance"] = json{{"source", corpus.source()}, {"format", corpus.format()}};
  json dialogues = json::array();
  for (const auto& d : corpus.dialogues()) dialogues.push_back(json{{"id", d.id}, {"sentences", d.sentences}});
  doc["dialogues"] = std::move(dialogues);
  return doc;
}

Corpus corpus_from_json(const json& doc) {
  check_header(doc, kCorpusFormat);
  return guarded("corpus", [&] {
    const auto& prov = doc.at("provenance");
    Corpus corpus(prov.at("source").get<std::string>(), prov.at("format").get<std::string>());
    for (const auto& d : doc.at("dialogues"))
      corpus.add(Dialogue{d.at("id").get<std::string>(), d.at("sentences").get<std::vector<std::string>>()});
    return corpus;
  });
}

// Fused records ------------------------------------------------------------

json fused_to_json(std::span<const CommonUserRecord> records) {
  json doc = header(kFusedFormat);
  doc["voters_per_sentence"] = kVotersPerSentence;
  json list = json::array();
  for (const auto& r : records) {
    json discourses = json::array();
    for (const auto& fd : r.discourses) {
      discourses.push_back(json{
          {"d", fd.is_none() ? std::string("none") : std::string(1, discourse_code(*fd.discourse))},
          {"conf", std::string(confidence3_name(fd.confidence))},
          {"w", fd.weight}});
    }
    json emotions = json::object();
    for (Emotion e : all_emotions()) emotions[std::string(emotion_name(e))] = r.emotion_scores[static_cast<std::size_t>(e)];
    json rec = sentence_ref_json(r.sentence);
    rec["discourses"] = std::move(discourses);
    rec["emotions"] = std::move(emotions);
    rec["discarded"] = r.discarded;
    list.push_back(std::move(rec));
  }
  doc["records"] = std::move(list);
  return doc;
}

std::vector<CommonUserRecord> fused_from_json(const json& doc) {
  check_header(doc, kFusedFormat);
  return guarded("fused", [&] {
    std::vector<CommonUserRecord> out;
    for (const auto& rec : doc.at("records")) {
      CommonUserRecord r;
      r.sentence = sentence_ref_from(rec);
      for (const auto& fd : rec.at("discourses")) {
        FusedDiscourse f;
        const auto code = fd.at("d").get<std::string>();
        if (code != "none") f.discourse = discourse_from(fd.at("d"));
        auto conf = parse_confidence3(fd.at("conf").get<std::string>());
        if (!conf) throw ValidationError("unknown confidence '" + fd.at("conf").get<std::string>() + "'");
        f.confidence = *conf;
        f.weight = fd.at("w").get<double>();
        r.discourses.push_back(f);
      }
      for (const auto& [name, score] : rec.at("emotions").items()) {
        auto e = parse_emotion(name);
        if (!e) throw ValidationError("unknown emotion '" + name + "'");
        r.emotion_scores[static_cast<std::size_t>(*e)] = score.get<double>();
      }
      r.discarded = rec.at("discarded").get<bool>();
      out.push_back(std::move(r));
    }
    return out;
  });
}

// Views --------------------------------------------------------------------

json views_to_json(std::span<const SentenceView> views) {
  json doc = header(kViewsFormat);
  json list = json::array();
  for (const auto& v : views) {
    json discourses = json::array();
    for (Discourse d : v.discourses.members()) {
      const auto i = static_cast<std::size_t>(d);
      discourses.push_back(json{{"d", std::string(1, discourse_code(d))},
                                {"c", v.discourse_confidence[i]},
                                {"w", v.discourse_weight[i]}});
    }
    json emotions = json::array();
    for (Emotion e : v.emotions.members())
      emotions.push_back(json{{"e", std::string(emotion_name(e))}, {"c", v.emotion_confidence[static_cast<std::size_t>(e)]}});
    json rec = sentence_ref_json(v.sentence);
    rec["discourses"] = std::move(discourses);
    rec["emotions"] = std::move(emotions);
    list.push_back(std::move(rec));
  }
  doc["views"] = std::move(list);
  return doc;
}

std::vector<SentenceView> views_from_json(const json& doc) {
  check_header(doc, kViewsFormat);
  return guarded("views", [&] {
    std::vector<SentenceView> out;
    for (const auto& rec : doc.at("views")) {
      SentenceView v;
      v.sentence = sentence_ref_from(rec);
      for (const auto& d : rec.at("discourses")) {
        Discourse disc = discourse_from(d.at("d"));
        const double c = d.at("c").get<double>();
        const double w = d.at("w").get<double>();
        if (!(c > 0.0 && c <= 1.0)) throw ValidationError("discourse confidence out of range");
        if (!(w >= 0.0 && w <= 1.0)) throw ValidationError("weight out of range");
        if (v.discourses.contains(disc)) throw ValidationError("duplicate discourse in view");
        v.discourses.insert(disc);
        v.discourse_confidence[static_cast<std::size_t>(disc)] = c;
        v.discourse_weight[static_cast<std::size_t>(disc)] = w;
      }
      for (const auto& e : rec.at("emotions")) {
        Emotion em = emotion_from(e.at("e"));
        const double c = e.at("c").get<double>();
        if (!(c > 0.0 && c <= 1.0)) throw ValidationError("emotion confidence out of range");
        if (v.emotions.contains(em)) throw ValidationError("duplicate emotion in view");
        v.emotions.insert(em);
        v.emotion_confidence[static_cast<std::size_t>(em)] = c;
      }
      out.push_back(std::move(v));
    }
    return out;
  });
}

// Relations ----------------------------------------------------------------

json relate_config_to_json(const RelateConfig& c) {
  return json{{"tau", c.tau},
              {"max_emotions", c.max_emotions},
              {"max_discourses", c.max_discourses},
              {"weight_mode", std::string(weight_mode_name(c.weight_mode))},
              {"normalize", std::string(normalize_mode_name(c.normalize))},
              {"confidence_mapping", json{{"H", c.confidence.high}, {"M", c.confidence.mid}, {"L", c.confidence.low}}}};
}

RelateConfig relate_config_from_json(const json& j) {
  return guarded("config", [&] {
    RelateConfig c;
    c.tau = j.at("tau").get<double>();
    c.max_emotions = j.at("max_emotions").get<int>();
    c.max_discourses = j.at("max_discourses").get<int>();
    auto wm = parse_weight_mode(j.at("weight_mode").get<std::string>());
    auto nm = parse_normalize_mode(j.at("normalize").get<std::string>());
    if (!wm) throw ValidationError("unknown weight_mode", "weight_mode");
    if (!nm) throw ValidationError("unknown normalize mode", "normalize");
    c.weight_mode = *wm;
    c.normalize = *nm;
    const auto& m = j.at("confidence_mapping");
    c.confidence = ConfidenceMapping{m.at("L").get<double>(), m.at("M").get<double>(), m.at("H").get<double>()};
    c.validate();
    return c;
  });
}

json relation_table_to_json(const RelationTable& table) {
  json doc = header(kRelationsFormat);
  doc["config"] = relate_config_to_json(table.config);
  json list = json::array();
  for (const auto& e : table.entries) {
    list.push_back(json{{"emotions", emotion_list(e.emotions)},
                        {"discourses", combo_key(e.discourses)},
                        {"prob", e.prob},
                        {"w", e.weight_level},
                        {"r", e.relation},
                        {"ri", e.ri},
                        {"support", e.support}});
  }
  doc["entries"] = std::move(list);
  return doc;
}

RelationTable relation_table_from_json(const json& doc) {
  check_header(doc, kRelationsFormat);
  return guarded("relations", [&] {
    RelationTable t;
    t.config = relate_config_from_json(doc.at("config"));
    for (const auto& e : doc.at("entries")) {
      RelationEntry r;
      r.emotions = emotion_set_from(e.at("emotions"));
      r.discourses = parse_combo_key(e.at("discourses").get<std::string>());
      r.prob = e.at("prob").get<double>();
      r.weight_level = e.at("w").get<double>();
      r.relation = e.at("r").get<double>();
      r.ri = e.at("ri").get<double>();
      r.support = e.at("support").get<std::size_t>();
      t.entries.push_back(r);
    }
    return t;
  });
}

void write_ballots(std::ostream& out, std::span<const VoterBallot> ballots) {
  for (const auto& b : ballots) out << ballot_to_line(b) << '\n';
}

json manifest_json() {
  json discourses = json::array();
  for (Discourse d : kAllDiscourses)
    discourses.push_back(json{{"code", std::string(1, discourse_code(d))}, {"name", std::string(discourse_name(d))}});
  json emotions = json::array();
  for (Emotion e : all_emotions()) emotions.push_back(std::string(emotion_name(e)));
  json emotion_conf = json::array();
  for (int i = 0; i < 4; ++i) {
    auto label = static_cast<ConfidenceLabel4>(i);
    emotion_conf.push_back(json{{"code", std::string(confidence4_code(label))}, {"value", confidence4_to_score(label)}});
  }
  json discourse_conf = json::array();
  for (int i = 2; i >= 0; --i) discourse_conf.push_back(std::string(confidence3_name(static_cast<ConfidenceLevel3>(i))));
  return json{{"format", "lddkit.manifest"},
              {"version", kFormatVersion},
              {"discourses", std::move(discourses)},
              {"emotions", std::move(emotions)},
              {"emotion_confidence", std::move(emotion_conf)},
              {"discourse_confidence", std::move(discourse_conf)},
              {"max_discourses_per_ballot", kMaxDiscoursesPerBallot},
              {"weight", json{{"min", 0.0}, {"max", 1.0}, {"step", 0.1}}}};
}

std::string dump_document(const json& doc) { return doc.dump(2) + "\n"; }

json parse_document(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot rename onto " + path.string());
  }
}

}  // namespace lddkit
