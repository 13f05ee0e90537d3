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

// Persisted artifacts. Every document is a JSON object tagged with
// "format" and "version"; loaders reject any other tag. Keys are written in
// sorted order, so identical values give identical bytes.

#ifndef LDDKIT_SERIALIZE_HPP_
#define LDDKIT_SERIALIZE_HPP_

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "lddkit/aggregate.hpp"
#include "lddkit/ingest.hpp"
#include "lddkit/relate.hpp"

namespace lddkit {

inline constexpr int kFormatVersion = 1;

inline constexpr const char* kCorpusFormat = "lddkit.corpus";
inline constexpr const char* kFusedFormat = "lddkit.fused";
inline constexpr const char* kViewsFormat = "lddkit.views";
inline constexpr const char* kRelationsFormat = "lddkit.relations";

nlohmann::json corpus_to_json(const Corpus& corpus);
Corpus corpus_from_json(const nlohmann::json& doc);

nlohmann::json fused_to_json(std::span<const CommonUserRecord> records);
std::vector<CommonUserRecord> fused_from_json(const nlohmann::json& doc);

nlohmann::json views_to_json(std::span<const SentenceView> views);
std::vector<SentenceView> views_from_json(const nlohmann::json& doc);

nlohmann::json relate_config_to_json(const RelateConfig& config);
RelateConfig relate_config_from_json(const nlohmann::json& j);

nlohmann::json relation_table_to_json(const RelationTable& table);
RelationTable relation_table_from_json(const nlohmann::json& doc);

void write_ballots(std::ostream& out, std::span<const VoterBallot> ballots);

// Vocabulary tables for the UI and for validating files by hand.
nlohmann::json manifest_json();

// Pretty-printed document with a trailing newline.
std::string dump_document(const nlohmann::json& doc);
// Throws ParseError carrying the line/column of the first syntax error.
nlohmann::json parse_document(const std::string& text, const std::string& what);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temp file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace lddkit

#endif  // LDDKIT_SERIALIZE_HPP_
