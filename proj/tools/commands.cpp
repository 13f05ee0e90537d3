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

#include "commands.hpp"

#include <fstream>
#include <sstream>

#include "httplib.h"
#include "lddkit/aggregate.hpp"
#include "lddkit/conformance.hpp"
#include "lddkit/ingest.hpp"
#include "lddkit/serialize.hpp"
#include "lddkit/service.hpp"

namespace lddkit::cli {

namespace {

void print_warnings(const Diagnostics& diag, std::ostream& err) {
  for (const auto& w : diag.warnings) err << "warning: " << w << '\n';
}

// Runs `body`, mapping library errors to exit code 1.
template <typename Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "error: " << e.what();
    if (!e.field().empty()) err << " (field " << e.field() << ")";
    err << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitValidation;
}

std::ifstream open_input(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open " + p.string());
  return in;
}

}  // namespace

int run_ingest(const IngestOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Diagnostics diag;
    Corpus corpus;
    if (opts.format == "dailydialog") {
      auto in = open_input(opts.dialogues);
      if (opts.ids) {
        auto ids = open_input(*opts.ids);
        corpus = parse_dailydialog(in, ids, diag, opts.dialogues.string());
      } else {
        corpus = parse_dailydialog(in, diag, opts.dialogues.string());
      }
    } else if (opts.format == "json") {
      auto doc = parse_document(read_file(opts.dialogues), opts.dialogues.string());
      corpus = doc.is_object() ? corpus_from_json(doc) : parse_corpus_json(doc, opts.dialogues.string());
    } else {
      throw ValidationError("unknown format '" + opts.format + "'", "format");
    }
    print_warnings(diag, err);
    write_file_atomic(opts.out, dump_document(corpus_to_json(corpus)));
    out << "ingested " << corpus.dialogues().size() << " dialogues, " << corpus.sentence_count() << " sentences\n";
    return kExitOk;
  });
}

int run_aggregate(const AggregateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Diagnostics diag;
    Corpus corpus = corpus_from_json(parse_document(read_file(opts.corpus), opts.corpus.string()));
    auto in = open_input(opts.ballots);
    auto ballots = parse_ballots(in, diag);
    resolve_ballots(ballots, corpus);
    auto records = opts.serial ? fuse_corpus_serial(corpus, ballots, diag) : fuse_corpus(corpus, ballots, diag);
    print_warnings(diag, err);
    std::size_t discarded = 0;
    for (const auto& r : records) discarded += r.discarded ? 1 : 0;
    const std::size_t skipped = corpus.sentence_count() - records.size();
    write_file_atomic(opts.out, dump_document(fused_to_json(records)));
    out << "fused " << records.size() << " sentences (" << discarded << " discarded as none), skipped "
        << skipped << " without exactly three ballots\n";
    return kExitOk;
  });
}

int run_relate(const RelateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.fused.has_value() == opts.views.has_value())
      throw ValidationError("give exactly one of --fused or --views", "fused");
    opts.config.validate();
    std::vector<SentenceView> views;
    if (opts.fused) {
      auto records = fused_from_json(parse_document(read_file(*opts.fused), opts.fused->string()));
      views = build_views(records, opts.config);
    } else {
      views = views_from_json(parse_document(read_file(*opts.views), opts.views->string()));
    }
    Diagnostics diag;
    auto table = opts.serial ? relation_table_serial(views, opts.config, diag) : relation_table(views, opts.config, diag);
    print_warnings(diag, err);
    write_file_atomic(opts.out, dump_document(relation_table_to_json(table)));
    out << "relations: " << table.entries.size() << " entries from " << views.size() << " sentences (weight mode "
        << weight_mode_name(opts.config.weight_mode) << ", normalize " << normalize_mode_name(opts.config.normalize)
        << ")\n";
    constexpr std::size_t kListLimit = 20;
    if (table.entries.size() <= kListLimit) {
      for (const auto& e : table.entries) {
        out << "  {" << emotion_key(e.emotions) << "} RI {" << combo_key(e.discourses) << "}: prob="
            << format_number(e.prob) << " W=" << format_number(e.weight_level) << " R=" << format_number(e.relation)
            << " RI=" << format_number(e.ri) << " support=" << e.support << '\n';
      }
    }
    return kExitOk;
  });
}

int run_report(const ReportOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto table = relation_table_from_json(parse_document(read_file(opts.relations), opts.relations.string()));
    HeatmapOptions hm{opts.top, opts.top_axis};
    if (opts.prob_table) {
      std::ostringstream ss;
      export_probability_table(table, ss);
      write_file_atomic(*opts.prob_table, ss.str());
    }
    if (opts.heatmap || opts.heatmap_csv) {
      std::filesystem::path csv_path;
      if (opts.heatmap_csv) {
        csv_path = *opts.heatmap_csv;
      } else {
        csv_path = *opts.heatmap;
        csv_path.replace_extension(".csv");
      }
      std::ostringstream ss;
      export_heatmap_csv(table, ss, hm);
      write_file_atomic(csv_path, ss.str());
      if (opts.heatmap) write_file_atomic(*opts.heatmap, dump_document(heatmap_json(table, hm)));
    }
    if (opts.diagnostics) write_file_atomic(*opts.diagnostics, dump_document(diagnostics_json(diagnostics(table))));

    const auto kept = heatmap_entries(table, hm);
    out << "report: " << table.entries.size() << " entries, " << kept.size() << " kept";
    if (opts.top) out << " (top " << *opts.top << " per " << top_k_axis_name(opts.top_axis) << ")";
    out << '\n';
    if (opts.discourse) {
      DiscourseSet d = parse_combo_key(*opts.discourse);
      for (const auto& [emotions, ri] : top_for_discourse(table, d, opts.top.value_or(5)))
        out << "  {" << emotion_key(emotions) << "} RI {" << combo_key(d) << "} = " << format_number(ri) << '\n';
    }
    return kExitOk;
  });
}

int run_conformance(const ConformanceOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    auto report = lddkit::run_conformance(opts.data_dir, opts.randomized);
    for (const auto& f : report.failures) err << "mismatch: " << f << '\n';
    out << report.summary() << '\n';
    return report.ok() ? kExitOk : kExitConformance;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

int run_serve(const ServeOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Corpus corpus = corpus_from_json(parse_document(read_file(opts.corpus), opts.corpus.string()));
    AnnotationStore store(opts.store);
    AnnotationService service(corpus, store, parse_token_map(opts.tokens), ServiceOptions{opts.ui_dir});
    httplib::Server server;
    service.install(server);
    out << "serving " << corpus.dialogues().size() << " dialogues on http://" << opts.host << ":" << opts.port << '\n';
    out.flush();
    if (!server.listen(opts.host, opts.port)) throw Error("cannot listen on " + opts.host + ":" + std::to_string(opts.port));
    return kExitOk;
  });
}

}  // namespace lddkit::cli
