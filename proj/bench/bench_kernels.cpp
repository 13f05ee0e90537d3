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

// Times the OpenMP kernels against their serial references on synthetic
// data and checks the outputs agree.
//
//   bench_kernels [sentences] [repeats]

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <random>

#include "lddkit/aggregate.hpp"
#include "lddkit/relate.hpp"
#include "lddkit/synth.hpp"

using namespace lddkit;

template <typename Fn>
double best_of(int repeats, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    double t0 = omp_get_wtime();
    fn();
    best = std::min(best, omp_get_wtime() - t0);
  }
  return best;
}

int main(int argc, char** argv) {
  const std::size_t sentences = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  std::printf("threads=%d sentences=%zu repeats=%d\n", omp_get_max_threads(), sentences, repeats);

  std::mt19937_64 rng(7);
  const std::size_t per_dialogue = 8;
  Corpus corpus = synth::corpus(sentences / per_dialogue, per_dialogue, rng);
  auto ballots = synth::ballots(corpus, rng, 12);

  std::vector<CommonUserRecord> par_records, ser_records;
  double t_fuse_par = best_of(repeats, [&] {
    Diagnostics d;
    par_records = fuse_corpus(corpus, ballots, d);
  });
  double t_fuse_ser = best_of(repeats, [&] {
    Diagnostics d;
    ser_records = fuse_corpus_serial(corpus, ballots, d);
  });
  std::printf("fuse_corpus      parallel %8.4f s  serial %8.4f s  speedup %5.2fx  equal=%s\n", t_fuse_par,
              t_fuse_ser, t_fuse_ser / t_fuse_par, par_records == ser_records ? "yes" : "NO");

  RelateConfig config;
  auto views = build_views(par_records, config);
  auto extra = synth::views(sentences, rng, 12);
  views.insert(views.end(), extra.begin(), extra.end());

  RelationTable par_table, ser_table;
  double t_rel_par = best_of(repeats, [&] {
    Diagnostics d;
    par_table = relation_table(views, config, d);
  });
  double t_rel_ser = best_of(repeats, [&] {
    Diagnostics d;
    ser_table = relation_table_serial(views, config, d);
  });
  std::printf("relation_table   parallel %8.4f s  serial %8.4f s  speedup %5.2fx  equal=%s  entries=%zu\n",
              t_rel_par, t_rel_ser, t_rel_ser / t_rel_par, par_table == ser_table ? "yes" : "NO",
              par_table.entries.size());
  return (par_records == ser_records && par_table == ser_table) ? 0 : 1;
}
