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
//
// Copyright 2026 The seedsel Authors.
//
// End-to-end experiment pipelines (baseline, glossary-adapted, embedding
// seeded) with a content-hashed manifest of everything they write.

#ifndef SEEDSEL_PIPELINE_H_
#define SEEDSEL_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seedsel/lm.h"
#include "seedsel/scoring.h"
#include "seedsel/seeds.h"
#include "seedsel/selection.h"
#include "seedsel/text.h"

namespace seedsel {

enum class PipelineMode { kBaseline, kAdapted, kWord2Vec };

std::string ModeName(PipelineMode mode);
// "baseline", "adapted" or "word2vec"; throws std::invalid_argument.
PipelineMode ParseMode(const std::string &name);

struct PipelineConfig {
  std::vector<std::string> corpus_paths;
  std::size_t base_lexicon_size = 128000;
  TokenizerConfig tokenizer;
  int order = 3;

  std::string glossary_path;    // adapted
  std::string embeddings_path;  // word2vec
  std::vector<std::string> initial_seeds;

  MorphConfig morph;  // n_m = 0 disables the morphological step
  SemanticConfig semantic{40, 2};
  SelectionConfig selection;
  double lambda = 0.5;
  bool prune = false;
  PruneConfig prune_config = PruneConfig::Manageable();
  std::uint64_t f_min = 1;

  std::string out_dir = "out";
  unsigned threads = 1;
};

// Sectioned key = value file. Relative paths are taken relative to the
// config file. Throws std::invalid_argument on unknown keys or bad values.
PipelineConfig LoadPipelineConfig(const std::string &path);

// Every problem with `config` for `mode`; empty when runnable.
std::vector<std::string> ValidateConfig(const PipelineConfig &config,
                                        PipelineMode mode);

struct Artifact {
  std::string path;  // relative to the manifest's directory
  std::uint64_t bytes = 0;
  std::string sha256;
};

struct Manifest {
  std::string mode;
  std::vector<Artifact> artifacts;
  std::uint64_t corpus_lines = 0;
  std::uint64_t corpus_lines_skipped = 0;
  std::uint64_t corpus_running_words = 0;
  std::uint64_t seeds = 0;
  std::uint64_t triggering_seeds = 0;
  std::uint64_t documents_selected = 0;
  std::uint64_t lexicon_size = 0;
  std::uint64_t ngrams = 0;

  std::string ToJson() const;
  static Manifest FromJson(const std::string &text);
  const Artifact *Find(const std::string &path) const;
};

std::string Sha256File(const std::string &path);

// Runs one pipeline into <out_dir>/<mode>/ and writes manifest.json there.
// Throws std::invalid_argument if ValidateConfig fails, before any work.
Manifest RunPipeline(const PipelineConfig &config, PipelineMode mode);

struct ReportRow {
  std::string system;
  std::uint64_t seeds = 0;
  std::uint64_t lexicon_size = 0;
  OovRate oov;
  BenchmarkReport score;
};

// One row per pipeline directory (holding manifest.json and lexicon.txt):
// OOV of the reference against that lexicon, and the scores of the
// matching hypothesis file.
std::vector<ReportRow> EmitReport(const std::vector<std::string> &run_dirs,
                                  const std::string &ref_path,
                                  const std::vector<std::string> &hyp_paths,
                                  const TokenizerConfig &tokenizer = {});

// Header: system,seeds,lex_size,oov_rate,wer,iw_p,iw_r,iw_f,isol_iw_p,
// isol_iw_r,isol_iw_f
std::string ReportCsv(const std::vector<ReportRow> &rows);
std::string ReportJson(const std::vector<ReportRow> &rows);

}  // namespace seedsel

#endif  // SEEDSEL_PIPELINE_H_
