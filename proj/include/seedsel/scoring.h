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
// Word alignment, WER, and precision / recall / F over IW items.

#ifndef SEEDSEL_SCORING_H_
#define SEEDSEL_SCORING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seedsel/corpus.h"
#include "seedsel/transcript.h"

namespace seedsel {

enum class EditOp { kHit, kSubstitution, kDeletion, kInsertion };

struct AlignedPair {
  EditOp op;
  // Index into ref (absent for insertions) and hyp (absent for deletions).
  std::optional<std::size_t> ref;
  std::optional<std::size_t> hyp;
};

struct AlignmentResult {
  std::uint64_t hits = 0;
  std::uint64_t substitutions = 0;
  std::uint64_t insertions = 0;
  std::uint64_t deletions = 0;
  std::uint64_t reference_length = 0;
  std::vector<AlignedPair> trace;

  std::uint64_t errors() const {
    return substitutions + insertions + deletions;
  }
  // Sums counts; traces are concatenated.
  void Accumulate(const AlignmentResult &other);
};

// Unit-cost minimum edit distance alignment. Backtrace prefers hit, then
// substitution, then deletion, then insertion among equal-cost moves.
AlignmentResult Align(std::span<const std::string> ref,
                      std::span<const std::string> hyp);

// "I_in S_them_my D_else ..." for the non-hit pairs of `alignment`.
std::string RenderAlignment(const AlignmentResult &alignment,
                            std::span<const std::string> ref,
                            std::span<const std::string> hyp);

// 100 * (S + I + D) / N. Throws std::invalid_argument when N = 0.
double WordErrorRate(const AlignmentResult &alignment);
std::string WordErrorRateString(const AlignmentResult &alignment);

struct PRFReport {
  std::uint64_t matched = 0;
  std::uint64_t hypothesis_count = 0;
  std::uint64_t reference_count = 0;

  // Empty hypothesis (or reference) gives a vacuous 1.
  double precision() const;
  double recall() const;
  // 2PR / (P + R), 0 when P + R = 0.
  double f_measure() const;

  // Two decimals, half up.
  std::string precision_string() const;
  std::string recall_string() const;
  std::string f_measure_string() const;
};

// Items matched as per-utterance multisets (or over the whole text when
// `corpus_scope`). Throws std::invalid_argument when the utterance counts
// differ.
PRFReport ComputeIWPRF(const std::vector<std::vector<std::string>> &ref_items,
                       const std::vector<std::vector<std::string>> &hyp_items,
                       bool corpus_scope = false);

struct ScoreOptions {
  TokenizerConfig tokenizer;
  bool corpus_scope = false;
  const Lexicon *lexicon = nullptr;  // enables the OOV section
};

struct BenchmarkReport {
  AlignmentResult alignment;
  PRFReport iw;
  PRFReport isol_iw;
  std::optional<OovRate> oov;
  std::size_t utterances = 0;
  std::size_t minimal_iws = 0;
  std::vector<std::string> warnings;

  // {wer, alignment, iw, isol_iw, oov}
  std::string ToJson() const;
  std::string ToTable() const;
};

// parse -> minimal set from the REF IWs -> regenerate both sides ->
// strip -> WER, IW and Isol-IW scores.
BenchmarkReport ScoreBenchmark(const AnnotatedTranscript &ref,
                               const AnnotatedTranscript &hyp,
                               const ScoreOptions &options = {});
BenchmarkReport ScoreBenchmarkFiles(const std::string &ref_path,
                                    const std::string &hyp_path,
                                    const ScoreOptions &options = {});

}  // namespace seedsel

#endif  // SEEDSEL_SCORING_H_
