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
// Language-model operations: counting, Witten-Bell backoff estimation,
// frequency-interpolation adaptation, pruning, perplexity and lexicon
// enlargement.

#ifndef SEEDSEL_LM_H_
#define SEEDSEL_LM_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seedsel/corpus.h"
#include "seedsel/ngram.h"

namespace seedsel {

inline constexpr double kUnigramFloor = 1e-7;

// Accumulates counts sentence by sentence. Every sentence is padded as
// <s> w1 .. wn </s>; tokens outside the lexicon count as <unk>. Empty
// sentences are ignored.
class NGramCounter {
 public:
  NGramCounter(const Lexicon &lexicon, int order);

  void AddSentence(std::span<const std::string> tokens);
  const NGramCounts &counts() const { return counts_; }
  NGramCounts Release() { return std::move(counts_); }

 private:
  NGramCounts counts_;
  std::vector<WordId> padded_;
};

// Vocabulary: <s>, </s>, <unk>, then the lexicon words in rank order.
Vocab VocabFromLexicon(const Lexicon &lexicon);

NGramCounts CountNGrams(std::span<const Document> docs, const Lexicon &lexicon,
                        int order = 3);

// Witten-Bell backoff model. For a history h with c(h) = sum of its
// extension counts and T(h) distinct continuations, a seen word gets
// c(hw) / (c(h) + T(h)); the remaining T(h) / (c(h) + T(h)) is spread over
// unseen words through the backoff weight. Unigrams are relative
// frequencies floored at `unigram_floor` and renormalized, so every
// vocabulary word (including <unk>) is scoreable. Throws
// std::invalid_argument on empty counts.
NGramModel EstimateModel(const NGramCounts &counts,
                         double unigram_floor = kUnigramFloor);

// Pseudo-counts over the union vocabulary whose conditional relative
// frequencies are (1 - lambda) f_bg(w|h) + lambda f_adapt(w|h). A history
// seen by only one side takes that side's frequencies (the weights are
// renormalized over the sides that saw it, and a side with zero weight
// never contributes). Throws std::invalid_argument unless 0 <= lambda <= 1.
NGramCounts MixCounts(const NGramCounts &background,
                      const NGramCounts &adaptation, double lambda);

// EstimateModel(MixCounts(background, adaptation, lambda)).
NGramModel AdaptModel(const NGramCounts &background,
                      const NGramCounts &adaptation, double lambda,
                      double unigram_floor = kUnigramFloor);

struct PruneConfig {
  // Minimal supporting count per order (index 0 = unigrams, ignored).
  std::vector<double> min_counts;
  // Minimal conditional probability for n-grams of order >= 2.
  std::optional<double> min_prob;

  // (0, 1, 1): the thresholds behind the --prune flag.
  static PruneConfig Manageable();
};

// Removes n-grams of order >= 2 below the thresholds, keeping any n-gram
// that prefixes a surviving higher-order one, then recomputes backoff
// weights. Unigrams are untouched. Throws std::invalid_argument if count
// thresholds are set on a model without counts.
NGramModel PruneModel(const NGramModel &model, const PruneConfig &config);

// Sets every backoff weight so that each history's distribution over
// PredictableWords() sums to one, keeping the stored probabilities.
void RecomputeBackoffWeights(NGramModel *model);

struct PerplexityResult {
  double perplexity = 0;
  double log10_prob_total = 0;
  std::uint64_t events = 0;  // tokens plus one </s> per sentence
  std::uint64_t sentences = 0;
  std::uint64_t oov_mapped = 0;
};

// Throws std::invalid_argument when there is nothing to score and
// std::runtime_error if an OOV token meets a model without <unk>.
PerplexityResult ComputePerplexity(
    const NGramModel &model,
    std::span<const std::vector<std::string>> sentences);

// Base words keep their ranks; adaptation words with count >= f_min not
// already present follow in (count desc, word asc) order.
Lexicon BuildAdaptedLexicon(const Lexicon &base,
                            const FrequencyTable &adaptation,
                            std::uint64_t f_min = 1);

}  // namespace seedsel

#endif  // SEEDSEL_LM_H_
