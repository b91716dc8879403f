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
// Vocabulary, n-gram count tables and backoff n-gram models.

#ifndef SEEDSEL_NGRAM_H_
#define SEEDSEL_NGRAM_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace seedsel {

using WordId = std::uint32_t;
using NGramKey = std::vector<WordId>;

struct NGramKeyHash {
  std::size_t operator()(const NGramKey &key) const noexcept;
};

inline constexpr const char *kBos = "<s>";
inline constexpr const char *kEos = "</s>";
inline constexpr const char *kUnk = "<unk>";

// Word <-> id map. Ids 0, 1, 2 are always <s>, </s>, <unk>.
class Vocab {
 public:
  static constexpr WordId kBosId = 0;
  static constexpr WordId kEosId = 1;
  static constexpr WordId kUnkId = 2;

  Vocab();

  WordId Add(const std::string &word);
  std::optional<WordId> Find(const std::string &word) const;
  // Unknown words map to <unk>.
  WordId IdOrUnk(const std::string &word) const;
  const std::string &Word(WordId id) const { return words_[id]; }
  std::size_t size() const { return words_.size(); }
  const std::vector<std::string> &words() const { return words_; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId> index_;
};

using CountTable = std::unordered_map<NGramKey, double, NGramKeyHash>;

// Per-order n-gram counts over a vocabulary. Counts are doubles so that
// mixed pseudo-counts share the representation.
class NGramCounts {
 public:
  NGramCounts() = default;
  NGramCounts(int order, Vocab vocab);

  int order() const { return order_; }
  const Vocab &vocab() const { return vocab_; }
  Vocab &mutable_vocab() { return vocab_; }

  // Tables are indexed by n-gram length, 1..order.
  const CountTable &Table(int n) const { return tables_[n - 1]; }
  CountTable &MutableTable(int n) { return tables_[n - 1]; }

  void Add(const NGramKey &ngram, double count);
  double Count(const NGramKey &ngram) const;
  bool empty() const;
  std::size_t NumNGrams(int n) const { return tables_[n - 1].size(); }

  // Requires identical vocabularies and order; associative, commutative.
  void Merge(const NGramCounts &other);

  // Same counts keyed by word strings; used for comparisons across
  // differently numbered vocabularies.
  bool SameCounts(const NGramCounts &other) const;

 private:
  int order_ = 0;
  Vocab vocab_;
  std::vector<CountTable> tables_;
};

// "count<TAB>w1 w2 ..." for every stored n-gram, lower orders first,
// lexicographic within an order.
void WriteCounts(std::ostream &out, const NGramCounts &counts);
// The order is the longest n-gram read; the vocabulary is every word seen.
NGramCounts ReadCounts(std::istream &in, const std::string &source = "counts");

struct NGramEntry {
  double log10_prob = 0;
  double log10_backoff = 0;
  // Supporting (pseudo-)count, when the model was estimated here.
  std::optional<double> count;
};

using EntryTable = std::unordered_map<NGramKey, NGramEntry, NGramKeyHash>;

// Log10 probability assigned to <s>, which is never predicted.
inline constexpr double kBosLog10Prob = -99.0;

class NGramModel {
 public:
  NGramModel() = default;
  NGramModel(int order, Vocab vocab);

  int order() const { return order_; }
  const Vocab &vocab() const { return vocab_; }
  Vocab &mutable_vocab() { return vocab_; }
  const EntryTable &Table(int n) const { return tables_[n - 1]; }
  EntryTable &MutableTable(int n) { return tables_[n - 1]; }
  std::size_t NumNGrams(int n) const { return tables_[n - 1].size(); }

  const NGramEntry *Find(std::span<const WordId> ngram) const;

  // log10 P(word | history) with standard backoff; only the last
  // order-1 history words are used. `word` must have a unigram entry.
  double Log10Prob(std::span<const WordId> history, WordId word) const;

  // Every word with a unigram entry except <s>, ascending id.
  std::vector<WordId> PredictableWords() const;

  // True if every n-gram of order >= 2 carries a count.
  bool HasCounts() const;

 private:
  int order_ = 0;
  Vocab vocab_;
  std::vector<EntryTable> tables_;
};

// Keys of `table` sorted by their word strings, for deterministic output.
template <typename Table>
std::vector<const typename Table::value_type *> SortedByWords(
    const Table &table, const Vocab &vocab);

}  // namespace seedsel

#include "seedsel/ngram_inl.h"

#endif  // SEEDSEL_NGRAM_H_
