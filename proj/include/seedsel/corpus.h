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
// Corpus streaming, word counting, ranked lexica and OOV statistics.

#ifndef SEEDSEL_CORPUS_H_
#define SEEDSEL_CORPUS_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "seedsel/text.h"

namespace seedsel {

// One corpus line. `text` is the line exactly as read (no newline).
struct Document {
  std::uint64_t id = 0;
  std::string text;
  std::vector<std::string> tokens;
};

struct IngestReport {
  std::uint64_t lines_read = 0;
  std::uint64_t lines_skipped_invalid_utf8 = 0;
};

// Reads one document per line. Lines that are not valid UTF-8 are
// skipped and counted; ids are the 1-based line ordinals, so skipped
// lines leave gaps.
class CorpusReader {
 public:
  CorpusReader(std::istream &in, TokenizerConfig config);

  bool Next(Document *doc);
  const IngestReport &report() const { return report_; }

 private:
  std::istream &in_;
  TokenizerConfig config_;
  IngestReport report_;
  std::uint64_t line_no_ = 0;
};

// Streams every document of every file in order, numbering lines across
// files. Throws std::runtime_error if a file cannot be opened.
IngestReport ForEachDocument(const std::vector<std::string> &paths,
                             const TokenizerConfig &config,
                             const std::function<void(const Document &)> &fn);

class FrequencyTable {
 public:
  using Map = std::unordered_map<std::string, std::uint64_t>;

  void Add(const std::string &word, std::uint64_t n = 1);
  void AddTokens(const std::vector<std::string> &tokens);
  // Associative and commutative.
  void Merge(const FrequencyTable &other);

  std::uint64_t Count(const std::string &word) const;
  bool Contains(const std::string &word) const { return counts_.count(word); }
  std::uint64_t total_running_words() const { return total_; }
  std::size_t size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }
  const Map &counts() const { return counts_; }

  // All entries ordered by (count desc, word asc).
  std::vector<std::pair<std::string, std::uint64_t>> Ranked() const;

  bool operator==(const FrequencyTable &o) const {
    return total_ == o.total_ && counts_ == o.counts_;
  }

 private:
  Map counts_;
  std::uint64_t total_ = 0;
};

FrequencyTable BuildFrequencyTable(std::span<const Document> docs);

// Same result as BuildFrequencyTable, counting `shards` contiguous
// document ranges on separate threads and merging.
FrequencyTable BuildFrequencyTableSharded(std::span<const Document> docs,
                                          unsigned shards);

// Ordered word list, rank 1 = most frequent. Immutable once built.
class Lexicon {
 public:
  Lexicon() = default;
  // Throws std::invalid_argument on duplicate or empty words.
  explicit Lexicon(std::vector<std::string> words,
                   std::vector<std::uint64_t> counts = {});

  bool Contains(const std::string &word) const {
    return index_.count(word) > 0;
  }
  // 1-based rank, or nullopt when absent.
  std::optional<std::size_t> Rank(const std::string &word) const;

  const std::vector<std::string> &words() const { return words_; }
  // Either empty or parallel to words().
  const std::vector<std::uint64_t> &counts() const { return counts_; }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }

  bool operator==(const Lexicon &o) const { return words_ == o.words_; }

 private:
  std::vector<std::string> words_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Top min(n, |table|) words by (count desc, word asc). n must be >= 1.
Lexicon BuildLexicon(const FrequencyTable &table, std::size_t n);

// "word" or "word<TAB>count" per line.
void WriteLexicon(std::ostream &out, const Lexicon &lexicon);
Lexicon ReadLexicon(std::istream &in, const std::string &source = "lexicon");
Lexicon ReadLexiconFile(const std::string &path);

struct OovRate {
  std::uint64_t oov_count = 0;
  std::uint64_t running_words = 0;

  // 100 * oov / running, 0 for an empty text.
  double percentage() const;
  // Two decimals, half up.
  std::string percent_string() const;
};

OovRate ComputeOovRate(std::span<const std::string> tokens,
                       const Lexicon &lexicon);

struct OovCurvePoint {
  std::size_t size = 0;
  OovRate rate;
};

// OOV rate of `tokens` against BuildLexicon(table, k) for every k in
// `sizes`. Throws std::invalid_argument on a zero size or sizes that are
// not strictly increasing.
std::vector<OovCurvePoint> ComputeOovCurve(std::span<const std::string> tokens,
                                           const FrequencyTable &table,
                                           std::span<const std::size_t> sizes);

// CSV with header "size,oov_percent".
void WriteOovCurveCsv(std::ostream &out,
                      std::span<const OovCurvePoint> curve);

}  // namespace seedsel

#endif  // SEEDSEL_CORPUS_H_
