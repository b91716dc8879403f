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
// Seed words: extraction from a glossary against the base lexicon, and
// enlargement by shared prefixes (shallow morphology) or by embedding
// neighbourhoods.

#ifndef SEEDSEL_SEEDS_H_
#define SEEDSEL_SEEDS_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "seedsel/corpus.h"
#include "seedsel/embeddings.h"

namespace seedsel {

enum class SeedOrigin { kGlossary, kMorphological, kSemantic };

struct Provenance {
  SeedOrigin origin = SeedOrigin::kGlossary;
  int iteration = 0;  // semantic only, 1-based

  // "glossary", "morphological" or "semantic:<k>".
  std::string Tag() const;
  // Throws std::invalid_argument on an unknown tag.
  static Provenance Parse(const std::string &tag);

  bool operator==(const Provenance &) const = default;
};

struct MorphConfig {
  std::size_t n_m = 0;           // similar words kept per seed
  std::size_t l_m = 5;           // minimal stem length, in characters
  std::size_t suffix_strip = 3;  // characters removed to form the stem
};

struct SemanticConfig {
  std::size_t n_w = 40;  // neighbours kept per query word
  std::size_t i_w = 1;   // iterations
};

// Insertion-ordered set of seed words; the first provenance recorded
// for a word is kept.
class SeedSet {
 public:
  struct Entry {
    std::string word;
    Provenance provenance;
  };

  // Returns false (and changes nothing) if the word is already present.
  // Throws std::invalid_argument on an empty word.
  bool Add(const std::string &word, Provenance provenance);

  bool Contains(const std::string &word) const { return index_.count(word); }
  std::optional<Provenance> Of(const std::string &word) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry> &entries() const { return entries_; }
  std::vector<std::string> Words() const;

  // Parameters of the expansions that produced this set, if any.
  std::optional<MorphConfig> morph;
  std::optional<SemanticConfig> semantic;

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Same words, independent of order and provenance.
bool SameWords(const SeedSet &a, const SeedSet &b);
// Every word of `a` is in `b`.
bool IsSubset(const SeedSet &a, const SeedSet &b);

// Source-language tokens of a glossary: one term per line, anything after
// the first tab (a translation) is ignored.
std::vector<std::string> ReadGlossaryTokens(std::istream &in,
                                            const TokenizerConfig &config);
std::vector<std::string> ReadGlossaryFile(const std::string &path,
                                          const TokenizerConfig &config);

// Distinct glossary tokens missing from the base lexicon, in first-seen
// order, tagged glossary.
SeedSet ExtractSeeds(std::span<const std::string> glossary_tokens,
                     const Lexicon &base_lexicon);

// Each seed of at least l_m characters becomes the prefix of its first
// max(l_m, len - suffix_strip) characters; the n_m most frequent other
// dictionary words with that prefix are added as morphological.
SeedSet ExpandMorphological(const SeedSet &seeds,
                            const FrequencyTable &dictionary,
                            const MorphConfig &config);

struct SemanticReport {
  std::vector<std::string> missing;  // query words absent from the table
  std::vector<std::size_t> added_per_iteration;
};

// Iterated neighbour expansion: iteration k queries every word added at
// iteration k-1 (the input seeds for k = 1) and adds its n_w neighbours
// not seen so far, tagged semantic:k.
SeedSet ExpandSemantic(const SeedSet &seeds, const EmbeddingTable &table,
                       const SemanticConfig &config,
                       SemanticReport *report = nullptr,
                       unsigned threads = 1);

// "word<TAB>tag" per line, preceded by "#" parameter comments.
void WriteSeedSet(std::ostream &out, const SeedSet &seeds);
SeedSet ReadSeedSet(std::istream &in, const std::string &source = "seeds");
SeedSet ReadSeedSetFile(const std::string &path);

}  // namespace seedsel

#endif  // SEEDSEL_SEEDS_H_
