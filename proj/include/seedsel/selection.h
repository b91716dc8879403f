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
// Adaptation-text selection: keep the corpus documents that contain a
// seed word missing from the base lexicon.

#ifndef SEEDSEL_SELECTION_H_
#define SEEDSEL_SELECTION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "seedsel/corpus.h"
#include "seedsel/seeds.h"

namespace seedsel {

struct SelectionConfig {
  // Tokens kept on each side of a seed occurrence; nullopt keeps whole
  // documents.
  std::optional<std::size_t> context_window;
};

struct SelectionReport {
  std::uint64_t documents_scanned = 0;
  std::uint64_t documents_selected = 0;
  std::size_t triggering_seeds = 0;
  // Number of selected documents each triggering seed occurs in.
  std::map<std::string, std::uint64_t> seed_hits;
  std::vector<std::string> warnings;

  // Additive, for shard-wise scans.
  void Merge(const SelectionReport &other);
  std::string ToJson() const;
};

// A token span [begin, end) of a document.
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const TokenSpan &) const = default;
};

class DocumentSelector {
 public:
  // Triggers are the seeds absent from the base lexicon, fixed here.
  DocumentSelector(const SeedSet &seeds, const Lexicon &base_lexicon);

  const std::unordered_set<std::string> &triggers() const { return triggers_; }
  bool IsTrigger(const std::string &token) const {
    return triggers_.count(token) > 0;
  }

  // True if `doc` contains a trigger; updates `report` when given.
  bool Matches(const Document &doc, SelectionReport *report = nullptr) const;

  // Maximal unions of [hit - window, hit + window] over trigger hits,
  // in token order and pairwise disjoint.
  std::vector<TokenSpan> ContextSpans(std::span<const std::string> tokens,
                                      std::size_t window) const;

  // A report carrying only the trigger count and the empty-seed warning.
  SelectionReport NewReport() const;

 private:
  std::unordered_set<std::string> triggers_;
  bool empty_seeds_;
};

// Selected documents in corpus order.
std::vector<Document> SelectDocuments(std::span<const Document> corpus,
                                      const SeedSet &seeds,
                                      const Lexicon &base_lexicon,
                                      SelectionReport *report = nullptr);

std::vector<std::vector<std::string>> ExtractContextSnippets(
    const Document &document, const SeedSet &seeds,
    const Lexicon &base_lexicon, std::size_t window);

}  // namespace seedsel

#endif  // SEEDSEL_SELECTION_H_
