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

#include "seedsel/selection.h"

#include <algorithm>

#include "json.hpp"

namespace seedsel {

void SelectionReport::Merge(const SelectionReport &other) {
  documents_scanned += other.documents_scanned;
  documents_selected += other.documents_selected;
  triggering_seeds = std::max(triggering_seeds, other.triggering_seeds);
  for (const auto &[w, c] : other.seed_hits) seed_hits[w] += c;
  for (const auto &w : other.warnings) {
    if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) {
      warnings.push_back(w);
    }
  }
}

std::string SelectionReport::ToJson() const {
  nlohmann::ordered_json j;
  j["documents_scanned"] = documents_scanned;
  j["documents_selected"] = documents_selected;
  j["triggering_seeds"] = triggering_seeds;
  j["seed_hits"] = nlohmann::ordered_json::object();
  for (const auto &[w, c] : seed_hits) j["seed_hits"][w] = c;
  j["warnings"] = warnings;
  return j.dump(2) + "\n";
}

DocumentSelector::DocumentSelector(const SeedSet &seeds,
                                   const Lexicon &base_lexicon)
    : empty_seeds_(seeds.empty()) {
  for (const auto &e : seeds.entries()) {
    if (!base_lexicon.Contains(e.word)) triggers_.insert(e.word);
  }
}

SelectionReport DocumentSelector::NewReport() const {
  SelectionReport report;
  report.triggering_seeds = triggers_.size();
  if (empty_seeds_) {
    report.warnings.push_back("empty seed set: nothing can be selected");
  } else if (triggers_.empty()) {
    report.warnings.push_back(
        "every seed is in the base lexicon: nothing can be selected");
  }
  return report;
}

bool DocumentSelector::Matches(const Document &doc,
                               SelectionReport *report) const {
  if (report) ++report->documents_scanned;
  if (triggers_.empty()) return false;
  bool selected = false;
  std::unordered_set<std::string_view> seen;
  for (const auto &t : doc.tokens) {
    if (!IsTrigger(t)) continue;
    selected = true;
    if (!report) break;
    if (seen.insert(t).second) ++report->seed_hits[t];
  }
  if (selected && report) ++report->documents_selected;
  return selected;
}

std::vector<TokenSpan> DocumentSelector::ContextSpans(
    std::span<const std::string> tokens, std::size_t window) const {
  std::vector<TokenSpan> spans;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!IsTrigger(tokens[i])) continue;
    std::size_t begin = i >= window ? i - window : 0;
    std::size_t end = std::min(tokens.size(), i + std::min(window, tokens.size()) + 1);
    if (!spans.empty() && begin <= spans.back().end) {
      spans.back().end = std::max(spans.back().end, end);
    } else {
      spans.push_back({begin, end});
    }
  }
  return spans;
}

std::vector<Document> SelectDocuments(std::span<const Document> corpus,
                                      const SeedSet &seeds,
                                      const Lexicon &base_lexicon,
                                      SelectionReport *report) {
  DocumentSelector selector(seeds, base_lexicon);
  SelectionReport local = selector.NewReport();
  std::vector<Document> out;
  for (const auto &doc : corpus) {
    if (selector.Matches(doc, &local)) out.push_back(doc);
  }
  if (report) *report = std::move(local);
  return out;
}

std::vector<std::vector<std::string>> ExtractContextSnippets(
    const Document &document, const SeedSet &seeds,
    const Lexicon &base_lexicon, std::size_t window) {
  DocumentSelector selector(seeds, base_lexicon);
  std::vector<std::vector<std::string>> snippets;
  for (const auto &span : selector.ContextSpans(document.tokens, window)) {
    snippets.emplace_back(document.tokens.begin() + span.begin,
                          document.tokens.begin() + span.end);
  }
  return snippets;
}

}  // namespace seedsel
