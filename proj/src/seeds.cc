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

#include "seedsel/seeds.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "seedsel/common.h"
#include "seedsel/text.h"

namespace seedsel {

std::string Provenance::Tag() const {
  switch (origin) {
    case SeedOrigin::kGlossary:
      return "glossary";
    case SeedOrigin::kMorphological:
      return "morphological";
    case SeedOrigin::kSemantic:
      return "semantic:" + std::to_string(iteration);
  }
  return "glossary";
}

Provenance Provenance::Parse(const std::string &tag) {
  if (tag == "glossary") return {SeedOrigin::kGlossary, 0};
  if (tag == "morphological") return {SeedOrigin::kMorphological, 0};
  const std::string prefix = "semantic:";
  if (tag.rfind(prefix, 0) == 0) {
    std::string num = tag.substr(prefix.size());
    if (!num.empty() && std::all_of(num.begin(), num.end(), ::isdigit)) {
      int k = std::stoi(num);
      if (k >= 1) return {SeedOrigin::kSemantic, k};
    }
  }
  throw std::invalid_argument("unknown provenance tag '" + tag + "'");
}

bool SeedSet::Add(const std::string &word, Provenance provenance) {
  if (word.empty()) throw std::invalid_argument("empty seed word");
  if (!index_.emplace(word, entries_.size()).second) return false;
  entries_.push_back({word, provenance});
  return true;
}

std::optional<Provenance> SeedSet::Of(const std::string &word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return entries_[it->second].provenance;
}

std::vector<std::string> SeedSet::Words() const {
  std::vector<std::string> words;
  words.reserve(entries_.size());
  for (const auto &e : entries_) words.push_back(e.word);
  return words;
}

bool IsSubset(const SeedSet &a, const SeedSet &b) {
  return std::all_of(a.entries().begin(), a.entries().end(),
                     [&b](const auto &e) { return b.Contains(e.word); });
}

bool SameWords(const SeedSet &a, const SeedSet &b) {
  return a.size() == b.size() && IsSubset(a, b);
}

std::vector<std::string> ReadGlossaryTokens(std::istream &in,
                                            const TokenizerConfig &config) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('\t'));
    if (!IsValidUtf8(line)) continue;
    for (auto &t : Tokenize(line, config)) tokens.push_back(std::move(t));
  }
  return tokens;
}

std::vector<std::string> ReadGlossaryFile(const std::string &path,
                                          const TokenizerConfig &config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open glossary " + path);
  return ReadGlossaryTokens(in, config);
}

SeedSet ExtractSeeds(std::span<const std::string> glossary_tokens,
                     const Lexicon &base_lexicon) {
  SeedSet seeds;
  for (const auto &t : glossary_tokens) {
    if (!t.empty() && !base_lexicon.Contains(t)) {
      seeds.Add(t, {SeedOrigin::kGlossary, 0});
    }
  }
  return seeds;
}

SeedSet ExpandMorphological(const SeedSet &seeds,
                            const FrequencyTable &dictionary,
                            const MorphConfig &config) {
  SeedSet out = seeds;
  out.morph = config;
  if (config.n_m == 0 || config.l_m == 0) return out;

  std::vector<std::string> sorted;
  sorted.reserve(dictionary.size());
  for (const auto &[w, c] : dictionary.counts()) sorted.push_back(w);
  std::sort(sorted.begin(), sorted.end());

  for (const auto &entry : seeds.entries()) {
    const std::string &seed = entry.word;
    std::size_t len = Utf8Length(seed);
    if (len < config.l_m) continue;
    std::size_t keep = len > config.suffix_strip ? len - config.suffix_strip : 0;
    keep = std::max(config.l_m, keep);
    std::string stem = seed.substr(0, Utf8PrefixBytes(seed, keep));

    std::vector<std::pair<std::uint64_t, const std::string *>> candidates;
    for (auto it = std::lower_bound(sorted.begin(), sorted.end(), stem);
         it != sorted.end() && it->compare(0, stem.size(), stem) == 0; ++it) {
      if (*it != seed) candidates.emplace_back(dictionary.Count(*it), &*it);
    }
    std::size_t top = std::min(config.n_m, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + top,
                      candidates.end(), [](const auto &a, const auto &b) {
                        if (a.first != b.first) return a.first > b.first;
                        return *a.second < *b.second;
                      });
    for (std::size_t i = 0; i < top; ++i) {
      out.Add(*candidates[i].second, {SeedOrigin::kMorphological, 0});
    }
  }
  return out;
}

SeedSet ExpandSemantic(const SeedSet &seeds, const EmbeddingTable &table,
                       const SemanticConfig &config, SemanticReport *report,
                       unsigned threads) {
  SeedSet out = seeds;
  out.semantic = config;
  SemanticReport local;
  std::vector<std::string> frontier = seeds.Words();
  for (const auto &w : frontier) {
    if (!table.Contains(w)) local.missing.push_back(w);
  }
  if (config.n_w > 0 && !table.empty()) {
    for (std::size_t k = 1; k <= config.i_w && !frontier.empty(); ++k) {
      auto neighbors =
          NearestNeighborsBatch(frontier, table, config.n_w, threads);
      std::vector<std::string> next;
      for (const auto &list : neighbors) {
        if (!list) continue;
        for (const auto &n : *list) {
          if (out.Add(n.word, {SeedOrigin::kSemantic, static_cast<int>(k)})) {
            next.push_back(n.word);
          }
        }
      }
      local.added_per_iteration.push_back(next.size());
      frontier = std::move(next);
    }
  }
  if (report) *report = std::move(local);
  return out;
}

void WriteSeedSet(std::ostream &out, const SeedSet &seeds) {
  if (seeds.morph) {
    out << "# morph n_m=" << seeds.morph->n_m << " l_m=" << seeds.morph->l_m
        << " suffix_strip=" << seeds.morph->suffix_strip << '\n';
  }
  if (seeds.semantic) {
    out << "# semantic n_w=" << seeds.semantic->n_w
        << " i_w=" << seeds.semantic->i_w << '\n';
  }
  for (const auto &e : seeds.entries()) {
    out << e.word << '\t' << e.provenance.Tag() << '\n';
  }
}

namespace {

std::map<std::string, std::size_t> ParseParams(std::istringstream &fields,
                                               const std::string &source,
                                               std::size_t line_no) {
  std::map<std::string, std::size_t> params;
  std::string kv;
  while (fields >> kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw FormatError(source, line_no, "bad parameter '" + kv + "'");
    }
    try {
      params[kv.substr(0, eq)] = std::stoul(kv.substr(eq + 1));
    } catch (const std::exception &) {
      throw FormatError(source, line_no, "bad parameter '" + kv + "'");
    }
  }
  return params;
}

}  // namespace

SeedSet ReadSeedSet(std::istream &in, const std::string &source) {
  SeedSet seeds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream fields(line.substr(1));
      std::string kind;
      fields >> kind;
      auto p = ParseParams(fields, source, line_no);
      if (kind == "morph") {
        seeds.morph = MorphConfig{p["n_m"], p.count("l_m") ? p["l_m"] : 5,
                                  p.count("suffix_strip") ? p["suffix_strip"]
                                                          : 3};
      } else if (kind == "semantic") {
        seeds.semantic =
            SemanticConfig{p["n_w"], p.count("i_w") ? p["i_w"] : 1};
      }
      continue;
    }
    auto tab = line.find('\t');
    std::string word = line.substr(0, tab);
    Provenance prov;
    if (tab != std::string::npos) {
      try {
        prov = Provenance::Parse(line.substr(tab + 1));
      } catch (const std::invalid_argument &e) {
        throw FormatError(source, line_no, e.what());
      }
    }
    if (word.empty()) throw FormatError(source, line_no, "empty seed word");
    seeds.Add(word, prov);
  }
  return seeds;
}

SeedSet ReadSeedSetFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open seed file " + path);
  return ReadSeedSet(in, path);
}

}  // namespace seedsel
