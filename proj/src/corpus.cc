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

#include "seedsel/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "seedsel/common.h"

namespace seedsel {

CorpusReader::CorpusReader(std::istream &in, TokenizerConfig config)
    : in_(in), config_(config) {}

bool CorpusReader::Next(Document *doc) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    ++report_.lines_read;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!IsValidUtf8(line)) {
      ++report_.lines_skipped_invalid_utf8;
      continue;
    }
    doc->id = line_no_;
    doc->tokens = Tokenize(line, config_);
    doc->text = std::move(line);
    return true;
  }
  return false;
}

IngestReport ForEachDocument(const std::vector<std::string> &paths,
                             const TokenizerConfig &config,
                             const std::function<void(const Document &)> &fn) {
  IngestReport total;
  std::uint64_t offset = 0;
  for (const auto &path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open corpus file " + path);
    CorpusReader reader(in, config);
    Document doc;
    while (reader.Next(&doc)) {
      doc.id += offset;
      fn(doc);
    }
    offset += reader.report().lines_read;
    total.lines_read += reader.report().lines_read;
    total.lines_skipped_invalid_utf8 +=
        reader.report().lines_skipped_invalid_utf8;
  }
  return total;
}

void FrequencyTable::Add(const std::string &word, std::uint64_t n) {
  if (n == 0) return;
  counts_[word] += n;
  total_ += n;
}

void FrequencyTable::AddTokens(const std::vector<std::string> &tokens) {
  for (const auto &t : tokens) Add(t);
}

void FrequencyTable::Merge(const FrequencyTable &other) {
  for (const auto &[w, c] : other.counts_) counts_[w] += c;
  total_ += other.total_;
}

std::uint64_t FrequencyTable::Count(const std::string &word) const {
  auto it = counts_.find(word);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, std::uint64_t>> FrequencyTable::Ranked()
    const {
  std::vector<std::pair<std::string, std::uint64_t>> ranked(counts_.begin(),
                                                            counts_.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto &a, const auto &b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return ranked;
}

FrequencyTable BuildFrequencyTable(std::span<const Document> docs) {
  FrequencyTable table;
  for (const auto &doc : docs) table.AddTokens(doc.tokens);
  return table;
}

FrequencyTable BuildFrequencyTableSharded(std::span<const Document> docs,
                                          unsigned shards) {
  shards = std::max(1u, shards);
  std::vector<FrequencyTable> partial(shards);
  {
    std::vector<std::jthread> workers;
    std::size_t per = (docs.size() + shards - 1) / shards;
    for (unsigned s = 0; s < shards; ++s) {
      std::size_t begin = std::min(docs.size(), s * per);
      std::size_t end = std::min(docs.size(), begin + per);
      workers.emplace_back([&partial, s, sub = docs.subspan(begin, end - begin)] {
        partial[s] = BuildFrequencyTable(sub);
      });
    }
  }
  FrequencyTable table;
  for (const auto &p : partial) table.Merge(p);
  return table;
}

Lexicon::Lexicon(std::vector<std::string> words,
                 std::vector<std::uint64_t> counts)
    : words_(std::move(words)), counts_(std::move(counts)) {
  if (!counts_.empty() && counts_.size() != words_.size()) {
    throw std::invalid_argument("lexicon counts do not match words");
  }
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i].empty()) throw std::invalid_argument("empty lexicon word");
    if (!index_.emplace(words_[i], i + 1).second) {
      throw std::invalid_argument("duplicate lexicon word: " + words_[i]);
    }
  }
}

std::optional<std::size_t> Lexicon::Rank(const std::string &word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Lexicon BuildLexicon(const FrequencyTable &table, std::size_t n) {
  if (n == 0) throw std::invalid_argument("lexicon size must be >= 1");
  auto ranked = table.Ranked();
  if (ranked.size() > n) ranked.resize(n);
  std::vector<std::string> words;
  std::vector<std::uint64_t> counts;
  words.reserve(ranked.size());
  counts.reserve(ranked.size());
  for (auto &[w, c] : ranked) {
    words.push_back(std::move(w));
    counts.push_back(c);
  }
  return Lexicon(std::move(words), std::move(counts));
}

void WriteLexicon(std::ostream &out, const Lexicon &lexicon) {
  const auto &words = lexicon.words();
  const auto &counts = lexicon.counts();
  for (std::size_t i = 0; i < words.size(); ++i) {
    out << words[i];
    if (!counts.empty()) out << '\t' << counts[i];
    out << '\n';
  }
}

Lexicon ReadLexicon(std::istream &in, const std::string &source) {
  std::vector<std::string> words;
  std::vector<std::uint64_t> counts;
  bool with_counts = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    std::string word = line.substr(0, tab);
    if (word.empty() || word.find(' ') != std::string::npos) {
      throw FormatError(source, line_no, "bad lexicon word");
    }
    bool has_count = tab != std::string::npos;
    if (words.empty()) with_counts = has_count;
    if (has_count != with_counts) {
      throw FormatError(source, line_no, "inconsistent count column");
    }
    if (has_count) {
      std::string field = line.substr(tab + 1);
      std::size_t used = 0;
      unsigned long long c = 0;
      try {
        c = std::stoull(field, &used);
      } catch (const std::exception &) {
        used = 0;
      }
      if (used == 0 || used != field.size()) {
        throw FormatError(source, line_no, "non-numeric count '" + field + "'");
      }
      counts.push_back(c);
    }
    words.push_back(std::move(word));
  }
  try {
    return Lexicon(std::move(words), std::move(counts));
  } catch (const std::invalid_argument &e) {
    throw FormatError(source, 0, e.what());
  }
}

Lexicon ReadLexiconFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lexicon " + path);
  return ReadLexicon(in, path);
}

double OovRate::percentage() const {
  if (running_words == 0) return 0.0;
  return 100.0 * static_cast<double>(oov_count) /
         static_cast<double>(running_words);
}

std::string OovRate::percent_string() const {
  return FormatFixed2(oov_count, running_words, 100);
}

OovRate ComputeOovRate(std::span<const std::string> tokens,
                       const Lexicon &lexicon) {
  OovRate rate;
  rate.running_words = tokens.size();
  for (const auto &t : tokens) {
    if (!lexicon.Contains(t)) ++rate.oov_count;
  }
  return rate;
}

std::vector<OovCurvePoint> ComputeOovCurve(std::span<const std::string> tokens,
                                           const FrequencyTable &table,
                                           std::span<const std::size_t> sizes) {
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0) throw std::invalid_argument("lexicon size 0 in curve");
    if (i > 0 && sizes[i] <= sizes[i - 1]) {
      throw std::invalid_argument("curve sizes must be strictly increasing");
    }
  }
  // One ranking serves every size: a token is in the top-k lexicon iff
  // its rank is <= k.
  auto ranked = table.Ranked();
  std::unordered_map<std::string, std::size_t> rank;
  rank.reserve(ranked.size());
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    rank.emplace(ranked[i].first, i + 1);
  }
  std::vector<std::size_t> token_ranks;
  token_ranks.reserve(tokens.size());
  for (const auto &t : tokens) {
    auto it = rank.find(t);
    token_ranks.push_back(it == rank.end()
                              ? std::numeric_limits<std::size_t>::max()
                              : it->second);
  }
  std::sort(token_ranks.begin(), token_ranks.end());

  std::vector<OovCurvePoint> curve;
  curve.reserve(sizes.size());
  for (std::size_t k : sizes) {
    auto known = std::upper_bound(token_ranks.begin(), token_ranks.end(), k) -
                 token_ranks.begin();
    OovCurvePoint p;
    p.size = k;
    p.rate.running_words = tokens.size();
    p.rate.oov_count = tokens.size() - static_cast<std::size_t>(known);
    curve.push_back(p);
  }
  return curve;
}

void WriteOovCurveCsv(std::ostream &out,
                      std::span<const OovCurvePoint> curve) {
  out << "size,oov_percent\n";
  for (const auto &p : curve) {
    out << p.size << ',' << p.rate.percent_string() << '\n';
  }
}

}  // namespace seedsel
