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

#include "seedsel/ngram.h"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "seedsel/common.h"

namespace seedsel {

std::size_t NGramKeyHash::operator()(const NGramKey &key) const noexcept {
  // FNV-1a over the ids.
  std::uint64_t h = 1469598103934665603ull;
  for (WordId id : key) {
    h ^= id;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

Vocab::Vocab() {
  Add(kBos);
  Add(kEos);
  Add(kUnk);
}

WordId Vocab::Add(const std::string &word) {
  auto [it, inserted] =
      index_.emplace(word, static_cast<WordId>(words_.size()));
  if (inserted) words_.push_back(word);
  return it->second;
}

std::optional<WordId> Vocab::Find(const std::string &word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

WordId Vocab::IdOrUnk(const std::string &word) const {
  auto it = index_.find(word);
  return it == index_.end() ? kUnkId : it->second;
}

NGramCounts::NGramCounts(int order, Vocab vocab)
    : order_(order), vocab_(std::move(vocab)) {
  if (order < 1) throw std::invalid_argument("n-gram order must be >= 1");
  tables_.resize(order);
}

void NGramCounts::Add(const NGramKey &ngram, double count) {
  if (ngram.empty() || static_cast<int>(ngram.size()) > order_) {
    throw std::invalid_argument("n-gram length outside 1..order");
  }
  tables_[ngram.size() - 1][ngram] += count;
}

double NGramCounts::Count(const NGramKey &ngram) const {
  if (ngram.empty() || static_cast<int>(ngram.size()) > order_) return 0;
  const auto &t = tables_[ngram.size() - 1];
  auto it = t.find(ngram);
  return it == t.end() ? 0 : it->second;
}

bool NGramCounts::empty() const {
  return tables_.empty() || tables_[0].empty();
}

void NGramCounts::Merge(const NGramCounts &other) {
  if (order_ != other.order_ || vocab_.words() != other.vocab_.words()) {
    throw std::invalid_argument("merging counts over different vocabularies");
  }
  for (int n = 1; n <= order_; ++n) {
    for (const auto &[k, c] : other.Table(n)) tables_[n - 1][k] += c;
  }
}

bool NGramCounts::SameCounts(const NGramCounts &other) const {
  if (order_ != other.order_) return false;
  for (int n = 1; n <= order_; ++n) {
    if (Table(n).size() != other.Table(n).size()) return false;
    for (const auto &[k, c] : Table(n)) {
      NGramKey mapped;
      for (WordId id : k) {
        auto o = other.vocab_.Find(vocab_.Word(id));
        if (!o) return false;
        mapped.push_back(*o);
      }
      if (other.Count(mapped) != c) return false;
    }
  }
  return true;
}

namespace {

std::string KeyString(const NGramKey &key, const Vocab &vocab) {
  std::string s;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i > 0) s.push_back(' ');
    s += vocab.Word(key[i]);
  }
  return s;
}

std::string CountString(double c) {
  if (c == std::floor(c) && std::fabs(c) < 9.0e15) {
    return fmt::format("{}", static_cast<long long>(c));
  }
  return fmt::format("{:.17g}", c);
}

}  // namespace

void WriteCounts(std::ostream &out, const NGramCounts &counts) {
  for (int n = 1; n <= counts.order(); ++n) {
    for (const auto *kv : SortedByWords(counts.Table(n), counts.vocab())) {
      out << CountString(kv->second) << '\t'
          << KeyString(kv->first, counts.vocab()) << '\n';
    }
  }
}

NGramCounts ReadCounts(std::istream &in, const std::string &source) {
  struct Row {
    double count;
    std::vector<std::string> words;
  };
  std::vector<Row> rows;
  int order = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw FormatError(source, line_no, "expected count<TAB>n-gram");
    }
    Row row;
    std::string field = line.substr(0, tab);
    std::size_t used = 0;
    try {
      row.count = std::stod(field, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used == 0 || used != field.size() || !(row.count > 0)) {
      throw FormatError(source, line_no, "bad count '" + field + "'");
    }
    std::istringstream words(line.substr(tab + 1));
    std::string w;
    while (words >> w) row.words.push_back(w);
    if (row.words.empty()) throw FormatError(source, line_no, "empty n-gram");
    order = std::max(order, static_cast<int>(row.words.size()));
    rows.push_back(std::move(row));
  }
  if (order == 0) throw FormatError(source, 0, "no counts");
  NGramCounts counts(order, Vocab());
  for (const auto &row : rows) {
    NGramKey key;
    for (const auto &w : row.words) key.push_back(counts.mutable_vocab().Add(w));
    counts.Add(key, row.count);
  }
  return counts;
}

NGramModel::NGramModel(int order, Vocab vocab)
    : order_(order), vocab_(std::move(vocab)) {
  if (order < 1) throw std::invalid_argument("n-gram order must be >= 1");
  tables_.resize(order);
}

const NGramEntry *NGramModel::Find(std::span<const WordId> ngram) const {
  if (ngram.empty() || static_cast<int>(ngram.size()) > order_) return nullptr;
  const auto &t = tables_[ngram.size() - 1];
  auto it = t.find(NGramKey(ngram.begin(), ngram.end()));
  return it == t.end() ? nullptr : &it->second;
}

double NGramModel::Log10Prob(std::span<const WordId> history,
                             WordId word) const {
  std::size_t keep =
      std::min(history.size(), static_cast<std::size_t>(order_ - 1));
  auto h = history.subspan(history.size() - keep);
  double backoff = 0;
  NGramKey key;
  for (std::size_t start = 0; start <= h.size(); ++start) {
    key.assign(h.begin() + start, h.end());
    key.push_back(word);
    const auto &table = tables_[key.size() - 1];
    auto it = table.find(key);
    if (it != table.end()) return backoff + it->second.log10_prob;
    if (start < h.size()) {
      key.pop_back();
      const auto &ht = tables_[key.size() - 1];
      auto hit = ht.find(key);
      if (hit != ht.end()) backoff += hit->second.log10_backoff;
    }
  }
  throw std::out_of_range("no unigram entry for '" + vocab_.Word(word) + "'");
}

std::vector<WordId> NGramModel::PredictableWords() const {
  std::vector<WordId> words;
  for (WordId id = 0; id < vocab_.size(); ++id) {
    if (id != Vocab::kBosId && tables_[0].count(NGramKey{id})) {
      words.push_back(id);
    }
  }
  return words;
}

bool NGramModel::HasCounts() const {
  for (int n = 2; n <= order_; ++n) {
    for (const auto &[k, e] : tables_[n - 1]) {
      if (!e.count) return false;
    }
  }
  return true;
}

}  // namespace seedsel
