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

#include "seedsel/embeddings.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <queue>
#include <stdexcept>
#include <thread>

#include "seedsel/common.h"

namespace seedsel {
namespace {

double Dot(std::span<const float> u, std::span<const float> v) {
  double s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    s += static_cast<double>(u[i]) * static_cast<double>(v[i]);
  }
  return s;
}

// Strict "ranks ahead of": higher similarity, then smaller word. As a
// priority_queue comparator this keeps the weakest candidate on top.
struct RanksAhead {
  bool operator()(const std::pair<double, std::size_t> &a,
                  const std::pair<double, std::size_t> &b,
                  const EmbeddingTable &t) const {
    if (a.first != b.first) return a.first > b.first;
    return t.Word(a.second) < t.Word(b.second);
  }
};

std::vector<std::string_view> SplitWs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t b = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (b < i) out.push_back(line.substr(b, i - b));
  }
  return out;
}

template <typename T>
bool ParseNumber(std::string_view s, T *out) {
  auto r = std::from_chars(s.data(), s.data() + s.size(), *out);
  return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::size_t dimension) : dimension_(dimension) {}

bool EmbeddingTable::Set(const std::string &word,
                         std::span<const float> vector) {
  if (vector.size() != dimension_) {
    throw std::invalid_argument("embedding dimension mismatch for " + word);
  }
  double norm = std::sqrt(Dot(vector, vector));
  auto it = index_.find(word);
  if (it != index_.end()) {
    std::copy(vector.begin(), vector.end(),
              data_.begin() + it->second * dimension_);
    norms_[it->second] = norm;
    return true;
  }
  index_.emplace(word, words_.size());
  words_.push_back(word);
  data_.insert(data_.end(), vector.begin(), vector.end());
  norms_.push_back(norm);
  return false;
}

std::optional<std::size_t> EmbeddingTable::Find(const std::string &word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EmbeddingTable LoadEmbeddings(std::istream &in, const std::string &source,
                              EmbeddingLoadReport *report) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw FormatError(source, 1, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = SplitWs(line);
  std::size_t vocab = 0;
  std::size_t dim = 0;
  if (header.size() != 2 || !ParseNumber(header[0], &vocab) ||
      !ParseNumber(header[1], &dim) || dim == 0) {
    throw FormatError(source, 1, "malformed header, expected \"V D\"");
  }
  EmbeddingLoadReport local;
  local.declared_words = vocab;
  EmbeddingTable table(dim);
  std::vector<float> vec(dim);
  for (std::size_t i = 0; i < vocab; ++i) {
    ++line_no;
    if (!std::getline(in, line)) {
      throw FormatError(source, line_no,
                        "expected " + std::to_string(vocab) + " vectors");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = SplitWs(line);
    if (fields.size() != dim + 1) {
      throw FormatError(source, line_no,
                        "vector has " +
                            std::to_string(fields.empty() ? 0
                                                          : fields.size() - 1) +
                            " components, expected " + std::to_string(dim));
    }
    for (std::size_t d = 0; d < dim; ++d) {
      if (!ParseNumber(fields[d + 1], &vec[d]) || !std::isfinite(vec[d])) {
        throw FormatError(source, line_no,
                          "non-numeric component '" +
                              std::string(fields[d + 1]) + "'");
      }
    }
    if (table.Set(std::string(fields[0]), vec)) ++local.duplicates;
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!SplitWs(line).empty()) {
      throw FormatError(source, line_no, "more vectors than declared");
    }
  }
  if (report) *report = local;
  return table;
}

EmbeddingTable LoadEmbeddingsFile(const std::string &path,
                                  EmbeddingLoadReport *report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open embeddings " + path);
  return LoadEmbeddings(in, path, report);
}

double CosineSimilarity(std::span<const float> u, std::span<const float> v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("cosine similarity: dimension mismatch");
  }
  double nu = std::sqrt(Dot(u, u));
  double nv = std::sqrt(Dot(v, v));
  if (nu == 0 || nv == 0) {
    throw std::invalid_argument("cosine similarity: zero vector");
  }
  return std::clamp(Dot(u, v) / (nu * nv), -1.0, 1.0);
}

std::vector<Neighbor> NearestNeighbors(const std::string &word,
                                       const EmbeddingTable &table,
                                       std::size_t n) {
  if (table.empty()) {
    throw std::invalid_argument("neighbour query on an empty table");
  }
  auto query = table.Find(word);
  if (!query) throw std::invalid_argument("word not in embeddings: " + word);
  std::vector<Neighbor> result;
  if (n == 0) return result;
  const double qn = table.Norm(*query);
  if (qn == 0) return result;
  auto q = table.Vector(*query);

  using Cand = std::pair<double, std::size_t>;
  auto ranks_ahead = [&table](const Cand &a, const Cand &b) {
    return RanksAhead()(a, b, table);
  };
  std::priority_queue<Cand, std::vector<Cand>, decltype(ranks_ahead)> heap(
      ranks_ahead);
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i == *query || table.Norm(i) == 0) continue;
    double sim = std::clamp(Dot(q, table.Vector(i)) / (qn * table.Norm(i)),
                            -1.0, 1.0);
    Cand c{sim, i};
    if (heap.size() < n) {
      heap.push(c);
    } else if (ranks_ahead(c, heap.top())) {
      heap.pop();
      heap.push(c);
    }
  }
  result.resize(heap.size());
  for (std::size_t k = heap.size(); k-- > 0;) {
    result[k] = {table.Word(heap.top().second), heap.top().first};
    heap.pop();
  }
  return result;
}

std::vector<std::optional<std::vector<Neighbor>>> NearestNeighborsBatch(
    std::span<const std::string> words, const EmbeddingTable &table,
    std::size_t n, unsigned threads) {
  std::vector<std::optional<std::vector<Neighbor>>> out(words.size());
  if (table.empty()) return out;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < words.size(); i = next++) {
      if (table.Contains(words[i])) {
        out[i] = NearestNeighbors(words[i], table, n);
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, words.size()));
  if (threads == 1) {
    work();
    return out;
  }
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  return out;
}

}  // namespace seedsel
