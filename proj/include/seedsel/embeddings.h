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
// Word vectors in word2vec text format and cosine nearest-neighbour search.

#ifndef SEEDSEL_EMBEDDINGS_H_
#define SEEDSEL_EMBEDDINGS_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace seedsel {

class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dimension = 0);

  // Inserts or overwrites. Returns true if the word was already present.
  // Throws std::invalid_argument on a dimension mismatch.
  bool Set(const std::string &word, std::span<const float> vector);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }

  std::optional<std::size_t> Find(const std::string &word) const;
  bool Contains(const std::string &word) const { return index_.count(word); }
  const std::string &Word(std::size_t i) const { return words_[i]; }
  std::span<const float> Vector(std::size_t i) const {
    return {data_.data() + i * dimension_, dimension_};
  }
  // Cached Euclidean norm of Vector(i).
  double Norm(std::size_t i) const { return norms_[i]; }

 private:
  std::size_t dimension_;
  std::vector<std::string> words_;
  std::vector<float> data_;
  std::vector<double> norms_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct EmbeddingLoadReport {
  std::size_t declared_words = 0;
  std::size_t duplicates = 0;
};

// Header "V D", then V lines "word v1 ... vD". Errors are FormatError
// with the offending line number.
EmbeddingTable LoadEmbeddings(std::istream &in,
                              const std::string &source = "embeddings",
                              EmbeddingLoadReport *report = nullptr);
EmbeddingTable LoadEmbeddingsFile(const std::string &path,
                                  EmbeddingLoadReport *report = nullptr);

// (u.v) / (|u| |v|). Throws std::invalid_argument on unequal dimensions or
// a zero vector.
double CosineSimilarity(std::span<const float> u, std::span<const float> v);

struct Neighbor {
  std::string word;
  double similarity = 0;

  bool operator==(const Neighbor &) const = default;
};

// Top-n other words by similarity desc, ties by word asc. Zero vectors
// are never returned. Throws std::invalid_argument when the table is
// empty or the word is missing.
std::vector<Neighbor> NearestNeighbors(const std::string &word,
                                       const EmbeddingTable &table,
                                       std::size_t n);

// NearestNeighbors for each query on up to `threads` threads; nullopt for
// words missing from the table. Output is parallel to `words`.
std::vector<std::optional<std::vector<Neighbor>>> NearestNeighborsBatch(
    std::span<const std::string> words, const EmbeddingTable &table,
    std::size_t n, unsigned threads = 1);

}  // namespace seedsel

#endif  // SEEDSEL_EMBEDDINGS_H_
