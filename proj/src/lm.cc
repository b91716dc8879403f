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

#include "seedsel/lm.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace seedsel {
namespace {

// Extensions of each history: history -> [(word, value)].
template <typename Table, typename Value>
std::unordered_map<NGramKey, std::vector<std::pair<WordId, double>>,
                   NGramKeyHash>
GroupByHistory(const Table &table, Value value) {
  std::unordered_map<NGramKey, std::vector<std::pair<WordId, double>>,
                     NGramKeyHash>
      groups;
  for (const auto &[key, v] : table) {
    NGramKey history(key.begin(), key.end() - 1);
    groups[std::move(history)].emplace_back(key.back(), value(v));
  }
  return groups;
}

double Pow10(double x) { return std::pow(10.0, x); }

}  // namespace

Vocab VocabFromLexicon(const Lexicon &lexicon) {
  Vocab vocab;
  for (const auto &w : lexicon.words()) vocab.Add(w);
  return vocab;
}

NGramCounter::NGramCounter(const Lexicon &lexicon, int order)
    : counts_(order, VocabFromLexicon(lexicon)) {}

void NGramCounter::AddSentence(std::span<const std::string> tokens) {
  if (tokens.empty()) return;
  const Vocab &vocab = counts_.vocab();
  padded_.clear();
  padded_.push_back(Vocab::kBosId);
  for (const auto &t : tokens) padded_.push_back(vocab.IdOrUnk(t));
  padded_.push_back(Vocab::kEosId);

  counts_.Add({Vocab::kBosId}, 1);
  const int order = counts_.order();
  NGramKey key;
  for (std::size_t i = 1; i < padded_.size(); ++i) {
    for (int n = 1; n <= order && static_cast<std::size_t>(n) <= i + 1; ++n) {
      key.assign(padded_.begin() + (i + 1 - n), padded_.begin() + i + 1);
      counts_.Add(key, 1);
    }
  }
}

NGramCounts CountNGrams(std::span<const Document> docs, const Lexicon &lexicon,
                        int order) {
  if (order < 1) throw std::invalid_argument("n-gram order must be >= 1");
  NGramCounter counter(lexicon, order);
  for (const auto &doc : docs) counter.AddSentence(doc.tokens);
  return counter.Release();
}

NGramModel EstimateModel(const NGramCounts &counts, double unigram_floor) {
  if (counts.empty()) throw std::invalid_argument("empty n-gram counts");
  NGramModel model(counts.order(), counts.vocab());
  const Vocab &vocab = counts.vocab();
  const std::size_t num_predictable = vocab.size() - 1;

  double total = 0;
  for (WordId w = 0; w < vocab.size(); ++w) {
    if (w != Vocab::kBosId) total += counts.Count({w});
  }
  if (!(total > 0)) throw std::invalid_argument("empty n-gram counts");
  std::vector<double> probs(vocab.size(), 0.0);
  double z = 0;
  for (WordId w = 0; w < vocab.size(); ++w) {
    if (w == Vocab::kBosId) continue;
    probs[w] = std::max(counts.Count({w}) / total, unigram_floor);
    z += probs[w];
  }
  EntryTable &unigrams = model.MutableTable(1);
  for (WordId w = 0; w < vocab.size(); ++w) {
    NGramEntry e;
    e.count = counts.Count({w});
    e.log10_prob = w == Vocab::kBosId ? kBosLog10Prob : std::log10(probs[w] / z);
    unigrams.emplace(NGramKey{w}, e);
  }

  for (int n = 2; n <= counts.order(); ++n) {
    auto groups = GroupByHistory(counts.Table(n), [](double c) { return c; });
    EntryTable &table = model.MutableTable(n);
    for (auto &[history, exts] : groups) {
      if (!model.Find(history)) continue;
      std::erase_if(exts, [](const auto &e) {
        return e.first == Vocab::kBosId || !(e.second > 0);
      });
      if (exts.empty()) continue;
      double c_h = 0;
      for (const auto &e : exts) c_h += e.second;
      const double types = static_cast<double>(exts.size());
      const double denom = exts.size() >= num_predictable ? c_h : c_h + types;
      NGramKey key = history;
      key.push_back(0);
      for (const auto &[w, c] : exts) {
        key.back() = w;
        NGramEntry e;
        e.count = c;
        e.log10_prob = std::log10(c / denom);
        table.emplace(key, e);
      }
    }
  }
  RecomputeBackoffWeights(&model);
  return model;
}

void RecomputeBackoffWeights(NGramModel *model) {
  const std::vector<WordId> vocab = model->PredictableWords();
  for (int n = 1; n <= model->order(); ++n) {
    for (auto &[k, e] : model->MutableTable(n)) e.log10_backoff = 0;
  }
  for (int n = 1; n < model->order(); ++n) {
    auto groups = GroupByHistory(model->Table(n + 1), [](const NGramEntry &e) {
      return e.log10_prob;
    });
    EntryTable &histories = model->MutableTable(n);
    for (const auto &[history, exts] : groups) {
      auto hit = histories.find(history);
      if (hit == histories.end()) continue;
      if (exts.size() >= vocab.size()) continue;  // nothing to back off to
      std::span<const WordId> shorter(history.begin() + 1, history.end());
      double seen = 0;
      double lower = 0;
      for (const auto &[w, logp] : exts) {
        seen += Pow10(logp);
        lower += Pow10(model->Log10Prob(shorter, w));
      }
      double numerator = 1.0 - seen;
      double denominator = 1.0 - lower;
      if (denominator < 1e-10) {
        // Cancellation: sum the unseen mass directly.
        std::unordered_set<WordId> seen_words;
        for (const auto &e : exts) seen_words.insert(e.first);
        denominator = 0;
        for (WordId w : vocab) {
          if (!seen_words.count(w)) {
            denominator += Pow10(model->Log10Prob(shorter, w));
          }
        }
      }
      if (numerator <= 0 || denominator <= 0) {
        hit->second.log10_backoff = kBosLog10Prob;
      } else {
        hit->second.log10_backoff = std::log10(numerator / denominator);
      }
    }
  }
}

NGramCounts MixCounts(const NGramCounts &background,
                      const NGramCounts &adaptation, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("adaptation weight must lie in [0, 1]");
  }
  const int order = std::max(background.order(), adaptation.order());
  Vocab vocab = background.vocab();
  for (const auto &w : adaptation.vocab().words()) vocab.Add(w);
  NGramCounts mixed(order, vocab);

  auto remap = [&vocab](const NGramCounts &side, const NGramKey &key) {
    NGramKey out;
    out.reserve(key.size());
    for (WordId id : key) out.push_back(*vocab.Find(side.vocab().Word(id)));
    return out;
  };

  struct History {
    double total[2] = {0, 0};
    std::unordered_map<WordId, double> ext[2];
  };
  const NGramCounts *sides[2] = {&background, &adaptation};
  const double weight[2] = {1.0 - lambda, lambda};

  for (int n = 1; n <= order; ++n) {
    std::unordered_map<NGramKey, History, NGramKeyHash> histories;
    for (int s = 0; s < 2; ++s) {
      if (n > sides[s]->order()) continue;
      for (const auto &[key, c] : sides[s]->Table(n)) {
        if (!(c > 0)) continue;
        NGramKey k = remap(*sides[s], key);
        WordId w = k.back();
        k.pop_back();
        History &h = histories[k];
        h.total[s] += c;
        h.ext[s][w] += c;
      }
    }
    for (auto &[key, h] : histories) {
      double a = h.total[0] > 0 ? weight[0] : 0.0;
      double b = h.total[1] > 0 ? weight[1] : 0.0;
      if (a + b == 0) continue;
      const double w_side[2] = {a / (a + b), b / (a + b)};
      const double scale = w_side[0] * h.total[0] + w_side[1] * h.total[1];
      NGramKey ngram = key;
      ngram.push_back(0);
      for (int s = 0; s < 2; ++s) {
        if (w_side[s] == 0) continue;
        for (const auto &[w, c] : h.ext[s]) {
          ngram.back() = w;
          if (mixed.Count(ngram) > 0) continue;  // both sides: done below
          int other = 1 - s;
          double pseudo;
          if (w_side[other] == 0) {
            pseudo = c;  // single contributing side: counts pass through
          } else {
            auto it = h.ext[other].find(w);
            double c_other = it == h.ext[other].end() ? 0.0 : it->second;
            double f = w_side[s] * c / h.total[s] +
                       w_side[other] * c_other / h.total[other];
            pseudo = f * scale;
          }
          if (pseudo > 0) mixed.Add(ngram, pseudo);
        }
      }
    }
  }
  return mixed;
}

NGramModel AdaptModel(const NGramCounts &background,
                      const NGramCounts &adaptation, double lambda,
                      double unigram_floor) {
  return EstimateModel(MixCounts(background, adaptation, lambda),
                       unigram_floor);
}

PruneConfig PruneConfig::Manageable() { return {{0, 1, 1}, std::nullopt}; }

NGramModel PruneModel(const NGramModel &model, const PruneConfig &config) {
  bool uses_counts = false;
  for (std::size_t i = 1; i < config.min_counts.size(); ++i) {
    if (config.min_counts[i] > 0) uses_counts = true;
  }
  if (uses_counts && !model.HasCounts()) {
    throw std::invalid_argument(
        "count pruning needs a model with counts (not an imported ARPA)");
  }
  NGramModel out = model;
  std::unordered_set<NGramKey, NGramKeyHash> needed;  // prefixes of survivors
  for (int n = out.order(); n >= 2; --n) {
    double min_count = static_cast<std::size_t>(n - 1) < config.min_counts.size()
                           ? config.min_counts[n - 1]
                           : 0.0;
    std::unordered_set<NGramKey, NGramKeyHash> next_needed;
    auto &table = out.MutableTable(n);
    for (auto it = table.begin(); it != table.end();) {
      bool drop = false;
      if (min_count > 0 && it->second.count && *it->second.count < min_count) {
        drop = true;
      }
      if (config.min_prob && Pow10(it->second.log10_prob) < *config.min_prob) {
        drop = true;
      }
      if (drop && !needed.count(it->first)) {
        it = table.erase(it);
      } else {
        next_needed.emplace(it->first.begin(), it->first.end() - 1);
        ++it;
      }
    }
    needed = std::move(next_needed);
  }
  RecomputeBackoffWeights(&out);
  return out;
}

PerplexityResult ComputePerplexity(
    const NGramModel &model,
    std::span<const std::vector<std::string>> sentences) {
  PerplexityResult result;
  const Vocab &vocab = model.vocab();
  const bool has_unk = model.Find(std::vector<WordId>{Vocab::kUnkId}) != nullptr;
  std::vector<WordId> history;
  for (const auto &sentence : sentences) {
    history.assign(1, Vocab::kBosId);
    for (const auto &token : sentence) {
      auto id = vocab.Find(token);
      if (!id || *id == Vocab::kBosId || !model.Find(std::vector<WordId>{*id})) {
        if (!has_unk) {
          throw std::runtime_error("OOV token '" + token +
                                   "' and the model has no <unk>");
        }
        id = Vocab::kUnkId;
        ++result.oov_mapped;
      }
      result.log10_prob_total += model.Log10Prob(history, *id);
      history.push_back(*id);
      ++result.events;
    }
    result.log10_prob_total += model.Log10Prob(history, Vocab::kEosId);
    ++result.events;
    ++result.sentences;
  }
  if (result.events == 0) throw std::invalid_argument("nothing to score");
  result.perplexity = Pow10(-result.log10_prob_total /
                            static_cast<double>(result.events));
  return result;
}

Lexicon BuildAdaptedLexicon(const Lexicon &base,
                            const FrequencyTable &adaptation,
                            std::uint64_t f_min) {
  std::vector<std::string> words = base.words();
  for (const auto &[w, c] : adaptation.Ranked()) {
    if (c >= f_min && !base.Contains(w)) words.push_back(w);
  }
  return Lexicon(std::move(words));
}

}  // namespace seedsel
