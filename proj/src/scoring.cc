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

#include "seedsel/scoring.h"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

#include "json.hpp"
#include "seedsel/common.h"

namespace seedsel {

void AlignmentResult::Accumulate(const AlignmentResult &other) {
  hits += other.hits;
  substitutions += other.substitutions;
  insertions += other.insertions;
  deletions += other.deletions;
  reference_length += other.reference_length;
  trace.insert(trace.end(), other.trace.begin(), other.trace.end());
}

AlignmentResult Align(std::span<const std::string> ref,
                      std::span<const std::string> hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  std::vector<std::uint32_t> d((n + 1) * (m + 1));
  auto at = [m, &d](std::size_t i, std::size_t j) -> std::uint32_t & {
    return d[i * (m + 1) + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = static_cast<std::uint32_t>(i);
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      std::uint32_t diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  AlignmentResult result;
  result.reference_length = n;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const std::uint32_t cost = at(i, j);
    if (i > 0 && j > 0 && ref[i - 1] == hyp[j - 1] &&
        cost == at(i - 1, j - 1)) {
      result.trace.push_back({EditOp::kHit, i - 1, j - 1});
      ++result.hits;
      --i;
      --j;
    } else if (i > 0 && j > 0 && ref[i - 1] != hyp[j - 1] &&
               cost == at(i - 1, j - 1) + 1) {
      result.trace.push_back({EditOp::kSubstitution, i - 1, j - 1});
      ++result.substitutions;
      --i;
      --j;
    } else if (i > 0 && cost == at(i - 1, j) + 1) {
      result.trace.push_back({EditOp::kDeletion, i - 1, std::nullopt});
      ++result.deletions;
      --i;
    } else {
      result.trace.push_back({EditOp::kInsertion, std::nullopt, j - 1});
      ++result.insertions;
      --j;
    }
  }
  std::reverse(result.trace.begin(), result.trace.end());
  return result;
}

std::string RenderAlignment(const AlignmentResult &alignment,
                            std::span<const std::string> ref,
                            std::span<const std::string> hyp) {
  std::string out;
  for (const auto &p : alignment.trace) {
    std::string item;
    switch (p.op) {
      case EditOp::kHit:
        continue;
      case EditOp::kSubstitution:
        item = "S_" + ref[*p.ref] + "_" + hyp[*p.hyp];
        break;
      case EditOp::kDeletion:
        item = "D_" + ref[*p.ref];
        break;
      case EditOp::kInsertion:
        item = "I_" + hyp[*p.hyp];
        break;
    }
    if (!out.empty()) out.push_back(' ');
    out += item;
  }
  return out;
}

double WordErrorRate(const AlignmentResult &alignment) {
  if (alignment.reference_length == 0) {
    throw std::invalid_argument("WER of an empty reference");
  }
  return 100.0 * static_cast<double>(alignment.errors()) /
         static_cast<double>(alignment.reference_length);
}

std::string WordErrorRateString(const AlignmentResult &alignment) {
  if (alignment.reference_length == 0) {
    throw std::invalid_argument("WER of an empty reference");
  }
  return FormatFixed2(alignment.errors(), alignment.reference_length, 100);
}

double PRFReport::precision() const {
  if (hypothesis_count == 0) return 1.0;
  return static_cast<double>(matched) / static_cast<double>(hypothesis_count);
}

double PRFReport::recall() const {
  if (reference_count == 0) return 1.0;
  return static_cast<double>(matched) / static_cast<double>(reference_count);
}

double PRFReport::f_measure() const {
  double p = precision();
  double r = recall();
  return p + r == 0 ? 0.0 : 2 * p * r / (p + r);
}

std::string PRFReport::precision_string() const {
  return hypothesis_count == 0 ? "1.00"
                               : FormatFixed2(matched, hypothesis_count);
}

std::string PRFReport::recall_string() const {
  return reference_count == 0 ? "1.00" : FormatFixed2(matched, reference_count);
}

std::string PRFReport::f_measure_string() const {
  // With both counts nonzero F = 2m / (|hyp| + |ref|), exactly.
  if (hypothesis_count > 0 && reference_count > 0) {
    return FormatFixed2(2 * matched, hypothesis_count + reference_count);
  }
  return FormatFixed2(f_measure());
}

namespace {

std::uint64_t MultisetIntersection(const std::vector<std::string> &a,
                                   const std::vector<std::string> &b) {
  std::map<std::string_view, std::int64_t> pool;
  for (const auto &x : a) ++pool[x];
  std::uint64_t matched = 0;
  for (const auto &y : b) {
    auto it = pool.find(y);
    if (it != pool.end() && it->second > 0) {
      --it->second;
      ++matched;
    }
  }
  return matched;
}

nlohmann::ordered_json PrfJson(const PRFReport &r) {
  nlohmann::ordered_json j;
  j["p"] = std::stod(r.precision_string());
  j["r"] = std::stod(r.recall_string());
  j["f"] = std::stod(r.f_measure_string());
  j["matched"] = r.matched;
  j["ref"] = r.reference_count;
  j["hyp"] = r.hypothesis_count;
  return j;
}

std::string PrfLine(const PRFReport &r) {
  return fmt::format(
      "Precision {} [ {} / {} ] / Recall {} [ {} / {} ] / F-Measure {}",
      r.precision_string(), r.matched, r.hypothesis_count, r.recall_string(),
      r.matched, r.reference_count, r.f_measure_string());
}

}  // namespace

PRFReport ComputeIWPRF(const std::vector<std::vector<std::string>> &ref_items,
                       const std::vector<std::vector<std::string>> &hyp_items,
                       bool corpus_scope) {
  if (ref_items.size() != hyp_items.size()) {
    throw std::invalid_argument(
        fmt::format("utterance count mismatch: {} reference vs {} hypothesis",
                    ref_items.size(), hyp_items.size()));
  }
  PRFReport report;
  std::vector<std::string> all_ref;
  std::vector<std::string> all_hyp;
  for (std::size_t u = 0; u < ref_items.size(); ++u) {
    report.reference_count += ref_items[u].size();
    report.hypothesis_count += hyp_items[u].size();
    if (corpus_scope) {
      all_ref.insert(all_ref.end(), ref_items[u].begin(), ref_items[u].end());
      all_hyp.insert(all_hyp.end(), hyp_items[u].begin(), hyp_items[u].end());
    } else {
      report.matched += MultisetIntersection(ref_items[u], hyp_items[u]);
    }
  }
  if (corpus_scope) report.matched = MultisetIntersection(all_ref, all_hyp);
  return report;
}

std::string BenchmarkReport::ToJson() const {
  nlohmann::ordered_json j;
  if (alignment.reference_length > 0) {
    j["wer"] = std::stod(WordErrorRateString(alignment));
  } else {
    j["wer"] = nullptr;
  }
  j["alignment"] = {{"sub", alignment.substitutions},
                    {"ins", alignment.insertions},
                    {"del", alignment.deletions},
                    {"hits", alignment.hits},
                    {"ref", alignment.reference_length}};
  j["iw"] = PrfJson(iw);
  j["isol_iw"] = PrfJson(isol_iw);
  if (oov) {
    j["oov"] = {{"percent", std::stod(oov->percent_string())},
                {"oov", oov->oov_count},
                {"running_words", oov->running_words}};
  } else {
    j["oov"] = nullptr;
  }
  j["utterances"] = utterances;
  j["minimal_iws"] = minimal_iws;
  j["warnings"] = warnings;
  return j.dump(2) + "\n";
}

std::string BenchmarkReport::ToTable() const {
  std::string out;
  if (alignment.reference_length > 0) {
    out += fmt::format(
        "WER        {}% [ 100 * ({} + {} + {}) / {} ]\n",
        WordErrorRateString(alignment), alignment.substitutions,
        alignment.insertions, alignment.deletions, alignment.reference_length);
  } else {
    out += "WER        n/a (empty reference)\n";
  }
  out += "IW         " + PrfLine(iw) + "\n";
  out += "Isol-IW    " + PrfLine(isol_iw) + "\n";
  if (oov) {
    out += fmt::format("OOV        {}% [ {} / {} ]\n", oov->percent_string(),
                       oov->oov_count, oov->running_words);
  }
  return out;
}

BenchmarkReport ScoreBenchmark(const AnnotatedTranscript &ref,
                               const AnnotatedTranscript &hyp,
                               const ScoreOptions &options) {
  if (ref.utterances.size() != hyp.utterances.size()) {
    throw std::invalid_argument(
        fmt::format("utterance count mismatch: {} reference vs {} hypothesis",
                    ref.utterances.size(), hyp.utterances.size()));
  }
  BenchmarkReport report;
  report.utterances = ref.utterances.size();
  report.warnings = ref.warnings;
  report.warnings.insert(report.warnings.end(), hyp.warnings.begin(),
                         hyp.warnings.end());

  for (std::size_t u = 0; u < ref.utterances.size(); ++u) {
    report.alignment.Accumulate(
        Align(ref.utterances[u].tokens, hyp.utterances[u].tokens));
  }

  IWSet minimal = MinimalIWSet(CollectIWs(ref));
  report.minimal_iws = minimal.size();
  auto ref_items = StripNonIW(Regenerate(ref, minimal));
  auto hyp_items = StripNonIW(Regenerate(hyp, minimal));
  report.iw = ComputeIWPRF(ref_items, hyp_items, options.corpus_scope);

  std::vector<std::vector<std::string>> ref_isol;
  std::vector<std::vector<std::string>> hyp_isol;
  for (const auto &items : ref_items) ref_isol.push_back(Isolate(items));
  for (const auto &items : hyp_items) hyp_isol.push_back(Isolate(items));
  report.isol_iw = ComputeIWPRF(ref_isol, hyp_isol, options.corpus_scope);

  if (options.lexicon) {
    std::vector<std::string> tokens;
    for (const auto &utt : ref.utterances) {
      tokens.insert(tokens.end(), utt.tokens.begin(), utt.tokens.end());
    }
    report.oov = ComputeOovRate(tokens, *options.lexicon);
  }
  return report;
}

BenchmarkReport ScoreBenchmarkFiles(const std::string &ref_path,
                                    const std::string &hyp_path,
                                    const ScoreOptions &options) {
  return ScoreBenchmark(ParseTranscriptFile(ref_path, options.tokenizer),
                        ParseTranscriptFile(hyp_path, options.tokenizer),
                        options);
}

}  // namespace seedsel
