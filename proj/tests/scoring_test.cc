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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>

#include "json.hpp"
#include "seedsel/scoring.h"

using namespace seedsel;
using Words = std::vector<std::string>;

namespace {

// Oracle: memoized recursion over suffixes.
std::size_t Levenshtein(const Words &a, const Words &b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> d =
      [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::size_t best = std::min({d(i + 1, j) + 1, d(i, j + 1) + 1,
                                 d(i + 1, j + 1) + (a[i] == b[j] ? 0 : 1)});
    return memo[key] = best;
  };
  return d(0, 0);
}

Words RandomWords(std::mt19937 &rng, std::size_t max_len) {
  Words w;
  for (std::size_t k = rng() % (max_len + 1); k > 0; --k) {
    w.push_back(std::string(1, static_cast<char>('a' + rng() % 4)));
  }
  return w;
}

// Replays a trace and checks it rebuilds both sides with consistent ops.
bool Replays(const AlignmentResult &r, const Words &ref, const Words &hyp) {
  Words got_ref, got_hyp;
  for (const auto &p : r.trace) {
    switch (p.op) {
      case EditOp::kHit:
        if (!p.ref || !p.hyp || ref[*p.ref] != hyp[*p.hyp]) return false;
        break;
      case EditOp::kSubstitution:
        if (!p.ref || !p.hyp || ref[*p.ref] == hyp[*p.hyp]) return false;
        break;
      case EditOp::kDeletion:
        if (!p.ref || p.hyp) return false;
        break;
      case EditOp::kInsertion:
        if (p.ref || !p.hyp) return false;
        break;
    }
    if (p.ref) got_ref.push_back(ref[*p.ref]);
    if (p.hyp) got_hyp.push_back(hyp[*p.hyp]);
  }
  return got_ref == ref && got_hyp == hyp;
}

std::string WriteTemp(const std::string &name, const std::string &text) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}

const char kRef[] =
    "the most of them referred from (pulmonary specialist) (ENTs) "
    "(paediatricians) let's let Boyd try nothing else\n";
const char kHyp[] =
    "in the most of my referred from (pulmonary specialist) ian "
    "(paediatricians) was led by tried nothing\n";

}  // namespace

TEST_CASE("alignment basics") {
  Words a{"a", "b", "c"};
  AlignmentResult same = Align(a, a);
  CHECK(same.hits == 3);
  CHECK(same.errors() == 0);

  Words ac{"a", "c"};
  AlignmentResult del = Align(a, ac);
  CHECK(del.deletions == 1);
  CHECK(del.substitutions == 0);
  CHECK(del.insertions == 0);

  Words empty;
  AlignmentResult all_del = Align(Words{"a", "b", "c", "d"}, empty);
  CHECK(all_del.deletions == 4);
  CHECK(WordErrorRateString(all_del) == "100.00");
  CHECK(WordErrorRateString(same) == "0.00");
  CHECK_THROWS_AS(WordErrorRate(Align(empty, a)), std::invalid_argument);
}

TEST_CASE("backtrace prefers substitutions over insert/delete pairs") {
  Words ref{"a", "b"}, hyp{"a", "c"};
  AlignmentResult r = Align(ref, hyp);
  CHECK(r.substitutions == 1);
  CHECK(r.insertions == 0);
  CHECK(RenderAlignment(r, ref, hyp) == "S_b_c");
}

TEST_CASE("the pulmonary specialist sample pair") {
  auto ref = ParseTranscript(kRef);
  auto hyp = ParseTranscript(kHyp);
  const Words &r = ref.utterances[0].tokens;
  const Words &h = hyp.utterances[0].tokens;
  AlignmentResult a = Align(r, h);
  CHECK(a.substitutions == 6);
  CHECK(a.insertions == 1);
  CHECK(a.deletions == 1);
  CHECK(a.reference_length == 16);
  CHECK(WordErrorRateString(a) == "50.00");
  CHECK(RenderAlignment(a, r, h) ==
        "I_in S_them_my S_ents_ian S_let's_was S_let_led S_boyd_by "
        "S_try_tried D_else");
}

TEST_CASE("alignment cost equals an independent edit distance") {
  std::mt19937 rng(123);
  for (int round = 0; round < 1000; ++round) {
    Words ref = RandomWords(rng, 20), hyp = RandomWords(rng, 20);
    AlignmentResult r = Align(ref, hyp);
    CHECK(r.errors() == Levenshtein(ref, hyp));
    CHECK(r.hits + r.substitutions + r.deletions == ref.size());
    CHECK(r.hits + r.substitutions + r.insertions == hyp.size());
    CHECK(Replays(r, ref, hyp));
  }
}

TEST_CASE("precision, recall and F") {
  PRFReport iw = ComputeIWPRF({{"pulmonary_specialist", "ents", "paediatricians"}},
                              {{"pulmonary_specialist", "paediatricians"}});
  CHECK(iw.precision_string() == "1.00");
  CHECK(iw.recall_string() == "0.67");
  CHECK(iw.f_measure_string() == "0.80");

  PRFReport isol = ComputeIWPRF({Isolate({"pulmonary_specialist", "ents",
                                          "paediatricians"})},
                                {Isolate({"pulmonary_specialist", "paediatricians"})});
  CHECK(isol.matched == 3);
  CHECK(isol.reference_count == 4);
  CHECK(isol.f_measure_string() == "0.86");

  PRFReport none = ComputeIWPRF({{"a"}}, {{}});
  CHECK(none.precision_string() == "1.00");
  CHECK(none.recall_string() == "0.00");
  CHECK(none.f_measure_string() == "0.00");

  // multiset matching inside an utterance, none across utterances
  PRFReport multi = ComputeIWPRF({{"a", "a"}, {"b"}}, {{"a"}, {"a", "b"}});
  CHECK(multi.matched == 2);
  PRFReport corpus = ComputeIWPRF({{"a", "a"}, {"b"}}, {{"a"}, {"a", "b"}}, true);
  CHECK(corpus.matched == 3);
  CHECK_THROWS_AS(ComputeIWPRF({{"a"}}, {{"a"}, {}}), std::invalid_argument);
}

TEST_CASE("PRF bounds on random item lists") {
  std::mt19937 rng(77);
  for (int round = 0; round < 500; ++round) {
    std::vector<Words> ref(1 + rng() % 3), hyp(ref.size());
    for (auto &u : ref) u = RandomWords(rng, 5);
    for (auto &u : hyp) u = RandomWords(rng, 5);
    PRFReport r = ComputeIWPRF(ref, hyp);
    for (double x : {r.precision(), r.recall(), r.f_measure()}) {
      CHECK(x >= 0);
      CHECK(x <= 1);
    }
    CHECK(r.f_measure() <= std::max(r.precision(), r.recall()) + 1e-12);
    CHECK(r.matched <= std::min(r.reference_count, r.hypothesis_count));
  }
}

TEST_CASE("score benchmark end to end") {
  std::string ref = WriteTemp("seedsel_ref.txt", kRef);
  std::string hyp = WriteTemp("seedsel_hyp.txt", kHyp);
  BenchmarkReport r = ScoreBenchmarkFiles(ref, hyp);
  CHECK(WordErrorRateString(r.alignment) == "50.00");
  CHECK(r.iw.precision_string() == "1.00");
  CHECK(r.iw.recall_string() == "0.67");
  CHECK(r.iw.f_measure_string() == "0.80");
  CHECK(r.isol_iw.precision_string() == "1.00");
  CHECK(r.isol_iw.recall_string() == "0.75");
  CHECK(r.isol_iw.f_measure_string() == "0.86");

  auto j = nlohmann::json::parse(r.ToJson());
  CHECK(j["wer"] == 50.0);
  CHECK(j["iw"]["matched"] == 2);
  CHECK(j["isol_iw"]["ref"] == 4);
  CHECK(j["oov"].is_null());

  BenchmarkReport same = ScoreBenchmarkFiles(ref, ref);
  CHECK(WordErrorRateString(same.alignment) == "0.00");
  CHECK(same.iw.f_measure_string() == "1.00");
  CHECK(same.isol_iw.f_measure_string() == "1.00");

  std::string plain = WriteTemp("seedsel_plain.txt", "a b c\n");
  std::string plain_hyp = WriteTemp("seedsel_plain_hyp.txt", "a c\n");
  BenchmarkReport bare = ScoreBenchmarkFiles(plain, plain_hyp);
  CHECK(bare.alignment.deletions == 1);
  CHECK(bare.iw.hypothesis_count == 0);
  CHECK(bare.iw.precision_string() == "1.00");

  Lexicon lex({"the", "most", "of"});
  ScoreOptions with_oov;
  with_oov.lexicon = &lex;
  BenchmarkReport o = ScoreBenchmarkFiles(ref, hyp, with_oov);
  REQUIRE(o.oov.has_value());
  CHECK(o.oov->running_words == 16);
  CHECK(o.oov->oov_count == 13);

  std::string two = WriteTemp("seedsel_two.txt", "a\nb\n");
  CHECK_THROWS_AS(ScoreBenchmarkFiles(plain, two), std::invalid_argument);
}
