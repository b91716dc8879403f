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
#include <map>
#include <random>
#include <sstream>

#include "seedsel/common.h"
#include "seedsel/corpus.h"

using namespace seedsel;
using Tokens = std::vector<std::string>;

namespace {

Document Doc(Tokens tokens) {
  Document d;
  d.tokens = std::move(tokens);
  return d;
}

FrequencyTable Table(std::initializer_list<std::pair<const char *, int>> items) {
  FrequencyTable t;
  for (auto [w, c] : items) t.Add(w, c);
  return t;
}

// Oracle: plain std::map recount.
std::map<std::string, std::uint64_t> Recount(const std::vector<Document> &docs) {
  std::map<std::string, std::uint64_t> m;
  for (const auto &d : docs)
    for (const auto &t : d.tokens) ++m[t];
  return m;
}

std::vector<Document> RandomDocs(std::mt19937 &rng, int n, int vocab) {
  std::vector<Document> docs;
  std::uniform_int_distribution<int> len(0, 8), word(0, vocab - 1);
  for (int i = 0; i < n; ++i) {
    Tokens t;
    for (int k = len(rng); k > 0; --k) t.push_back("w" + std::to_string(word(rng)));
    docs.push_back(Doc(t));
  }
  return docs;
}

}  // namespace

TEST_CASE("frequency table basics") {
  std::vector<Document> none;
  FrequencyTable empty = BuildFrequencyTable(none);
  CHECK(empty.empty());
  CHECK(empty.total_running_words() == 0);

  std::vector<Document> one{Doc({"a", "b", "a"})};
  FrequencyTable t = BuildFrequencyTable(one);
  CHECK(t.Count("a") == 2);
  CHECK(t.Count("b") == 1);
  CHECK(t.total_running_words() == 3);

  std::vector<Document> split{Doc({"a"}), Doc({"a", "b"})};
  std::vector<Document> joined{Doc({"a", "a", "b"})};
  CHECK(BuildFrequencyTable(split) == BuildFrequencyTable(joined));
}

TEST_CASE("frequency table matches recount, shuffles and shards") {
  std::mt19937 rng(11);
  for (int round = 0; round < 20; ++round) {
    auto docs = RandomDocs(rng, 40, 15);
    FrequencyTable t = BuildFrequencyTable(docs);
    auto oracle = Recount(docs);
    std::uint64_t sum = 0;
    CHECK(t.size() == oracle.size());
    for (auto &[w, c] : oracle) {
      CHECK(t.Count(w) == c);
      sum += c;
    }
    CHECK(t.total_running_words() == sum);
    for (auto &[w, c] : t.counts()) CHECK(c >= 1);

    auto shuffled = docs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(BuildFrequencyTable(shuffled) == t);
    CHECK(BuildFrequencyTableSharded(docs, 4) == t);
  }
}

TEST_CASE("merge is associative and commutative") {
  FrequencyTable a = Table({{"x", 1}, {"y", 2}});
  FrequencyTable b = Table({{"y", 3}});
  FrequencyTable c = Table({{"z", 4}, {"x", 1}});
  FrequencyTable ab_c = a;
  ab_c.Merge(b);
  ab_c.Merge(c);
  FrequencyTable bc = b;
  bc.Merge(c);
  FrequencyTable a_bc = a;
  a_bc.Merge(bc);
  FrequencyTable cba = c;
  cba.Merge(b);
  cba.Merge(a);
  CHECK(ab_c == a_bc);
  CHECK(ab_c == cba);
  CHECK(ab_c.Count("y") == 5);
}

TEST_CASE("build lexicon") {
  FrequencyTable t = Table({{"a", 5}, {"b", 3}, {"c", 3}});
  CHECK(BuildLexicon(t, 2).words() == Tokens{"a", "b"});
  CHECK(BuildLexicon(t, 3).words() == Tokens{"a", "b", "c"});
  CHECK(BuildLexicon(t, 100).words() == Tokens{"a", "b", "c"});
  CHECK(BuildLexicon(Table({{"x", 1}}), 1).words() == Tokens{"x"});
  CHECK_THROWS_AS(BuildLexicon(t, 0), std::invalid_argument);

  Lexicon lex = BuildLexicon(t, 3);
  CHECK(lex.Rank("a") == 1u);
  CHECK(lex.Rank("c") == 3u);
  CHECK_FALSE(lex.Rank("z").has_value());
  CHECK_THROWS_AS(Lexicon({"a", "a"}), std::invalid_argument);
}

TEST_CASE("lexica are nested and rank-ordered") {
  std::mt19937 rng(5);
  auto docs = RandomDocs(rng, 60, 30);
  FrequencyTable t = BuildFrequencyTable(docs);
  for (std::size_t k1 = 1; k1 <= t.size(); ++k1) {
    Lexicon small = BuildLexicon(t, k1);
    Lexicon big = BuildLexicon(t, k1 + 3);
    CHECK(std::equal(small.words().begin(), small.words().end(),
                     big.words().begin()));
  }
  Lexicon all = BuildLexicon(t, t.size());
  for (std::size_t i = 1; i < all.size(); ++i) {
    auto c0 = t.Count(all.words()[i - 1]), c1 = t.Count(all.words()[i]);
    CHECK((c0 > c1 || (c0 == c1 && all.words()[i - 1] < all.words()[i])));
  }
}

TEST_CASE("lexicon file round trip is byte stable") {
  FrequencyTable t = Table({{"dente", 4}, {"carie", 2}, {"l'igiene", 2}});
  Lexicon lex = BuildLexicon(t, 3);
  std::ostringstream out1, out2;
  WriteLexicon(out1, lex);
  WriteLexicon(out2, BuildLexicon(t, 3));
  CHECK(out1.str() == out2.str());
  CHECK(out1.str() == "dente\t4\ncarie\t2\nl'igiene\t2\n");
  std::istringstream in(out1.str());
  Lexicon back = ReadLexicon(in);
  CHECK(back == lex);
  CHECK(back.counts() == std::vector<std::uint64_t>{4, 2, 2});

  std::istringstream plain("x\ny\n");
  CHECK(ReadLexicon(plain).words() == Tokens{"x", "y"});
  std::istringstream dup("x\nx\n");
  CHECK_THROWS(ReadLexicon(dup));
  std::istringstream bad("x\tmany\n");
  CHECK_THROWS_AS(ReadLexicon(bad), FormatError);
}

TEST_CASE("oov rate") {
  OovRate news{1089, 31001};
  CHECK(news.percent_string() == "3.51");
  CHECK(FormatFixed2(1089, 31001, 100) == "3.51");

  Lexicon lex({"a", "b"});
  Tokens in{"a", "b", "a"};
  CHECK(ComputeOovRate(in, lex).percent_string() == "0.00");
  Tokens ten(10, "z");
  CHECK(ComputeOovRate(ten, Lexicon()).percent_string() == "100.00");
  Tokens none;
  CHECK(ComputeOovRate(none, lex).percent_string() == "0.00");
}

TEST_CASE("half-up rounding at two decimals") {
  CHECK(FormatFixed2(1, 8, 100) == "12.50");   // 12.5 exactly
  CHECK(FormatFixed2(1, 800, 100) == "0.13");  // 0.125 rounds up
  CHECK(FormatFixed2(2, 3, 1) == "0.67");
  CHECK(FormatFixed2(6, 7, 1) == "0.86");
  CHECK(FormatFixed2(0, 0, 100) == "0.00");
}

TEST_CASE("oov curve") {
  FrequencyTable t = Table({{"a", 5}, {"b", 1}});
  Tokens tokens{"a", "z"};
  std::vector<std::size_t> sizes{1, 2};
  auto curve = ComputeOovCurve(tokens, t, sizes);
  REQUIRE(curve.size() == 2);
  CHECK(curve[0].size == 1);
  CHECK(curve[0].rate.percent_string() == "50.00");
  CHECK(curve[1].rate.percent_string() == "50.00");

  Tokens from_table{"a", "b", "a"};
  std::vector<std::size_t> full{2};
  CHECK(ComputeOovCurve(from_table, t, full)[0].rate.percent_string() == "0.00");

  std::vector<std::size_t> bad{2, 2};
  CHECK_THROWS_AS(ComputeOovCurve(tokens, t, bad), std::invalid_argument);
  std::vector<std::size_t> zero{0};
  CHECK_THROWS_AS(ComputeOovCurve(tokens, t, zero), std::invalid_argument);

  std::ostringstream csv;
  WriteOovCurveCsv(csv, curve);
  CHECK(csv.str() == "size,oov_percent\n1,50.00\n2,50.00\n");
}

TEST_CASE("oov curve is non-increasing and agrees with direct lexica") {
  std::mt19937 rng(3);
  auto train = RandomDocs(rng, 80, 40);
  auto test = RandomDocs(rng, 20, 50);
  FrequencyTable t = BuildFrequencyTable(train);
  Tokens tokens;
  for (auto &d : test) tokens.insert(tokens.end(), d.tokens.begin(), d.tokens.end());
  std::vector<std::size_t> sizes;
  for (std::size_t k = 1; k <= t.size() + 2; ++k) sizes.push_back(k);
  auto curve = ComputeOovCurve(tokens, t, sizes);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    CHECK(curve[i].rate.oov_count ==
          ComputeOovRate(tokens, BuildLexicon(t, sizes[i])).oov_count);
    if (i > 0) CHECK(curve[i].rate.oov_count <= curve[i - 1].rate.oov_count);
  }
}

TEST_CASE("corpus reader skips invalid utf-8 lines") {
  std::istringstream in("Il dente.\n\xff\xfe bad\r\nLa carie\n\n");
  CorpusReader reader(in, {});
  Document d;
  std::vector<Document> docs;
  while (reader.Next(&d)) docs.push_back(d);
  REQUIRE(docs.size() == 3);
  CHECK(docs[0].id == 1);
  CHECK(docs[0].text == "Il dente.");
  CHECK(docs[0].tokens == Tokens{"il", "dente"});
  CHECK(docs[1].id == 3);
  CHECK(docs[1].tokens == Tokens{"la", "carie"});
  CHECK(docs[2].tokens.empty());
  CHECK(reader.report().lines_skipped_invalid_utf8 == 1);
  CHECK(reader.report().lines_read == 4);
}

TEST_CASE("streaming over files") {
  auto dir = std::filesystem::temp_directory_path() / "seedsel_corpus_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "a.txt") << "a b\n";
  std::ofstream(dir / "b.txt") << "c\n";
  std::vector<std::string> seen;
  auto report = ForEachDocument({(dir / "a.txt").string(), (dir / "b.txt").string()},
                                {}, [&](const Document &d) {
                                  seen.push_back(std::to_string(d.id) + ":" + d.text);
                                });
  CHECK(seen == Tokens{"1:a b", "2:c"});
  CHECK(report.lines_read == 2);
  CHECK_THROWS_AS(ForEachDocument({(dir / "missing.txt").string()}, {},
                                  [](const Document &) {}),
                  std::runtime_error);
  std::filesystem::remove_all(dir);
}
