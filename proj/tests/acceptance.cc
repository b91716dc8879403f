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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "seedsel/arpa.h"
#include "seedsel/pipeline.h"
#include "support/lm_fixtures.h"

using namespace seedsel;
using namespace seedsel::testing;
namespace fs = std::filesystem;
using Words = std::vector<std::string>;
using Clock = std::chrono::steady_clock;

namespace {

const std::string kFixtures = SEEDSEL_FIXTURES;

struct Outcome {
  bool pass = true;
  std::string detail;
  void Expect(bool ok, const std::string &what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

int failures = 0;

void Report(const std::string &id, const std::string &name,
            const std::function<Outcome()> &check) {
  auto start = Clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception &e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!o.pass) ++failures;
  std::cout << fmt::format("{} {:<3} {} ({:.2f}s){}{}\n", o.pass ? "PASS" : "FAIL",
                           id, name, secs, o.detail.empty() ? "" : ": ",
                           o.detail);
}

fs::path Scratch(const std::string &name) {
  fs::path p = fs::temp_directory_path() / ("seedsel_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string Slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// Independent edit distance: full (n+1) x (m+1) table.
std::size_t EditDistance(const Words &a, const Words &b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

// Largest log10 difference over every (stored history, word) pair and the
// empty history, matching words by string.
double MaxConditionalDiff(const NGramModel &a, const NGramModel &b) {
  auto words = a.PredictableWords();
  if (words.size() != b.PredictableWords().size()) return INFINITY;
  auto map_key = [&](std::span<const WordId> k) {
    std::vector<WordId> out;
    for (WordId id : k) out.push_back(*b.vocab().Find(a.vocab().Word(id)));
    return out;
  };
  double worst = 0;
  auto compare = [&](std::span<const WordId> h) {
    auto hb = map_key(h);
    for (WordId w : words) {
      auto wb = b.vocab().Find(a.vocab().Word(w));
      if (!wb) {
        worst = INFINITY;
        return;
      }
      worst = std::max(worst, std::abs(a.Log10Prob(h, w) - b.Log10Prob(hb, *wb)));
    }
  };
  compare({});
  for (int n = 1; n < a.order(); ++n) {
    for (const auto &[k, e] : a.Table(n)) compare(k);
  }
  return worst;
}

// Two-domain synthetic corpus: Zipf-like generic text plus rarer
// "dental" sentences built around a planted technical vocabulary.
struct TwoDomain {
  std::vector<std::string> corpus;
  std::vector<std::string> held_out;  // unseen domain sentences
  std::vector<std::string> glossary;
};

TwoDomain MakeTwoDomain() {
  std::mt19937 rng(2024);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  Words generic;
  for (int i = 0; i < 1500; ++i) generic.push_back(fmt::format("gen{}", i));
  Words function{"il", "la", "di", "che", "e", "per", "con", "un", "una", "del"};
  Words technical;
  for (int i = 0; i < 60; ++i) technical.push_back(fmt::format("odonto{}", i));
  Words verbs{"cura", "rimuove", "controlla", "previene"};

  auto generic_word = [&] {
    // squared uniform favours low indices
    double u = (rng() % 10000) / 10000.0;
    return generic[static_cast<std::size_t>(u * u * generic.size())];
  };
  auto generic_sentence = [&] {
    Words s;
    for (std::size_t k = 6 + pick(8); k > 0; --k) {
      s.push_back(pick(3) == 0 ? function[pick(function.size())] : generic_word());
    }
    return s;
  };
  auto domain_sentence = [&] {
    Words s{"il", "dentista", verbs[pick(verbs.size())], "la",
            technical[pick(technical.size())]};
    s.push_back("con");
    s.push_back(technical[pick(technical.size())]);
    if (pick(2)) {
      s.push_back("e");
      s.push_back(technical[pick(technical.size())]);
    }
    s.push_back(generic_word());
    return s;
  };
  auto render = [](const Words &s) {
    std::string out = JoinTokens(s);
    out[0] = static_cast<char>(std::toupper(out[0]));
    return out + ".";
  };

  TwoDomain t;
  for (int i = 0; i < 3000; ++i) {
    t.corpus.push_back(render(i % 12 == 0 ? domain_sentence() : generic_sentence()));
  }
  for (int i = 0; i < 150; ++i) t.held_out.push_back(render(domain_sentence()));
  for (int i = 0; i < 60; i += 3) t.glossary.push_back(technical[i]);
  return t;
}

void WriteLines(const fs::path &p, const std::vector<std::string> &lines) {
  std::ofstream out(p, std::ios::binary);
  for (const auto &l : lines) out << l << '\n';
}

Words AllTokens(const std::vector<std::string> &lines) {
  Words out;
  for (const auto &l : lines) {
    auto t = Tokenize(l);
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

}  // namespace

int main() {
  Report("1", "scored sample pair reproduces WER and IW figures", [] {
    Outcome o;
    auto start = Clock::now();
    BenchmarkReport r = ScoreBenchmarkFiles(kFixtures + "/sample_ref.txt",
                                            kFixtures + "/sample_hyp.txt");
    double secs = Seconds(start);
    const auto &a = r.alignment;
    o.Expect(a.substitutions == 6 && a.insertions == 1 && a.deletions == 1 &&
                 a.reference_length == 16,
             fmt::format("S={} I={} D={} N={}", a.substitutions, a.insertions,
                         a.deletions, a.reference_length));
    o.Expect(WordErrorRateString(a) == "50.00", "WER " + WordErrorRateString(a));
    std::string iw = r.iw.precision_string() + "/" + r.iw.recall_string() + "/" +
                     r.iw.f_measure_string();
    std::string isol = r.isol_iw.precision_string() + "/" +
                       r.isol_iw.recall_string() + "/" +
                       r.isol_iw.f_measure_string();
    o.Expect(iw == "1.00/0.67/0.80", "IW " + iw);
    o.Expect(isol == "1.00/0.75/0.86", "Isol-IW " + isol);
    o.Expect(secs < 1.0, fmt::format("took {:.3f}s", secs));
    return o;
  });

  Report("2", "minimal IW set cases", [] {
    Outcome o;
    IWSet ab{{"a"}, {"b"}, {"a", "b"}};
    IWSet cde{{"c"}, {"d", "e"}, {"c", "d", "e"}};
    IWSet dce{{"c"}, {"d", "e"}, {"d", "c", "e"}};
    o.Expect(MinimalIWSet(ab) == IWSet{{"a"}, {"b"}}, "(A)(B)(A B)");
    o.Expect(MinimalIWSet(cde) == IWSet{{"c"}, {"d", "e"}}, "(C)(D E)(C D E)");
    o.Expect(MinimalIWSet(dce) == dce, "(C)(D E)(D C E)");
    return o;
  });

  Report("3", "OOV arithmetic 1089/31001 = 3.51%", [] {
    Outcome o;
    OovRate r{1089, 31001};
    o.Expect(r.percent_string() == "3.51", r.percent_string());
    Words tokens(31001, "known");
    for (int i = 0; i < 1089; ++i) tokens[i * 28] = fmt::format("oov{}", i);
    OovRate counted = ComputeOovRate(tokens, Lexicon({"known"}));
    o.Expect(counted.oov_count == 1089 && counted.percent_string() == "3.51",
             "counted " + counted.percent_string());
    return o;
  });

  Report("4a", "normalization before/after adaptation and pruning", [] {
    Outcome o;
    auto start = Clock::now();
    std::mt19937 rng(4001);
    double worst = 0;
    int cases = 0;
    while (cases < 120) {
      int vocab = 2 + static_cast<int>(rng() % 49);
      Sentences bg = RandomSentences(rng, 50, vocab);
      Sentences ad = RandomSentences(rng, 20, vocab);
      Sentences both = bg;
      both.insert(both.end(), ad.begin(), ad.end());
      Lexicon lex = LexiconOf(both, 1 + cases % 3);
      NGramCounts cb = Count(bg, lex, 3), ca = Count(ad, lex, 3);
      if (cb.empty() || ca.empty()) continue;
      ++cases;
      NGramModel base = EstimateModel(cb);
      NGramModel mixed = AdaptModel(cb, ca, 0.1 + 0.8 * (cases % 9) / 8.0);
      for (const NGramModel *m : {&base, &mixed}) {
        worst = std::max(worst, MaxNormalizationError(*m));
        worst = std::max(worst,
                         MaxNormalizationError(PruneModel(*m, PruneConfig::Manageable())));
        worst = std::max(worst, MaxNormalizationError(PruneModel(*m, {{0, 2, 2}, {}})));
        worst = std::max(worst, MaxNormalizationError(PruneModel(*m, {{}, 0.2})));
      }
    }
    double secs = Seconds(start);
    o.Expect(worst <= 1e-6, fmt::format("max |sum - 1| = {:.3g}", worst));
    o.Expect(secs < 30, fmt::format("took {:.1f}s", secs));
    o.detail = o.detail.empty()
                   ? fmt::format("{} cases, max |sum - 1| = {:.2g}", cases, worst)
                   : o.detail;
    return o;
  });

  Report("4b", "lambda 0 / 1 equal the pure models", [] {
    Outcome o;
    std::mt19937 rng(4002);
    double worst = 0;
    int fixtures = 0;
    while (fixtures < 20) {
      Sentences bg = RandomSentences(rng, 40, 30);
      Sentences ad = RandomSentences(rng, 15, 40);
      Sentences both = bg;
      both.insert(both.end(), ad.begin(), ad.end());
      Lexicon lex = LexiconOf(both, 1 + fixtures % 2);
      NGramCounts cb = Count(bg, lex, 3), ca = Count(ad, lex, 3);
      if (cb.empty() || ca.empty()) continue;
      ++fixtures;
      worst = std::max(worst, MaxConditionalDiff(AdaptModel(cb, ca, 0.0), EstimateModel(cb)));
      worst = std::max(worst, MaxConditionalDiff(AdaptModel(cb, ca, 1.0), EstimateModel(ca)));
    }
    o.Expect(worst <= 1e-9, fmt::format("max log10 diff {:.3g}", worst));
    if (o.pass) o.detail = fmt::format("20 fixtures, max log10 diff {:.2g}", worst);
    return o;
  });

  Report("4c", "alignment agrees with a brute-force DP", [] {
    Outcome o;
    std::mt19937 rng(4003);
    int cases = 0;
    for (; cases < 2000; ++cases) {
      Words ref, hyp;
      for (auto k = rng() % 13; k > 0; --k) ref.push_back(std::string(1, 'a' + rng() % 4));
      for (auto k = rng() % 13; k > 0; --k) hyp.push_back(std::string(1, 'a' + rng() % 4));
      AlignmentResult r = Align(ref, hyp);
      std::size_t oracle = EditDistance(ref, hyp);
      if (r.errors() != oracle ||
          r.hits + r.substitutions + r.deletions != ref.size() ||
          r.hits + r.substitutions + r.insertions != hyp.size()) {
        o.Expect(false, fmt::format("case {}: cost {} vs {}", cases, r.errors(), oracle));
        break;
      }
    }
    if (o.pass) o.detail = fmt::format("{} pairs, lengths 0..12", cases);
    return o;
  });

  Report("4d", "adaptation lowers OOV and perplexity on domain text", [] {
    Outcome o;
    auto start = Clock::now();
    TwoDomain data = MakeTwoDomain();
    fs::path dir = Scratch("two_domain");
    WriteLines(dir / "corpus.txt", data.corpus);
    WriteLines(dir / "glossary.txt", data.glossary);

    PipelineConfig c;
    c.corpus_paths = {(dir / "corpus.txt").string()};
    c.glossary_path = (dir / "glossary.txt").string();
    c.base_lexicon_size = 400;
    c.out_dir = (dir / "adapted_run").string();
    Manifest adapted = RunPipeline(c, PipelineMode::kAdapted);
    Lexicon adapted_lex =
        ReadLexiconFile((fs::path(c.out_dir) / "adapted" / "lexicon.txt").string());

    PipelineConfig same_budget = c;
    same_budget.base_lexicon_size = adapted_lex.size();
    same_budget.out_dir = (dir / "baseline_run").string();
    RunPipeline(same_budget, PipelineMode::kBaseline);
    Lexicon baseline_lex = ReadLexiconFile(
        (fs::path(same_budget.out_dir) / "baseline" / "lexicon.txt").string());

    Words held = AllTokens(data.held_out);
    OovRate oov_adapted = ComputeOovRate(held, adapted_lex);
    OovRate oov_baseline = ComputeOovRate(held, baseline_lex);
    o.Expect(adapted_lex.size() == baseline_lex.size(), "lexicon sizes differ");
    o.Expect(oov_adapted.oov_count < oov_baseline.oov_count,
             fmt::format("OOV adapted {}% vs baseline {}%",
                         oov_adapted.percent_string(), oov_baseline.percent_string()));

    Sentences held_sentences;
    for (auto &l : data.held_out) held_sentences.push_back(Tokenize(l));
    auto ppl_at = [&](double lambda) {
      PipelineConfig run = c;
      run.lambda = lambda;
      run.out_dir = (dir / fmt::format("lambda_{}", lambda)).string();
      RunPipeline(run, PipelineMode::kAdapted);
      NGramModel m =
          ReadArpaFile((fs::path(run.out_dir) / "adapted" / "model.arpa").string());
      return ComputePerplexity(m, held_sentences).perplexity;
    };
    // lambda = 0 is the background model over the same (adapted) lexicon
    double background = ppl_at(0.0);
    double best = INFINITY;
    std::string trail;
    for (double lambda : {0.25, 0.5, 0.75}) {
      double p = ppl_at(lambda);
      best = std::min(best, p);
      trail += fmt::format(" {}:{:.1f}", lambda, p);
    }
    o.Expect(best < background,
             fmt::format("ppl background {:.1f}, adapted{}", background, trail));
    double secs = Seconds(start);
    o.Expect(secs < 60, fmt::format("took {:.1f}s", secs));
    if (o.pass) {
      o.detail = fmt::format(
          "seeds {}, selected {}, lexicon {}; OOV {}% vs {}%; ppl {:.1f} ->{}",
          adapted.seeds, adapted.documents_selected, adapted_lex.size(),
          oov_adapted.percent_string(), oov_baseline.percent_string(), background,
          trail);
    }
    return o;
  });

  Report("4e", "expansion extensivity, monotone iterations, neighbour oracle", [] {
    Outcome o;
    EmbeddingTable table = LoadEmbeddingsFile(kFixtures + "/embeddings100.txt");
    o.Expect(table.size() == 100, "fixture table is not 100 words");
    SeedSet initial;
    for (const char *w : {"tartaro", "carie", "dentista", "governo", "partita"}) {
      initial.Add(w, {SeedOrigin::kGlossary, 0});
    }
    SeedSet prev = initial;
    for (std::size_t k = 1; k <= 5; ++k) {
      SeedSet cur = ExpandSemantic(initial, table, {4, k});
      o.Expect(IsSubset(initial, cur), fmt::format("not extensive at i_w={}", k));
      o.Expect(IsSubset(prev, cur), fmt::format("I_{} not within I_{}", k - 1, k));
      prev = cur;
    }
    FrequencyTable dict;
    for (std::size_t i = 0; i < table.size(); ++i) dict.Add(table.Word(i), 1 + i % 7);
    SeedSet morph = ExpandMorphological(prev, dict, {3, 5, 3});
    o.Expect(IsSubset(prev, morph), "morphological expansion not extensive");

    for (std::size_t q = 0; q < table.size(); ++q) {
      std::vector<Neighbor> oracle;
      for (std::size_t i = 0; i < table.size(); ++i) {
        if (i == q) continue;
        auto u = table.Vector(q), v = table.Vector(i);
        double dot = 0, nu = 0, nv = 0;
        for (std::size_t d = 0; d < u.size(); ++d) {
          dot += double(u[d]) * v[d];
          nu += double(u[d]) * u[d];
          nv += double(v[d]) * v[d];
        }
        oracle.push_back({table.Word(i), dot / std::sqrt(nu * nv)});
      }
      std::sort(oracle.begin(), oracle.end(), [](const Neighbor &a, const Neighbor &b) {
        return a.similarity != b.similarity ? a.similarity > b.similarity
                                            : a.word < b.word;
      });
      oracle.resize(10);
      auto got = NearestNeighbors(table.Word(q), table, 10);
      bool same = got.size() == oracle.size();
      for (std::size_t i = 0; same && i < got.size(); ++i) {
        same = got[i].word == oracle[i].word &&
               std::abs(got[i].similarity - oracle[i].similarity) < 1e-9;
      }
      o.Expect(same, "ranking differs for " + table.Word(q));
    }
    return o;
  });

  Report("4f", "ARPA round trip within 1e-6", [] {
    Outcome o;
    std::mt19937 rng(4006);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      Sentences s = RandomSentences(rng, 50, 40);
      Sentences ad = RandomSentences(rng, 10, 40);
      Lexicon lex = LexiconOf(s, 1 + i % 2);
      NGramCounts cs = Count(s, lex, 1 + i % 4);
      NGramModel m = EstimateModel(cs);
      if (i % 3 == 0) m = PruneModel(m, {{0, 2, 2, 2}, {}});
      std::stringstream buf;
      WriteArpa(buf, m);
      NGramModel back = ReadArpa(buf);
      worst = std::max(worst, MaxConditionalDiff(m, back));
      for (int n = 1; n <= m.order(); ++n) {
        o.Expect(back.NumNGrams(n) == m.NumNGrams(n), "entry counts differ");
        for (const auto &[k, e] : m.Table(n)) {
          NGramKey kb;
          for (WordId id : k) kb.push_back(*back.vocab().Find(m.vocab().Word(id)));
          const NGramEntry *eb = back.Find(kb);
          o.Expect(eb != nullptr, "entry lost");
          if (!eb) continue;
          worst = std::max(worst, std::abs(eb->log10_prob - e.log10_prob));
          if (n < m.order()) {
            worst = std::max(worst, std::abs(eb->log10_backoff - e.log10_backoff));
          }
        }
      }
    }
    o.Expect(worst <= 1e-6, fmt::format("max diff {:.3g}", worst));
    if (o.pass) o.detail = fmt::format("20 models, max diff {:.2g}", worst);
    return o;
  });

  Report("4g", "selection monotonicity and purity on 1000 lines", [] {
    Outcome o;
    std::mt19937 rng(4007);
    std::vector<std::string> lines;
    for (int i = 0; i < 1000; ++i) {
      std::string line = i % 7 == 0 ? "  " : "";
      for (auto k = 1 + rng() % 10; k > 0; --k) {
        std::string w = fmt::format("w{}", rng() % 300);
        if (rng() % 5 == 0) w[0] = 'W';
        line += w + (rng() % 6 == 0 ? ", " : " ");
      }
      lines.push_back(line);
    }
    fs::path dir = Scratch("selection");
    WriteLines(dir / "corpus.txt", lines);
    std::vector<Document> docs;
    ForEachDocument({(dir / "corpus.txt").string()}, {},
                    [&](const Document &d) { docs.push_back(d); });
    o.Expect(docs.size() == 1000, "corpus size");

    FrequencyTable t = BuildFrequencyTable(docs);
    Lexicon base = BuildLexicon(t, 150);
    Words pool;
    for (int i = 0; i < 300; i += 7) pool.push_back(fmt::format("w{}", i));

    std::set<std::uint64_t> previous;
    for (std::size_t size = 0; size <= pool.size(); size += 5) {
      SeedSet seeds;
      for (std::size_t i = 0; i < size; ++i) seeds.Add(pool[i], {});
      std::set<std::string> triggers;
      for (auto &w : seeds.Words())
        if (!base.Contains(w)) triggers.insert(w);
      auto selected = SelectDocuments(docs, seeds, base);
      std::set<std::uint64_t> ids;
      for (const auto &d : selected) {
        ids.insert(d.id);
        o.Expect(d.text == lines[d.id - 1], "selected text differs from the original");
      }
      for (const auto &d : docs) {
        bool has = std::any_of(d.tokens.begin(), d.tokens.end(),
                               [&](const std::string &x) { return triggers.count(x); });
        o.Expect(has == ids.count(d.id) > 0,
                 fmt::format("document {} misclassified", d.id));
      }
      o.Expect(std::includes(ids.begin(), ids.end(), previous.begin(), previous.end()),
               "selection shrank when seeds grew");
      previous = ids;
    }
    if (o.pass) o.detail = fmt::format("final selection {} documents", previous.size());
    return o;
  });

  Report("5", "pipeline reruns give byte-identical manifests", [] {
    Outcome o;
    TwoDomain data = MakeTwoDomain();
    fs::path dir = Scratch("determinism");
    WriteLines(dir / "corpus.txt", data.corpus);
    WriteLines(dir / "glossary.txt", data.glossary);
    for (const char *run : {"a", "b"}) {
      PipelineConfig c;
      c.corpus_paths = {(dir / "corpus.txt").string()};
      c.glossary_path = (dir / "glossary.txt").string();
      c.base_lexicon_size = 400;
      c.prune = true;
      c.out_dir = (dir / run).string();
      RunPipeline(c, PipelineMode::kBaseline);
      RunPipeline(c, PipelineMode::kAdapted);
      PipelineConfig w = LoadPipelineConfig(kFixtures + "/pipeline.ini");
      w.out_dir = c.out_dir;
      w.threads = run[0] == 'a' ? 1 : 4;
      RunPipeline(w, PipelineMode::kWord2Vec);
    }
    for (const char *mode : {"baseline", "adapted", "word2vec"}) {
      std::string a = Slurp(dir / "a" / mode / "manifest.json");
      std::string b = Slurp(dir / "b" / mode / "manifest.json");
      o.Expect(!a.empty() && a == b, std::string(mode) + " manifests differ");
    }
    return o;
  });

  std::cout << (failures == 0 ? "all criteria passed\n"
                              : fmt::format("{} criteria failed\n", failures));
  return failures == 0 ? 0 : 1;
}
