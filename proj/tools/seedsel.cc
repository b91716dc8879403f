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

// Command-line front end: one subcommand per processing step, plus the
// end-to-end pipeline and the consolidated report.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "seedsel/arpa.h"
#include "seedsel/common.h"
#include "seedsel/corpus.h"
#include "seedsel/embeddings.h"
#include "seedsel/lm.h"
#include "seedsel/pipeline.h"
#include "seedsel/scoring.h"
#include "seedsel/seeds.h"
#include "seedsel/selection.h"
#include "seedsel/transcript.h"

namespace {

using namespace seedsel;

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::ofstream OpenOut(const std::string &path) {
  auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

// Writes to `path`, or stdout when it is empty or "-".
void Emit(const std::string &path, const std::string &content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  auto out = OpenOut(path);
  out << content;
}

std::vector<std::vector<std::string>> ReadSentences(
    const std::vector<std::string> &paths, const TokenizerConfig &tok) {
  std::vector<std::vector<std::string>> out;
  ForEachDocument(paths, tok,
                  [&](const Document &d) { out.push_back(d.tokens); });
  return out;
}

NGramCounts ReadCountsFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  return ReadCounts(in, path);
}

struct TokenizerFlags {
  bool no_lowercase = false;
  bool split_apostrophe = false;
  void Attach(CLI::App *app) {
    app->add_flag("--no-lowercase", no_lowercase, "Keep original case");
    app->add_flag("--split-apostrophe", split_apostrophe,
                  "Split clitics after an apostrophe (l'igiene -> l' igiene)");
  }
  TokenizerConfig Get() const { return {!no_lowercase, split_apostrophe}; }
};

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Seed-based adaptation-text selection and LM adaptation"};
  app.require_subcommand(1);
  std::function<void()> action;

  // lexicon
  TokenizerFlags lex_tok;
  std::vector<std::string> lex_corpus;
  std::size_t lex_size = 128000;
  std::string lex_out, lex_dict;
  auto *lexicon = app.add_subcommand("lexicon", "Top-N lexicon of a corpus");
  lexicon->add_option("--corpus", lex_corpus, "Corpus files")->required();
  lexicon->add_option("--lexicon-size", lex_size, "Lexicon size N")
      ->check(CLI::PositiveNumber);
  lexicon->add_option("--out", lex_out, "Lexicon output (default stdout)");
  lexicon->add_option("--dictionary", lex_dict,
                      "Also write every corpus word with its count");
  lex_tok.Attach(lexicon);
  lexicon->callback([&] {
    action = [&] {
      FrequencyTable table;
      ForEachDocument(lex_corpus, lex_tok.Get(),
                      [&](const Document &d) { table.AddTokens(d.tokens); });
      std::ostringstream out;
      WriteLexicon(out, BuildLexicon(table, lex_size));
      Emit(lex_out, out.str());
      if (!lex_dict.empty()) {
        std::vector<std::string> words;
        std::vector<std::uint64_t> counts;
        for (auto &[w, c] : table.Ranked()) {
          words.push_back(w);
          counts.push_back(c);
        }
        std::ostringstream dict;
        WriteLexicon(dict, Lexicon(std::move(words), std::move(counts)));
        Emit(lex_dict, dict.str());
      }
    };
  });

  // oov
  TokenizerFlags oov_tok;
  std::string oov_lexicon;
  std::vector<std::string> oov_text;
  auto *oov = app.add_subcommand("oov", "OOV rate of a text against a lexicon");
  oov->add_option("--lexicon", oov_lexicon)->required();
  oov->add_option("--text", oov_text)->required();
  oov_tok.Attach(oov);
  oov->callback([&] {
    action = [&] {
      Lexicon lex = ReadLexiconFile(oov_lexicon);
      std::vector<std::string> tokens;
      for (auto &s : ReadSentences(oov_text, oov_tok.Get())) {
        tokens.insert(tokens.end(), s.begin(), s.end());
      }
      OovRate r = ComputeOovRate(tokens, lex);
      std::cout << fmt::format("oov={} running_words={} oov_rate={}%\n",
                               r.oov_count, r.running_words,
                               r.percent_string());
    };
  });

  // oov-curve
  TokenizerFlags curve_tok;
  std::vector<std::string> curve_corpus, curve_text;
  std::vector<std::size_t> curve_sizes;
  std::string curve_out;
  auto *curve = app.add_subcommand("oov-curve", "OOV rate versus lexicon size");
  curve->add_option("--corpus", curve_corpus, "Corpus the lexica come from")
      ->required();
  curve->add_option("--text", curve_text, "Evaluation text")->required();
  curve->add_option("--sizes", curve_sizes, "Increasing lexicon sizes")
      ->required()
      ->delimiter(',');
  curve->add_option("--out", curve_out, "CSV output (default stdout)");
  curve_tok.Attach(curve);
  curve->callback([&] {
    action = [&] {
      FrequencyTable table;
      ForEachDocument(curve_corpus, curve_tok.Get(),
                      [&](const Document &d) { table.AddTokens(d.tokens); });
      std::vector<std::string> tokens;
      for (auto &s : ReadSentences(curve_text, curve_tok.Get())) {
        tokens.insert(tokens.end(), s.begin(), s.end());
      }
      std::ostringstream out;
      WriteOovCurveCsv(out, ComputeOovCurve(tokens, table, curve_sizes));
      Emit(curve_out, out.str());
    };
  });

  // seeds
  TokenizerFlags seeds_tok;
  std::string seeds_glossary, seeds_lexicon, seeds_out;
  auto *seeds = app.add_subcommand("seeds", "Glossary words missing from a lexicon");
  seeds->add_option("--glossary", seeds_glossary)->required();
  seeds->add_option("--lexicon", seeds_lexicon, "Base lexicon")->required();
  seeds->add_option("--out", seeds_out);
  seeds_tok.Attach(seeds);
  seeds->callback([&] {
    action = [&] {
      SeedSet s = ExtractSeeds(ReadGlossaryFile(seeds_glossary, seeds_tok.Get()),
                               ReadLexiconFile(seeds_lexicon));
      std::ostringstream out;
      WriteSeedSet(out, s);
      Emit(seeds_out, out.str());
    };
  });

  // expand-morph
  TokenizerFlags morph_tok;
  std::string morph_seeds, morph_out;
  std::vector<std::string> morph_corpus;
  MorphConfig morph_cfg;
  morph_cfg.n_m = 3;
  auto *morph = app.add_subcommand("expand-morph",
                                   "Add frequent words sharing a seed's stem");
  morph->add_option("--seeds", morph_seeds)->required();
  morph->add_option("--corpus", morph_corpus, "Corpus for the dictionary")
      ->required();
  morph->add_option("--n-m", morph_cfg.n_m, "Words added per seed");
  morph->add_option("--l-m", morph_cfg.l_m, "Minimal stem length")
      ->check(CLI::PositiveNumber);
  morph->add_option("--suffix-strip", morph_cfg.suffix_strip,
                    "Characters stripped to form the stem");
  morph->add_option("--out", morph_out);
  morph_tok.Attach(morph);
  morph->callback([&] {
    action = [&] {
      FrequencyTable dict;
      ForEachDocument(morph_corpus, morph_tok.Get(),
                      [&](const Document &d) { dict.AddTokens(d.tokens); });
      std::ostringstream out;
      WriteSeedSet(out, ExpandMorphological(ReadSeedSetFile(morph_seeds), dict,
                                            morph_cfg));
      Emit(morph_out, out.str());
    };
  });

  // expand-w2v
  std::string w2v_seeds, w2v_embeddings, w2v_out;
  std::vector<std::string> w2v_words;
  SemanticConfig w2v_cfg{40, 2};
  unsigned w2v_threads = 1;
  auto *w2v = app.add_subcommand("expand-w2v",
                                 "Iterated embedding-neighbour expansion");
  auto *w2v_seeds_opt = w2v->add_option("--seeds", w2v_seeds, "Seed file");
  w2v->add_option("--words", w2v_words, "Initial seed words")
      ->delimiter(',')
      ->excludes(w2v_seeds_opt);
  w2v->add_option("--embeddings", w2v_embeddings, "word2vec text file")
      ->required();
  w2v->add_option("--n-w", w2v_cfg.n_w, "Neighbours per word");
  w2v->add_option("--i-w", w2v_cfg.i_w, "Iterations")->check(CLI::PositiveNumber);
  w2v->add_option("--threads", w2v_threads)->check(CLI::PositiveNumber);
  w2v->add_option("--out", w2v_out);
  w2v->callback([&] {
    action = [&] {
      SeedSet initial;
      if (!w2v_seeds.empty()) {
        initial = ReadSeedSetFile(w2v_seeds);
      } else {
        for (auto &w : w2v_words) {
          for (auto &t : Tokenize(w)) initial.Add(t, {SeedOrigin::kGlossary, 0});
        }
      }
      if (initial.empty()) throw ValidationError("no initial seed words");
      SemanticReport report;
      SeedSet out_set = ExpandSemantic(initial, LoadEmbeddingsFile(w2v_embeddings),
                                       w2v_cfg, &report, w2v_threads);
      for (auto &m : report.missing) {
        std::cerr << "warning: '" << m << "' has no embedding\n";
      }
      std::ostringstream out;
      WriteSeedSet(out, out_set);
      Emit(w2v_out, out.str());
    };
  });

  // select
  TokenizerFlags sel_tok;
  std::vector<std::string> sel_corpus;
  std::string sel_seeds, sel_lexicon, sel_out, sel_report;
  std::optional<std::size_t> sel_window;
  auto *select = app.add_subcommand("select",
                                    "Corpus lines containing a trigger seed");
  select->add_option("--corpus", sel_corpus)->required();
  select->add_option("--seeds", sel_seeds)->required();
  select->add_option("--lexicon", sel_lexicon, "Base lexicon")->required();
  select->add_option("--context-window", sel_window,
                     "Keep only this many tokens around each hit");
  select->add_option("--out", sel_out, "Adaptation text (default stdout)");
  select->add_option("--report", sel_report, "Selection statistics (JSON)");
  sel_tok.Attach(select);
  select->callback([&] {
    action = [&] {
      DocumentSelector selector(ReadSeedSetFile(sel_seeds),
                                ReadLexiconFile(sel_lexicon));
      SelectionReport report = selector.NewReport();
      std::ostringstream out;
      ForEachDocument(sel_corpus, sel_tok.Get(), [&](const Document &d) {
        if (!selector.Matches(d, &report)) return;
        if (!sel_window) {
          out << d.text << '\n';
          return;
        }
        for (auto span : selector.ContextSpans(d.tokens, *sel_window)) {
          out << JoinTokens({d.tokens.begin() + span.begin,
                             d.tokens.begin() + span.end})
              << '\n';
        }
      });
      Emit(sel_out, out.str());
      for (auto &w : report.warnings) std::cerr << "warning: " << w << '\n';
      if (!sel_report.empty()) Emit(sel_report, report.ToJson());
    };
  });

  // count
  TokenizerFlags count_tok;
  std::vector<std::string> count_corpus;
  std::string count_lexicon, count_out;
  int count_order = 3;
  auto *count = app.add_subcommand("count", "N-gram counts of a corpus");
  count->add_option("--corpus", count_corpus)->required();
  count->add_option("--lexicon", count_lexicon)->required();
  count->add_option("--order", count_order)->check(CLI::Range(1, 10));
  count->add_option("--out", count_out);
  count_tok.Attach(count);
  count->callback([&] {
    action = [&] {
      NGramCounter counter(ReadLexiconFile(count_lexicon), count_order);
      ForEachDocument(count_corpus, count_tok.Get(),
                      [&](const Document &d) { counter.AddSentence(d.tokens); });
      std::ostringstream out;
      WriteCounts(out, counter.counts());
      Emit(count_out, out.str());
    };
  });

  // train
  std::string train_counts, train_out;
  bool train_prune = false;
  auto *train = app.add_subcommand("train", "Witten-Bell backoff model from counts");
  train->add_option("--counts", train_counts)->required();
  train->add_option("--out", train_out, "ARPA output (default stdout)");
  train->add_flag("--prune", train_prune, "Prune with thresholds (0, 1, 1)");
  train->callback([&] {
    action = [&] {
      NGramModel model = EstimateModel(ReadCountsFile(train_counts));
      if (train_prune) model = PruneModel(model, PruneConfig::Manageable());
      std::ostringstream out;
      WriteArpa(out, model);
      Emit(train_out, out.str());
    };
  });

  // adapt
  std::string adapt_bg, adapt_ad, adapt_out;
  double adapt_lambda = 0.5;
  bool adapt_prune = false;
  auto *adapt = app.add_subcommand(
      "adapt", "Interpolate background and adaptation counts, then estimate");
  adapt->add_option("--background", adapt_bg, "Background counts")->required();
  adapt->add_option("--adaptation", adapt_ad, "Adaptation counts")->required();
  adapt->add_option("--lambda", adapt_lambda)->check(CLI::Range(0.0, 1.0));
  adapt->add_flag("--prune", adapt_prune, "Prune with thresholds (0, 1, 1)");
  adapt->add_option("--out", adapt_out);
  adapt->callback([&] {
    action = [&] {
      NGramModel model = AdaptModel(ReadCountsFile(adapt_bg),
                                    ReadCountsFile(adapt_ad), adapt_lambda);
      if (adapt_prune) model = PruneModel(model, PruneConfig::Manageable());
      std::ostringstream out;
      WriteArpa(out, model);
      Emit(adapt_out, out.str());
    };
  });

  // prune
  std::string prune_counts, prune_model, prune_out;
  std::vector<double> prune_thresholds;
  std::optional<double> prune_prob;
  auto *prune = app.add_subcommand("prune", "Drop rare or improbable n-grams");
  auto *prune_counts_opt =
      prune->add_option("--counts", prune_counts, "Estimate from these counts");
  prune->add_option("--model", prune_model, "ARPA model (probability rule only)")
      ->excludes(prune_counts_opt);
  prune->add_option("--min-counts", prune_thresholds,
                    "Per-order count thresholds, default 0,1,1")
      ->delimiter(',');
  prune->add_option("--min-prob", prune_prob, "Probability threshold");
  prune->add_option("--out", prune_out);
  prune->callback([&] {
    action = [&] {
      PruneConfig config;
      if (!prune_thresholds.empty()) {
        config.min_counts = prune_thresholds;
      } else if (!prune_counts.empty()) {
        config = PruneConfig::Manageable();
      }
      config.min_prob = prune_prob;
      NGramModel model;
      if (!prune_counts.empty()) {
        model = EstimateModel(ReadCountsFile(prune_counts));
      } else if (!prune_model.empty()) {
        model = ReadArpaFile(prune_model);
      } else {
        throw ValidationError("give --counts or --model");
      }
      std::ostringstream out;
      WriteArpa(out, PruneModel(model, config));
      Emit(prune_out, out.str());
    };
  });

  // ppl
  TokenizerFlags ppl_tok;
  std::string ppl_model;
  std::vector<std::string> ppl_text;
  auto *ppl = app.add_subcommand("ppl", "Perplexity of a text");
  ppl->add_option("--model", ppl_model, "ARPA model")->required();
  ppl->add_option("--text", ppl_text)->required();
  ppl_tok.Attach(ppl);
  ppl->callback([&] {
    action = [&] {
      NGramModel model = ReadArpaFile(ppl_model);
      auto sentences = ReadSentences(ppl_text, ppl_tok.Get());
      PerplexityResult r = ComputePerplexity(model, sentences);
      std::cout << fmt::format(
          "sentences={} events={} oov_mapped={} logprob={:.6f} ppl={:.4f}\n",
          r.sentences, r.events, r.oov_mapped, r.log10_prob_total,
          r.perplexity);
    };
  });

  // score
  TokenizerFlags score_tok;
  std::string score_ref, score_hyp, score_lexicon, score_json;
  bool score_corpus = false;
  auto *score = app.add_subcommand("score", "WER and IW scores of a hypothesis");
  score->add_option("--ref", score_ref)->required();
  score->add_option("--hyp", score_hyp)->required();
  score->add_option("--lexicon", score_lexicon, "Adds the reference OOV rate");
  score->add_option("--json", score_json, "Also write the JSON report");
  score->add_flag("--corpus-scope", score_corpus,
                  "Match IW items over the whole text");
  score_tok.Attach(score);
  score->callback([&] {
    action = [&] {
      ScoreOptions options;
      options.tokenizer = score_tok.Get();
      options.corpus_scope = score_corpus;
      std::optional<Lexicon> lex;
      if (!score_lexicon.empty()) {
        lex = ReadLexiconFile(score_lexicon);
        options.lexicon = &*lex;
      }
      BenchmarkReport r = ScoreBenchmarkFiles(score_ref, score_hyp, options);
      for (auto &w : r.warnings) std::cerr << "warning: " << w << '\n';
      std::cout << r.ToTable();
      if (!score_json.empty()) Emit(score_json, r.ToJson());
    };
  });

  // pipeline
  TokenizerFlags pipe_tok;
  std::string pipe_config, pipe_mode = "baseline", pipe_glossary,
                           pipe_embeddings, pipe_out_dir;
  std::vector<std::string> pipe_corpus, pipe_seed_words;
  std::optional<std::size_t> pipe_lex_size, pipe_n_m, pipe_l_m, pipe_n_w,
      pipe_i_w, pipe_window;
  std::optional<double> pipe_lambda;
  std::optional<std::uint64_t> pipe_f_min;
  std::optional<unsigned> pipe_threads;
  bool pipe_prune = false;
  auto *pipeline = app.add_subcommand("pipeline", "Run a complete experiment");
  pipeline->add_option("--config", pipe_config, "Config file")
      ->check(CLI::ExistingFile);
  pipeline->add_option("--mode", pipe_mode)
      ->check(CLI::IsMember({"baseline", "adapted", "word2vec"}));
  pipeline->add_option("--corpus", pipe_corpus);
  pipeline->add_option("--glossary", pipe_glossary);
  pipeline->add_option("--embeddings", pipe_embeddings);
  pipeline->add_option("--seed-words", pipe_seed_words,
                       "Initial seeds for word2vec mode")
      ->delimiter(',');
  pipeline->add_option("--lexicon-size", pipe_lex_size);
  pipeline->add_option("--lambda", pipe_lambda);
  pipeline->add_option("--n-m", pipe_n_m);
  pipeline->add_option("--l-m", pipe_l_m);
  pipeline->add_option("--n-w", pipe_n_w);
  pipeline->add_option("--i-w", pipe_i_w);
  pipeline->add_option("--f-min", pipe_f_min);
  pipeline->add_option("--out-dir", pipe_out_dir);
  pipeline->add_option("--context-window", pipe_window);
  pipeline->add_option("--threads", pipe_threads);
  pipeline->add_flag("--prune", pipe_prune, "Prune with thresholds (0, 1, 1)");
  pipe_tok.Attach(pipeline);
  pipeline->callback([&] {
    action = [&] {
      PipelineConfig config;
      if (!pipe_config.empty()) {
        try {
          config = LoadPipelineConfig(pipe_config);
        } catch (const std::invalid_argument &e) {
          throw ValidationError(e.what());
        }
      }
      if (!pipe_corpus.empty()) config.corpus_paths = pipe_corpus;
      if (!pipe_glossary.empty()) config.glossary_path = pipe_glossary;
      if (!pipe_embeddings.empty()) config.embeddings_path = pipe_embeddings;
      if (!pipe_seed_words.empty()) config.initial_seeds = pipe_seed_words;
      if (pipe_lex_size) config.base_lexicon_size = *pipe_lex_size;
      if (pipe_lambda) config.lambda = *pipe_lambda;
      if (pipe_n_m) config.morph.n_m = *pipe_n_m;
      if (pipe_l_m) config.morph.l_m = *pipe_l_m;
      if (pipe_n_w) config.semantic.n_w = *pipe_n_w;
      if (pipe_i_w) config.semantic.i_w = *pipe_i_w;
      if (pipe_f_min) config.f_min = *pipe_f_min;
      if (!pipe_out_dir.empty()) config.out_dir = pipe_out_dir;
      if (pipe_window) config.selection.context_window = *pipe_window;
      if (pipe_threads) config.threads = *pipe_threads;
      if (pipe_prune) config.prune = true;
      if (pipe_tok.no_lowercase) config.tokenizer.lowercase = false;
      if (pipe_tok.split_apostrophe) config.tokenizer.split_apostrophe = true;

      PipelineMode mode = ParseMode(pipe_mode);
      auto errors = ValidateConfig(config, mode);
      if (!errors.empty()) {
        for (auto &e : errors) std::cerr << "error: " << e << '\n';
        throw ValidationError("invalid configuration");
      }
      Manifest m = RunPipeline(config, mode);
      std::cout << fmt::format(
          "{}: {} artifacts in {}/{} (seeds={} selected={} lexicon={} "
          "ngrams={})\n",
          m.mode, m.artifacts.size(), config.out_dir, m.mode, m.seeds,
          m.documents_selected, m.lexicon_size, m.ngrams);
    };
  });

  // report
  TokenizerFlags rep_tok;
  std::vector<std::string> rep_runs, rep_hyps;
  std::string rep_ref, rep_csv, rep_json;
  auto *report = app.add_subcommand("report", "One score row per pipeline run");
  report->add_option("--run", rep_runs, "Pipeline output directories")
      ->required();
  report->add_option("--ref", rep_ref, "Benchmark reference")->required();
  report->add_option("--hyp", rep_hyps,
                     "Hypothesis per run (or one for all runs)")
      ->required();
  report->add_option("--csv", rep_csv, "CSV output (default stdout)");
  report->add_option("--json", rep_json, "JSON output");
  rep_tok.Attach(report);
  report->callback([&] {
    action = [&] {
      auto rows = EmitReport(rep_runs, rep_ref, rep_hyps, rep_tok.Get());
      Emit(rep_csv, ReportCsv(rows));
      if (!rep_json.empty()) Emit(rep_json, ReportJson(rows));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    action();
  } catch (const FormatError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
