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

#include "seedsel/pipeline.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <openssl/evp.h>

#include "json.hpp"
#include "seedsel/arpa.h"
#include "seedsel/common.h"

namespace seedsel {

namespace fs = std::filesystem;

std::string ModeName(PipelineMode mode) {
  switch (mode) {
    case PipelineMode::kBaseline:
      return "baseline";
    case PipelineMode::kAdapted:
      return "adapted";
    case PipelineMode::kWord2Vec:
      return "word2vec";
  }
  return "baseline";
}

PipelineMode ParseMode(const std::string &name) {
  if (name == "baseline") return PipelineMode::kBaseline;
  if (name == "adapted") return PipelineMode::kAdapted;
  if (name == "word2vec") return PipelineMode::kWord2Vec;
  throw std::invalid_argument("unknown mode '" + name + "'");
}

namespace {

std::vector<std::string> SplitList(const std::string &value) {
  std::vector<std::string> out;
  std::string item;
  for (char c : value + ",") {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!item.empty()) out.push_back(std::move(item));
      item.clear();
    } else {
      item.push_back(c);
    }
  }
  return out;
}

template <typename T>
T ParseValue(const std::string &key, const std::string &value) {
  std::istringstream in(value);
  T out{};
  in >> out;
  if (!in || !(in >> std::ws).eof()) {
    throw std::invalid_argument("bad value for " + key + ": '" + value + "'");
  }
  return out;
}

bool ParseBool(const std::string &key, const std::string &value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw std::invalid_argument("bad boolean for " + key + ": '" + value + "'");
}

std::string ResolvePath(const fs::path &base, const std::string &p) {
  if (p.empty() || fs::path(p).is_absolute()) return p;
  return (base / p).lexically_normal().string();
}

void WriteTextFile(const fs::path &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("error writing " + path.string());
}

}  // namespace

PipelineConfig LoadPipelineConfig(const std::string &path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error &e) {
    throw std::invalid_argument(e.what());
  }
  const fs::path base = fs::path(path).parent_path();
  PipelineConfig config;
  for (const auto &[section, body] : tree) {
    for (const auto &[key, node] : body) {
      const std::string name = section + "." + key;
      const std::string value = node.get_value<std::string>();
      if (name == "corpus.files") {
        config.corpus_paths.clear();
        for (const auto &p : SplitList(value)) {
          config.corpus_paths.push_back(ResolvePath(base, p));
        }
      } else if (name == "corpus.lowercase") {
        config.tokenizer.lowercase = ParseBool(name, value);
      } else if (name == "corpus.split_apostrophe") {
        config.tokenizer.split_apostrophe = ParseBool(name, value);
      } else if (name == "lexicon.size") {
        config.base_lexicon_size = ParseValue<std::size_t>(name, value);
      } else if (name == "lm.order") {
        config.order = ParseValue<int>(name, value);
      } else if (name == "lm.lambda") {
        config.lambda = ParseValue<double>(name, value);
      } else if (name == "lm.prune") {
        config.prune = ParseBool(name, value);
      } else if (name == "lm.prune_counts") {
        config.prune_config.min_counts.clear();
        for (const auto &v : SplitList(value)) {
          config.prune_config.min_counts.push_back(ParseValue<double>(name, v));
        }
      } else if (name == "lm.prune_prob") {
        config.prune_config.min_prob = ParseValue<double>(name, value);
      } else if (name == "adapted.glossary") {
        config.glossary_path = ResolvePath(base, value);
      } else if (name == "adapted.f_min") {
        config.f_min = ParseValue<std::uint64_t>(name, value);
      } else if (name == "morph.n_m") {
        config.morph.n_m = ParseValue<std::size_t>(name, value);
      } else if (name == "morph.l_m") {
        config.morph.l_m = ParseValue<std::size_t>(name, value);
      } else if (name == "morph.suffix_strip") {
        config.morph.suffix_strip = ParseValue<std::size_t>(name, value);
      } else if (name == "word2vec.embeddings") {
        config.embeddings_path = ResolvePath(base, value);
      } else if (name == "word2vec.seeds") {
        config.initial_seeds = SplitList(value);
      } else if (name == "word2vec.n_w") {
        config.semantic.n_w = ParseValue<std::size_t>(name, value);
      } else if (name == "word2vec.i_w") {
        config.semantic.i_w = ParseValue<std::size_t>(name, value);
      } else if (name == "selection.context_window") {
        if (value.empty() || value == "none") {
          config.selection.context_window.reset();
        } else {
          config.selection.context_window = ParseValue<std::size_t>(name, value);
        }
      } else if (name == "output.dir") {
        config.out_dir = ResolvePath(base, value);
      } else if (name == "run.threads") {
        config.threads = ParseValue<unsigned>(name, value);
      } else {
        throw std::invalid_argument("unknown config key " + name);
      }
    }
  }
  return config;
}

std::vector<std::string> ValidateConfig(const PipelineConfig &config,
                                        PipelineMode mode) {
  std::vector<std::string> errors;
  if (config.corpus_paths.empty()) errors.push_back("no corpus files given");
  for (const auto &p : config.corpus_paths) {
    if (!fs::is_regular_file(p)) errors.push_back("corpus file not found: " + p);
  }
  if (config.base_lexicon_size == 0) errors.push_back("lexicon size must be >= 1");
  if (config.order < 1) errors.push_back("n-gram order must be >= 1");
  if (!(config.lambda >= 0 && config.lambda <= 1)) {
    errors.push_back("lambda must lie in [0, 1]");
  }
  if (config.f_min == 0) errors.push_back("f_min must be >= 1");
  if (config.morph.l_m == 0) errors.push_back("l_m must be >= 1");
  for (double c : config.prune_config.min_counts) {
    if (c < 0) errors.push_back("prune thresholds must be >= 0");
  }
  if (config.out_dir.empty()) errors.push_back("no output directory");
  if (mode == PipelineMode::kAdapted) {
    if (config.glossary_path.empty()) {
      errors.push_back("adapted mode needs a glossary");
    } else if (!fs::is_regular_file(config.glossary_path)) {
      errors.push_back("glossary not found: " + config.glossary_path);
    }
  }
  if (mode == PipelineMode::kWord2Vec) {
    if (config.embeddings_path.empty()) {
      errors.push_back("word2vec mode needs embeddings");
    } else if (!fs::is_regular_file(config.embeddings_path)) {
      errors.push_back("embeddings not found: " + config.embeddings_path);
    }
    if (config.initial_seeds.empty()) {
      errors.push_back("word2vec mode needs initial seed words");
    }
    if (config.semantic.i_w == 0) errors.push_back("i_w must be >= 1");
  }
  return errors;
}

std::string Sha256File(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  EVP_MD_CTX *ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string Manifest::ToJson() const {
  nlohmann::ordered_json j;
  j["mode"] = mode;
  j["summary"] = {{"corpus_lines", corpus_lines},
                  {"corpus_lines_skipped", corpus_lines_skipped},
                  {"corpus_running_words", corpus_running_words},
                  {"seeds", seeds},
                  {"triggering_seeds", triggering_seeds},
                  {"documents_selected", documents_selected},
                  {"lexicon_size", lexicon_size},
                  {"ngrams", ngrams}};
  j["artifacts"] = nlohmann::ordered_json::array();
  for (const auto &a : artifacts) {
    j["artifacts"].push_back(
        {{"path", a.path}, {"bytes", a.bytes}, {"sha256", a.sha256}});
  }
  return j.dump(2) + "\n";
}

Manifest Manifest::FromJson(const std::string &text) {
  auto j = nlohmann::json::parse(text);
  Manifest m;
  m.mode = j.at("mode").get<std::string>();
  const auto &s = j.at("summary");
  m.corpus_lines = s.at("corpus_lines").get<std::uint64_t>();
  m.corpus_lines_skipped = s.at("corpus_lines_skipped").get<std::uint64_t>();
  m.corpus_running_words = s.at("corpus_running_words").get<std::uint64_t>();
  m.seeds = s.at("seeds").get<std::uint64_t>();
  m.triggering_seeds = s.at("triggering_seeds").get<std::uint64_t>();
  m.documents_selected = s.at("documents_selected").get<std::uint64_t>();
  m.lexicon_size = s.at("lexicon_size").get<std::uint64_t>();
  m.ngrams = s.at("ngrams").get<std::uint64_t>();
  for (const auto &a : j.at("artifacts")) {
    m.artifacts.push_back({a.at("path").get<std::string>(),
                           a.at("bytes").get<std::uint64_t>(),
                           a.at("sha256").get<std::string>()});
  }
  return m;
}

const Artifact *Manifest::Find(const std::string &path) const {
  for (const auto &a : artifacts) {
    if (a.path == path) return &a;
  }
  return nullptr;
}

Manifest RunPipeline(const PipelineConfig &config, PipelineMode mode) {
  auto errors = ValidateConfig(config, mode);
  if (!errors.empty()) {
    std::string joined;
    for (const auto &e : errors) joined += (joined.empty() ? "" : "; ") + e;
    throw std::invalid_argument(joined);
  }
  const fs::path dir = fs::path(config.out_dir) / ModeName(mode);
  fs::create_directories(dir);

  Manifest manifest;
  manifest.mode = ModeName(mode);
  auto record = [&](const std::string &name) {
    fs::path p = dir / name;
    manifest.artifacts.push_back(
        {name, static_cast<std::uint64_t>(fs::file_size(p)),
         Sha256File(p.string())});
  };

  // Pass 1: the full corpus dictionary and the base lexicon.
  FrequencyTable dictionary;
  IngestReport ingest = ForEachDocument(
      config.corpus_paths, config.tokenizer,
      [&](const Document &doc) { dictionary.AddTokens(doc.tokens); });
  manifest.corpus_lines = ingest.lines_read;
  manifest.corpus_lines_skipped = ingest.lines_skipped_invalid_utf8;
  manifest.corpus_running_words = dictionary.total_running_words();
  Lexicon base = BuildLexicon(dictionary, config.base_lexicon_size);

  auto count_background = [&](const Lexicon &lexicon) {
    NGramCounter counter(lexicon, config.order);
    ForEachDocument(config.corpus_paths, config.tokenizer,
                    [&](const Document &doc) { counter.AddSentence(doc.tokens); });
    return counter.Release();
  };
  auto finish_model = [&](NGramModel model) {
    if (config.prune) model = PruneModel(model, config.prune_config);
    WriteArpaFile((dir / "model.arpa").string(), model);
    for (int n = 1; n <= model.order(); ++n) manifest.ngrams += model.NumNGrams(n);
    record("model.arpa");
  };

  if (mode == PipelineMode::kBaseline) {
    std::ostringstream lex;
    WriteLexicon(lex, base);
    WriteTextFile(dir / "lexicon.txt", lex.str());
    record("lexicon.txt");
    manifest.lexicon_size = base.size();
    finish_model(EstimateModel(count_background(base)));
  } else {
    SeedSet seeds;
    if (mode == PipelineMode::kAdapted) {
      seeds = ExtractSeeds(ReadGlossaryFile(config.glossary_path, config.tokenizer),
                           base);
    } else {
      SeedSet initial;
      for (const auto &w : config.initial_seeds) {
        for (const auto &t : Tokenize(w, config.tokenizer)) {
          initial.Add(t, {SeedOrigin::kGlossary, 0});
        }
      }
      EmbeddingTable table = LoadEmbeddingsFile(config.embeddings_path);
      seeds = ExpandSemantic(initial, table, config.semantic, nullptr,
                             config.threads);
    }
    if (config.morph.n_m > 0) {
      seeds = ExpandMorphological(seeds, dictionary, config.morph);
    }
    std::ostringstream seed_text;
    WriteSeedSet(seed_text, seeds);
    WriteTextFile(dir / "seeds.tsv", seed_text.str());
    record("seeds.tsv");
    manifest.seeds = seeds.size();

    // Pass 2: selection.
    DocumentSelector selector(seeds, base);
    SelectionReport report = selector.NewReport();
    std::vector<std::vector<std::string>> adaptation;
    std::ofstream adapt_out(dir / "adaptation.txt", std::ios::binary);
    ForEachDocument(config.corpus_paths, config.tokenizer,
                    [&](const Document &doc) {
                      if (!selector.Matches(doc, &report)) return;
                      if (!config.selection.context_window) {
                        adapt_out << doc.text << '\n';
                        adaptation.push_back(doc.tokens);
                        return;
                      }
                      for (const auto &span : selector.ContextSpans(
                               doc.tokens, *config.selection.context_window)) {
                        std::vector<std::string> snippet(
                            doc.tokens.begin() + span.begin,
                            doc.tokens.begin() + span.end);
                        adapt_out << JoinTokens(snippet) << '\n';
                        adaptation.push_back(std::move(snippet));
                      }
                    });
    adapt_out.close();
    record("adaptation.txt");
    WriteTextFile(dir / "selection.json", report.ToJson());
    record("selection.json");
    manifest.triggering_seeds = report.triggering_seeds;
    manifest.documents_selected = report.documents_selected;

    FrequencyTable adapt_freq;
    for (const auto &s : adaptation) adapt_freq.AddTokens(s);
    Lexicon lexicon = BuildAdaptedLexicon(base, adapt_freq, config.f_min);
    std::ostringstream lex;
    WriteLexicon(lex, lexicon);
    WriteTextFile(dir / "lexicon.txt", lex.str());
    record("lexicon.txt");
    manifest.lexicon_size = lexicon.size();

    // Pass 3: background counts over the enlarged vocabulary.
    NGramCounts background = count_background(lexicon);
    NGramCounter adapt_counter(lexicon, config.order);
    for (const auto &s : adaptation) adapt_counter.AddSentence(s);
    finish_model(AdaptModel(background, adapt_counter.counts(), config.lambda));
  }

  std::sort(manifest.artifacts.begin(), manifest.artifacts.end(),
            [](const Artifact &a, const Artifact &b) { return a.path < b.path; });
  WriteTextFile(dir / "manifest.json", manifest.ToJson());
  return manifest;
}

std::vector<ReportRow> EmitReport(const std::vector<std::string> &run_dirs,
                                  const std::string &ref_path,
                                  const std::vector<std::string> &hyp_paths,
                                  const TokenizerConfig &tokenizer) {
  if (hyp_paths.size() != 1 && hyp_paths.size() != run_dirs.size()) {
    throw std::invalid_argument(
        "give one hypothesis file, or one per pipeline run");
  }
  AnnotatedTranscript ref = ParseTranscriptFile(ref_path, tokenizer);
  std::vector<std::string> ref_tokens;
  for (const auto &u : ref.utterances) {
    ref_tokens.insert(ref_tokens.end(), u.tokens.begin(), u.tokens.end());
  }
  std::vector<ReportRow> rows;
  for (std::size_t i = 0; i < run_dirs.size(); ++i) {
    const fs::path dir(run_dirs[i]);
    std::ifstream in(dir / "manifest.json", std::ios::binary);
    if (!in) {
      throw std::runtime_error("no manifest.json in " + dir.string());
    }
    std::stringstream text;
    text << in.rdbuf();
    Manifest manifest = Manifest::FromJson(text.str());
    Lexicon lexicon = ReadLexiconFile((dir / "lexicon.txt").string());

    ReportRow row;
    row.system = manifest.mode;
    row.seeds = manifest.seeds;
    row.lexicon_size = lexicon.size();
    row.oov = ComputeOovRate(ref_tokens, lexicon);
    AnnotatedTranscript hyp = ParseTranscriptFile(
        hyp_paths.size() == 1 ? hyp_paths[0] : hyp_paths[i], tokenizer);
    ScoreOptions options;
    options.tokenizer = tokenizer;
    row.score = ScoreBenchmark(ref, hyp, options);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string ReportCsv(const std::vector<ReportRow> &rows) {
  std::string out =
      "system,seeds,lex_size,oov_rate,wer,iw_p,iw_r,iw_f,isol_iw_p,"
      "isol_iw_r,isol_iw_f\n";
  for (const auto &r : rows) {
    const auto &s = r.score;
    out += fmt::format(
        "{},{},{},{},{},{},{},{},{},{},{}\n", r.system, r.seeds,
        r.lexicon_size, r.oov.percent_string(),
        s.alignment.reference_length ? WordErrorRateString(s.alignment) : "",
        s.iw.precision_string(), s.iw.recall_string(), s.iw.f_measure_string(),
        s.isol_iw.precision_string(), s.isol_iw.recall_string(),
        s.isol_iw.f_measure_string());
  }
  return out;
}

std::string ReportJson(const std::vector<ReportRow> &rows) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto &r : rows) {
    nlohmann::ordered_json row;
    row["system"] = r.system;
    row["seeds"] = r.seeds;
    row["lex_size"] = r.lexicon_size;
    row["oov_rate"] = std::stod(r.oov.percent_string());
    row["score"] = nlohmann::ordered_json::parse(r.score.ToJson());
    j.push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

}  // namespace seedsel
