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

#include "seedsel/arpa.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

#include "seedsel/common.h"

namespace seedsel {
namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
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

bool ParseDouble(std::string_view s, double *out) {
  auto r = std::from_chars(s.data(), s.data() + s.size(), *out);
  return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

}  // namespace

void WriteArpa(std::ostream &out, const NGramModel &model) {
  const Vocab &vocab = model.vocab();
  out << "\\data\\\n";
  for (int n = 1; n <= model.order(); ++n) {
    out << "ngram " << n << '=' << model.NumNGrams(n) << '\n';
  }
  for (int n = 1; n <= model.order(); ++n) {
    out << "\n\\" << n << "-grams:\n";
    for (const auto *kv : SortedByWords(model.Table(n), vocab)) {
      std::string line = fmt::format("{:.7f}\t", kv->second.log10_prob);
      for (std::size_t i = 0; i < kv->first.size(); ++i) {
        if (i > 0) line.push_back(' ');
        line += vocab.Word(kv->first[i]);
      }
      if (n < model.order()) {
        line += fmt::format("\t{:.7f}", kv->second.log10_backoff);
      }
      line.push_back('\n');
      out << line;
    }
  }
  out << "\n\\end\\\n";
}

void WriteArpaFile(const std::string &path, const NGramModel &model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  WriteArpa(out, model);
  if (!out) throw std::runtime_error("error writing " + path);
}

NGramModel ReadArpa(std::istream &in, const std::string &source) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  // Anything before \data\ is commentary.
  bool found = false;
  while (next()) {
    if (line == "\\data\\") {
      found = true;
      break;
    }
  }
  if (!found) throw FormatError(source, line_no, "missing \\data\\ section");

  std::vector<std::size_t> declared;
  bool pending = false;  // `line` holds an unconsumed section header
  while (next()) {
    if (line.empty()) {
      if (declared.empty()) continue;
      break;
    }
    if (line.rfind("ngram ", 0) != 0) {
      if (line[0] == '\\') {
        pending = true;
        break;
      }
      throw FormatError(source, line_no, "expected 'ngram N=count'");
    }
    auto eq = line.find('=');
    std::size_t n = 0;
    std::size_t count = 0;
    std::string_view order_str(line.data() + 6, eq == std::string::npos
                                                    ? 0
                                                    : eq - 6);
    std::string_view count_str =
        eq == std::string::npos ? std::string_view()
                                : std::string_view(line).substr(eq + 1);
    auto r1 = std::from_chars(order_str.data(),
                              order_str.data() + order_str.size(), n);
    auto r2 = std::from_chars(count_str.data(),
                              count_str.data() + count_str.size(), count);
    if (eq == std::string::npos || r1.ec != std::errc() ||
        r1.ptr != order_str.data() + order_str.size() ||
        r2.ec != std::errc() ||
        r2.ptr != count_str.data() + count_str.size() ||
        n != declared.size() + 1) {
      throw FormatError(source, line_no, "malformed ngram count line");
    }
    declared.push_back(count);
  }
  if (declared.empty()) throw FormatError(source, line_no, "no ngram counts");
  const int order = static_cast<int>(declared.size());

  struct Raw {
    double logp;
    std::vector<std::string> words;
    double bow;
    std::size_t line_no;
  };
  std::vector<std::vector<Raw>> sections(order);
  int current = 0;
  bool ended = false;
  while (pending || next()) {
    pending = false;
    if (line.empty()) continue;
    if (line == "\\end\\") {
      ended = true;
      break;
    }
    if (line[0] == '\\') {
      std::string expected = fmt::format("\\{}-grams:", current + 1);
      if (line != expected) {
        throw FormatError(source, line_no,
                          "unexpected section header '" + line + "'");
      }
      ++current;
      if (current > order) {
        throw FormatError(source, line_no, "section beyond declared order");
      }
      continue;
    }
    if (current == 0) throw FormatError(source, line_no, "entry outside section");
    auto fields = SplitFields(line);
    const std::size_t n = static_cast<std::size_t>(current);
    if (fields.size() != n + 1 && fields.size() != n + 2) {
      throw FormatError(source, line_no,
                        fmt::format("expected {} words in a {}-gram entry", n, n));
    }
    Raw raw;
    raw.line_no = line_no;
    if (!ParseDouble(fields[0], &raw.logp)) {
      throw FormatError(source, line_no,
                        "non-numeric probability '" + std::string(fields[0]) + "'");
    }
    raw.bow = 0;
    if (fields.size() == n + 2 && !ParseDouble(fields[n + 1], &raw.bow)) {
      throw FormatError(source, line_no,
                        "non-numeric backoff '" + std::string(fields[n + 1]) + "'");
    }
    for (std::size_t i = 1; i <= n; ++i) raw.words.emplace_back(fields[i]);
    sections[current - 1].push_back(std::move(raw));
  }
  if (!ended) throw FormatError(source, line_no, "missing \\end\\");
  for (int n = 1; n <= order; ++n) {
    if (sections[n - 1].size() != declared[n - 1]) {
      throw FormatError(source, line_no,
                        fmt::format("{}-grams: declared {}, found {}", n,
                                    declared[n - 1], sections[n - 1].size()));
    }
  }

  Vocab vocab;
  for (const auto &raw : sections[0]) vocab.Add(raw.words[0]);
  NGramModel model(order, std::move(vocab));
  for (int n = 1; n <= order; ++n) {
    auto &table = model.MutableTable(n);
    for (const auto &raw : sections[n - 1]) {
      NGramKey key;
      for (const auto &w : raw.words) {
        auto id = model.vocab().Find(w);
        if (!id) {
          throw FormatError(source, raw.line_no,
                            "word '" + w + "' has no unigram entry");
        }
        key.push_back(*id);
      }
      NGramEntry e;
      e.log10_prob = raw.logp;
      e.log10_backoff = raw.bow;
      if (!table.emplace(std::move(key), e).second) {
        throw FormatError(source, raw.line_no, "duplicate n-gram");
      }
    }
  }
  return model;
}

NGramModel ReadArpaFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return ReadArpa(in, path);
}

}  // namespace seedsel
