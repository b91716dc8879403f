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

#include "seedsel/transcript.h"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "seedsel/common.h"

namespace seedsel {
namespace {

Utterance ParseLine(std::string_view line, const TokenizerConfig &config,
                    const std::string &source, std::size_t line_no,
                    std::vector<std::string> *warnings) {
  Utterance utt;
  bool open = false;
  std::size_t span_start = 0;
  std::size_t segment_begin = 0;
  auto flush = [&](std::size_t end) {
    for (auto &t : Tokenize(line.substr(segment_begin, end - segment_begin),
                            config)) {
      utt.tokens.push_back(std::move(t));
    }
  };
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (c != '(' && c != ')') continue;
    flush(i);
    segment_begin = i + 1;
    if (c == '(') {
      if (open) throw FormatError(source, line_no, "nested brackets");
      open = true;
      span_start = utt.tokens.size();
    } else {
      if (!open) throw FormatError(source, line_no, "unbalanced ')'");
      open = false;
      std::size_t length = utt.tokens.size() - span_start;
      if (length == 0) {
        warnings->push_back(
            fmt::format("{}:{}: empty brackets ignored", source, line_no));
        continue;
      }
      if (length > kMaxIWLength) {
        warnings->push_back(fmt::format("{}:{}: IW of {} words (max {})",
                                        source, line_no, length,
                                        kMaxIWLength));
      }
      utt.spans.push_back({span_start, length});
    }
  }
  if (open) throw FormatError(source, line_no, "unbalanced '('");
  flush(line.size());
  return utt;
}

}  // namespace

AnnotatedTranscript ParseTranscript(std::string_view text,
                                    const TokenizerConfig &config,
                                    const std::string &source) {
  AnnotatedTranscript transcript;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (!IsValidUtf8(line)) {
      throw FormatError(source, line_no, "invalid UTF-8");
    }
    transcript.utterances.push_back(
        ParseLine(line, config, source, line_no, &transcript.warnings));
    pos = eol + 1;
  }
  return transcript;
}

AnnotatedTranscript ParseTranscriptFile(const std::string &path,
                                        const TokenizerConfig &config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open transcript " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return ParseTranscript(text, config, path);
}

IWSet CollectIWs(const AnnotatedTranscript &transcript) {
  IWSet iws;
  for (const auto &utt : transcript.utterances) {
    for (const auto &s : utt.spans) {
      iws.emplace(utt.tokens.begin() + s.start,
                  utt.tokens.begin() + s.start + s.length);
    }
  }
  return iws;
}

bool IsSegmentable(const IWPattern &pattern, const IWSet &set) {
  const std::size_t n = pattern.size();
  if (n < 2) return false;
  // reachable[i]: pattern[0, i) splits into members; a piece covering the
  // whole pattern would be the pattern itself and is not allowed.
  std::vector<bool> reachable(n + 1, false);
  reachable[0] = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!reachable[i]) continue;
    for (std::size_t j = i + 1; j <= n; ++j) {
      if (i == 0 && j == n) continue;
      if (set.count(IWPattern(pattern.begin() + i, pattern.begin() + j))) {
        reachable[j] = true;
      }
    }
  }
  return reachable[n];
}

IWSet MinimalIWSet(const IWSet &iws) {
  IWSet current = iws;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<IWPattern> order(current.begin(), current.end());
    std::stable_sort(order.begin(), order.end(),
                     [](const auto &a, const auto &b) {
                       return a.size() > b.size();
                     });
    for (const auto &candidate : order) {
      if (IsSegmentable(candidate, current)) {
        current.erase(candidate);
        changed = true;
      }
    }
  }
  return current;
}

AnnotatedTranscript Regenerate(const AnnotatedTranscript &transcript,
                               const IWSet &minimal) {
  AnnotatedTranscript out;
  out.warnings = transcript.warnings;
  std::size_t longest = 0;
  for (const auto &p : minimal) longest = std::max(longest, p.size());
  IWPattern window;
  for (const auto &utt : transcript.utterances) {
    Utterance regenerated;
    regenerated.tokens = utt.tokens;
    const std::size_t n = utt.tokens.size();
    std::vector<bool> marked(n, false);
    for (std::size_t len = std::min(longest, n); len >= 1; --len) {
      for (std::size_t i = 0; i + len <= n;) {
        bool free = std::none_of(marked.begin() + i, marked.begin() + i + len,
                                 [](bool m) { return m; });
        if (free) {
          window.assign(utt.tokens.begin() + i, utt.tokens.begin() + i + len);
          if (minimal.count(window)) {
            std::fill(marked.begin() + i, marked.begin() + i + len, true);
            regenerated.spans.push_back({i, len});
            i += len;
            continue;
          }
        }
        ++i;
      }
    }
    std::sort(regenerated.spans.begin(), regenerated.spans.end(),
              [](const auto &a, const auto &b) { return a.start < b.start; });
    out.utterances.push_back(std::move(regenerated));
  }
  return out;
}

std::vector<std::vector<std::string>> StripNonIW(
    const AnnotatedTranscript &transcript) {
  std::vector<std::vector<std::string>> items;
  items.reserve(transcript.utterances.size());
  for (const auto &utt : transcript.utterances) {
    std::vector<std::string> row;
    for (const auto &s : utt.spans) {
      row.push_back(JoinTokens(
          std::vector<std::string>(utt.tokens.begin() + s.start,
                                   utt.tokens.begin() + s.start + s.length),
          "_"));
    }
    items.push_back(std::move(row));
  }
  return items;
}

std::vector<std::string> Isolate(const std::vector<std::string> &items) {
  std::vector<std::string> words;
  for (const auto &item : items) {
    std::size_t pos = 0;
    while (true) {
      std::size_t us = item.find('_', pos);
      std::string part = item.substr(pos, us == std::string::npos
                                              ? std::string::npos
                                              : us - pos);
      if (!part.empty()) words.push_back(std::move(part));
      if (us == std::string::npos) break;
      pos = us + 1;
    }
  }
  return words;
}

std::string RenderUtterance(const Utterance &utterance) {
  std::string out;
  std::size_t next_span = 0;
  for (std::size_t i = 0; i < utterance.tokens.size(); ++i) {
    if (!out.empty()) out.push_back(' ');
    const IWSpan *span = next_span < utterance.spans.size()
                             ? &utterance.spans[next_span]
                             : nullptr;
    if (span && span->start == i) out.push_back('(');
    out += utterance.tokens[i];
    if (span && i + 1 == span->start + span->length) {
      out.push_back(')');
      ++next_span;
    }
  }
  return out;
}

}  // namespace seedsel
