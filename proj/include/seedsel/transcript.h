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
// Benchmark transcripts with Important Words (IWs) in round brackets, and
// the IW normalization steps: collect, reduce to a minimal set,
// regenerate the brackets, keep only bracketed items.

#ifndef SEEDSEL_TRANSCRIPT_H_
#define SEEDSEL_TRANSCRIPT_H_

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "seedsel/text.h"

namespace seedsel {

inline constexpr std::size_t kMaxIWLength = 6;

struct IWSpan {
  std::size_t start = 0;
  std::size_t length = 0;

  bool operator==(const IWSpan &) const = default;
};

struct Utterance {
  std::vector<std::string> tokens;
  std::vector<IWSpan> spans;  // ordered by start, non-overlapping
};

struct AnnotatedTranscript {
  std::vector<Utterance> utterances;
  std::vector<std::string> warnings;
};

// One utterance per line. Throws FormatError on unbalanced or nested
// brackets. Spans longer than kMaxIWLength and empty brackets produce
// warnings; empty brackets yield no span.
AnnotatedTranscript ParseTranscript(std::string_view text,
                                    const TokenizerConfig &config = {},
                                    const std::string &source = "transcript");
AnnotatedTranscript ParseTranscriptFile(const std::string &path,
                                        const TokenizerConfig &config = {});

using IWPattern = std::vector<std::string>;
using IWSet = std::set<IWPattern>;

IWSet CollectIWs(const AnnotatedTranscript &transcript);

// True if `pattern` is a concatenation of two or more members of `set`
// other than itself.
bool IsSegmentable(const IWPattern &pattern, const IWSet &set);

// Removes, longest first and until nothing changes, every IW that can be
// segmented into other IWs still in the set.
IWSet MinimalIWSet(const IWSet &iws);

// Discards the existing spans and brackets every occurrence of a pattern
// in `minimal`: lengths from longest to 1, left to right, over tokens not
// yet bracketed.
AnnotatedTranscript Regenerate(const AnnotatedTranscript &transcript,
                               const IWSet &minimal);

// Per utterance, one item per span: its tokens joined by '_'.
std::vector<std::vector<std::string>> StripNonIW(
    const AnnotatedTranscript &transcript);

// Splits every item on '_'.
std::vector<std::string> Isolate(const std::vector<std::string> &items);

// The utterance with spans rendered as "(a b)"; used by reports.
std::string RenderUtterance(const Utterance &utterance);

}  // namespace seedsel

#endif  // SEEDSEL_TRANSCRIPT_H_
