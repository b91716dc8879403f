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
// UTF-8 helpers and the word tokenizer shared by corpus, glossary and
// transcript processing.

#ifndef SEEDSEL_TEXT_H_
#define SEEDSEL_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace seedsel {

struct TokenizerConfig {
  bool lowercase = true;
  // Split Romance clitics after an intra-word apostrophe:
  // "l'igiene" -> "l'" "igiene".
  bool split_apostrophe = false;
};

// True iff `text` is well-formed UTF-8 (no overlongs, no surrogates,
// nothing above U+10FFFF).
bool IsValidUtf8(std::string_view text);

// Number of code points; `text` must be valid UTF-8.
std::size_t Utf8Length(std::string_view text);

// Byte length of the first `n` code points (or the whole string).
std::size_t Utf8PrefixBytes(std::string_view text, std::size_t n);

bool IsUnicodeSpace(char32_t c);
bool IsUnicodePunct(char32_t c);
char32_t ToLowerCodePoint(char32_t c);

std::vector<char32_t> DecodeUtf8(std::string_view text);
void AppendUtf8(char32_t c, std::string *out);

// Splits on Unicode whitespace, strips leading/trailing punctuation (an
// apostrophe or hyphen survives only inside a word), lowercases. The
// caller is responsible for rejecting invalid UTF-8 first.
std::vector<std::string> Tokenize(std::string_view raw_line,
                                  const TokenizerConfig &config = {});

// Joins tokens with a single space.
std::string JoinTokens(const std::vector<std::string> &tokens,
                       std::string_view sep = " ");

}  // namespace seedsel

#endif  // SEEDSEL_TEXT_H_
