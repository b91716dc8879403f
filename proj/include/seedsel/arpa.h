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
// ARPA backoff model files: log10 values, tab-separated fields.

#ifndef SEEDSEL_ARPA_H_
#define SEEDSEL_ARPA_H_

#include <iosfwd>
#include <string>

#include "seedsel/ngram.h"

namespace seedsel {

// \data\ header with per-order counts, one \N-grams: section per order
// ("log10prob<TAB>w1 .. wn[<TAB>log10backoff]", backoff on every order
// below the highest), then \end\. Entries are sorted by their words.
void WriteArpa(std::ostream &out, const NGramModel &model);
void WriteArpaFile(const std::string &path, const NGramModel &model);

// Throws FormatError (with line numbers) on malformed headers, count
// mismatches and non-numeric fields.
NGramModel ReadArpa(std::istream &in, const std::string &source = "arpa");
NGramModel ReadArpaFile(const std::string &path);

}  // namespace seedsel

#endif  // SEEDSEL_ARPA_H_
