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

#ifndef SEEDSEL_NGRAM_INL_H_
#define SEEDSEL_NGRAM_INL_H_

#include <algorithm>

namespace seedsel {

template <typename Table>
std::vector<const typename Table::value_type *> SortedByWords(
    const Table &table, const Vocab &vocab) {
  std::vector<const typename Table::value_type *> items;
  items.reserve(table.size());
  for (const auto &kv : table) items.push_back(&kv);
  std::sort(items.begin(), items.end(), [&vocab](auto *a, auto *b) {
    return std::lexicographical_compare(
        a->first.begin(), a->first.end(), b->first.begin(), b->first.end(),
        [&vocab](WordId x, WordId y) { return vocab.Word(x) < vocab.Word(y); });
  });
  return items;
}

}  // namespace seedsel

#endif  // SEEDSEL_NGRAM_INL_H_
