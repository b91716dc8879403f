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

#ifndef SEEDSEL_COMMON_H_
#define SEEDSEL_COMMON_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace seedsel {

// Malformed input file. Carries the 1-based line number when known.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string &source, std::size_t line,
              const std::string &what);

  std::size_t line() const { return line_; }
  const std::string &source() const { return source_; }

 private:
  std::string source_;
  std::size_t line_;
};

// Exact half-up rounding of scale * num / den to two decimals, e.g.
// FormatFixed2(1089, 31001, 100) == "3.51". den == 0 yields "0.00".
std::string FormatFixed2(std::uint64_t num, std::uint64_t den,
                         std::uint64_t scale = 1);

// The same rounding as a double (value * 100 rounded, then / 100).
double RoundFixed2(std::uint64_t num, std::uint64_t den,
                   std::uint64_t scale = 1);

// Half-up two-decimal rendering of an arbitrary double.
std::string FormatFixed2(double value);

}  // namespace seedsel

#endif  // SEEDSEL_COMMON_H_
