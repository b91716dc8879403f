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

#include "seedsel/common.h"

#include <cmath>

#include <fmt/format.h>

namespace seedsel {

FormatError::FormatError(const std::string &source, std::size_t line,
                         const std::string &what)
    : std::runtime_error(line > 0
                             ? fmt::format("{}:{}: {}", source, line, what)
                             : fmt::format("{}: {}", source, what)),
      source_(source),
      line_(line) {}

namespace {

// Hundredths of scale * num / den, rounded half up.
std::uint64_t Hundredths(std::uint64_t num, std::uint64_t den,
                         std::uint64_t scale) {
  if (den == 0) return 0;
  using u128 = unsigned __int128;
  u128 twice = u128(200) * num * scale;
  return static_cast<std::uint64_t>((twice + den) / (u128(2) * den));
}

}  // namespace

std::string FormatFixed2(std::uint64_t num, std::uint64_t den,
                         std::uint64_t scale) {
  std::uint64_t h = Hundredths(num, den, scale);
  return fmt::format("{}.{:02d}", h / 100, h % 100);
}

double RoundFixed2(std::uint64_t num, std::uint64_t den, std::uint64_t scale) {
  return static_cast<double>(Hundredths(num, den, scale)) / 100.0;
}

std::string FormatFixed2(double value) {
  // 1e-9 absorbs binary representation error at exact .005 boundaries.
  double h = std::floor(std::fabs(value) * 100.0 + 0.5 + 1e-9);
  return fmt::format("{}{:.2f}", value < 0 && h > 0 ? "-" : "", h / 100.0);
}

}  // namespace seedsel
