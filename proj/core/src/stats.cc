// Copyright 2026 The Cyclex Authors.
//
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

#include "cyclex/stats.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cyclex/error.h"

namespace cyclex {

double Quantile(std::vector<double> values, double p) {
  if (values.empty()) throw Error("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  double h = (static_cast<double>(values.size()) - 1) * p;
  auto lower = static_cast<size_t>(std::floor(h));
  size_t upper = std::min(lower + 1, values.size() - 1);
  double fraction = h - static_cast<double>(lower);
  return values[lower] + fraction * (values[upper] - values[lower]);
}

Quartiles Summarize(std::span<const double> values) {
  std::vector<double> sample(values.begin(), values.end());
  if (sample.empty()) throw Error("summary of an empty sample");
  Quartiles q;
  q.min = *std::min_element(sample.begin(), sample.end());
  q.q1 = Quantile(sample, 0.25);
  q.median = Quantile(sample, 0.5);
  q.q3 = Quantile(sample, 0.75);
  q.max = *std::max_element(sample.begin(), sample.end());
  return q;
}

double Mean(std::span<const double> values) {
  if (values.empty()) return 0;
  double sum = 0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

std::string FormatFixed3(double value) {
  std::string text = fmt::format("{:.3f}", value);
  if (text == "-0.000") text = "0.000";
  return text;
}

double Round3(double value) {
  double rounded = std::round(value * 1000.0) / 1000.0;
  return rounded == 0 ? 0.0 : rounded;
}

}  // namespace cyclex
