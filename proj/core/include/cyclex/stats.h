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

#ifndef CYCLEX_STATS_H_
#define CYCLEX_STATS_H_

#include <span>
#include <string>
#include <vector>

namespace cyclex {

// Five-number summary as printed in the report tables.
struct Quartiles {
  double min = 0;
  double q1 = 0;
  double median = 0;
  double q3 = 0;
  double max = 0;
};

// Quantile with linear interpolation between closest ranks, h = (n-1)p.
// The median of an even-sized sample is the midpoint of the middle pair.
double Quantile(std::vector<double> values, double p);

// Throws on an empty sample.
Quartiles Summarize(std::span<const double> values);

double Mean(std::span<const double> values);

// Fixed three-decimal rendering used by every artifact.
std::string FormatFixed3(double value);

// Rounds to three decimals (for JSON numbers).
double Round3(double value);

}  // namespace cyclex

#endif  // CYCLEX_STATS_H_
