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

#ifndef CYCLEX_TEXT_H_
#define CYCLEX_TEXT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cyclex {

using Tokens = std::vector<std::string>;

// Lowercases UTF-8 text and splits it on runs of non-alphanumeric code
// points. No stemming and no stop words. Invalid UTF-8 bytes act as
// separators.
Tokens Normalize(std::string_view text);

// Joins tokens with single spaces. This is the key under which titles are
// indexed, so Join(Normalize(x)) is the normalized form of x.
std::string JoinTokens(std::span<const std::string> tokens);

inline std::string NormalizedKey(std::string_view text) {
  return JoinTokens(Normalize(text));
}

// Splits on a single delimiter character; empty fields are kept.
std::vector<std::string> Split(std::string_view text, char delimiter);

// Trims ASCII whitespace from both ends.
std::string_view Trim(std::string_view text);

// Collapses internal whitespace runs to one space and trims.
std::string CollapseWhitespace(std::string_view text);

}  // namespace cyclex

#endif  // CYCLEX_TEXT_H_
