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

#ifndef CYCLEX_SRC_ARTIFACTS_H_
#define CYCLEX_SRC_ARTIFACTS_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace cyclex::internal {

// Writes to a temporary sibling and renames it over the target on Commit(),
// so an interrupted stage never leaves a truncated artifact behind.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::filesystem::path target);
  ~ArtifactWriter();
  ArtifactWriter(const ArtifactWriter&) = delete;
  ArtifactWriter& operator=(const ArtifactWriter&) = delete;

  std::ofstream& stream() { return out_; }
  void Commit();

 private:
  std::filesystem::path target_;
  std::filesystem::path temp_;
  std::ofstream out_;
  bool committed_ = false;
};

// First line of every tabular artifact.
std::string SeedComment(std::uint64_t seed);

// Rows of a delimited text file, skipping blank and '#' lines. The header
// row, if any, is returned as the first row. Throws when the file is
// missing.
std::vector<std::vector<std::string>> ReadTable(const std::filesystem::path& path,
                                                char delimiter);

std::string ReadFile(const std::filesystem::path& path);

}  // namespace cyclex::internal

#endif  // CYCLEX_SRC_ARTIFACTS_H_
