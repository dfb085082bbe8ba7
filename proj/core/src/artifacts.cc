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

#include "artifacts.h"

#include <sstream>

#include <fmt/format.h>

#include "cyclex/error.h"
#include "cyclex/text.h"

namespace cyclex::internal {

ArtifactWriter::ArtifactWriter(std::filesystem::path target)
    : target_(std::move(target)) {
  std::filesystem::create_directories(target_.parent_path());
  temp_ = target_;
  temp_ += ".tmp";
  out_.open(temp_, std::ios::binary | std::ios::trunc);
  if (!out_) throw Error("cannot write " + target_.string());
}

ArtifactWriter::~ArtifactWriter() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(temp_, ec);
  }
}

void ArtifactWriter::Commit() {
  out_.flush();
  if (!out_) throw Error("cannot write " + target_.string());
  out_.close();
  std::filesystem::rename(temp_, target_);
  committed_ = true;
}

std::string SeedComment(std::uint64_t seed) {
  return fmt::format("# rng_seed={}", seed);
}

std::vector<std::vector<std::string>> ReadTable(const std::filesystem::path& path,
                                                char delimiter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("missing artifact " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line.front() == '#') continue;
    rows.push_back(Split(line, delimiter));
  }
  return rows;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("missing artifact " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace cyclex::internal
