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

#ifndef CYCLEX_CORPUS_H_
#define CYCLEX_CORPUS_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cyclex {

// Keys of Document::raw_fields.
inline constexpr std::string_view kFieldName = "name";
inline constexpr std::string_view kFieldEnglish = "english";
inline constexpr std::string_view kFieldComment = "comment";
inline constexpr std::string_view kFieldText = "text";

// Where the three linkable items live inside a metadata XML file.
//
// A path is a '/'-separated list of element names starting at the root
// element. A step may carry one attribute predicate, `text[@xml:lang=en]`,
// and the last step may be `@attr` to read an attribute instead of element
// text. Element text includes the text of all descendants.
struct XmlFieldPaths {
  std::string name = "image/name";
  std::string english = "image/text[@xml:lang=en]";
  std::string comment = "image/comment";
};

struct Document {
  std::string doc_id;
  std::map<std::string, std::string, std::less<>> raw_fields;
  std::string extracted_text;
};

// Parses one metadata file. Throws cyclex::Error on malformed XML (with the
// line number) or when the name field is missing.
Document ParseMetadataXml(std::istream& in, std::string doc_id,
                          const XmlFieldPaths& paths = {});

// File name minus its directory and final extension with `_`, `-` and `.`
// turned into spaces, then the English section, then the general comment.
// Whitespace is collapsed; missing items contribute nothing. A document
// ingested from JSONL returns its `text` field verbatim.
std::string ExtractText(const Document& doc);

class Corpus {
 public:
  // Throws on a duplicate or empty doc_id.
  void Add(Document doc);

  size_t size() const { return documents_.size(); }
  bool empty() const { return documents_.empty(); }
  const Document* Find(std::string_view doc_id) const;

  auto begin() const { return documents_.begin(); }
  auto end() const { return documents_.end(); }

 private:
  std::map<std::string, Document, std::less<>> documents_;
};

struct CorpusLoadResult {
  Corpus corpus;
  std::vector<std::string> warnings;
};

// Loads a directory of *.xml metadata files (doc_id = file stem) or a JSONL
// file of {"doc_id", "text"} records. Per-file failures become warnings;
// an unreadable path throws.
CorpusLoadResult LoadCorpus(const std::filesystem::path& path,
                            const XmlFieldPaths& paths = {},
                            unsigned threads = 1);

// {"doc_id", "text"} per line, ordered by doc_id; readable by LoadCorpus.
void WriteCorpusJsonl(const Corpus& corpus, std::ostream& out);

}  // namespace cyclex

#endif  // CYCLEX_CORPUS_H_
