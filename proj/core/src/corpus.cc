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

#include "cyclex/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "cyclex/error.h"
#include "cyclex/parallel.h"
#include "cyclex/text.h"

namespace cyclex {
namespace {

namespace pt = boost::property_tree;

struct PathStep {
  std::string element;
  std::string attribute;        // predicate attribute, may be empty
  std::string attribute_value;  // predicate value
};

struct ParsedPath {
  std::vector<PathStep> steps;
  std::string target_attribute;  // trailing @attr, may be empty
};

ParsedPath ParsePath(std::string_view path) {
  ParsedPath parsed;
  for (const std::string& raw : Split(path, '/')) {
    std::string_view step = Trim(raw);
    if (step.empty()) continue;
    if (step.front() == '@') {
      parsed.target_attribute = std::string(step.substr(1));
      break;
    }
    PathStep out;
    size_t bracket = step.find('[');
    out.element = std::string(step.substr(0, bracket));
    if (bracket != std::string_view::npos) {
      std::string_view predicate = step.substr(bracket + 1);
      if (predicate.empty() || predicate.back() != ']' ||
          predicate.front() != '@') {
        throw Error(fmt::format("bad element path \"{}\"", path));
      }
      predicate = predicate.substr(1, predicate.size() - 2);
      size_t eq = predicate.find('=');
      if (eq == std::string_view::npos) {
        throw Error(fmt::format("bad element path \"{}\"", path));
      }
      out.attribute = std::string(predicate.substr(0, eq));
      std::string_view value = predicate.substr(eq + 1);
      if (value.size() >= 2 && (value.front() == '\'' || value.front() == '"')) {
        value = value.substr(1, value.size() - 2);
      }
      out.attribute_value = std::string(value);
    }
    parsed.steps.push_back(std::move(out));
  }
  return parsed;
}

bool MatchesPredicate(const pt::ptree& element, const PathStep& step) {
  if (step.attribute.empty()) return true;
  auto attrs = element.get_child_optional("<xmlattr>");
  if (!attrs) return false;
  auto value = attrs->get_optional<std::string>(
      pt::ptree::path_type(step.attribute, '\0'));
  return value && *value == step.attribute_value;
}

const pt::ptree* Resolve(const pt::ptree& root,
                         std::span<const PathStep> steps) {
  if (steps.empty()) return &root;
  for (const auto& [name, child] : root) {
    if (name == steps.front().element && MatchesPredicate(child, steps.front())) {
      if (const pt::ptree* found = Resolve(child, steps.subspan(1))) {
        return found;
      }
    }
  }
  return nullptr;
}

void CollectText(const pt::ptree& element, std::string& out) {
  std::string_view data = Trim(element.data());
  if (!data.empty()) {
    if (!out.empty()) out.push_back(' ');
    out.append(data);
  }
  for (const auto& [name, child] : element) {
    if (name == "<xmlattr>" || name == "<xmlcomment>") continue;
    CollectText(child, out);
  }
}

std::optional<std::string> Lookup(const pt::ptree& root,
                                  std::string_view path) {
  ParsedPath parsed = ParsePath(path);
  if (parsed.steps.empty()) return std::nullopt;
  const pt::ptree* element = Resolve(root, parsed.steps);
  if (element == nullptr) return std::nullopt;
  if (!parsed.target_attribute.empty()) {
    auto attrs = element->get_child_optional("<xmlattr>");
    if (!attrs) return std::nullopt;
    auto value = attrs->get_optional<std::string>(
        pt::ptree::path_type(parsed.target_attribute, '\0'));
    if (!value) return std::nullopt;
    return CollapseWhitespace(*value);
  }
  std::string text;
  CollectText(*element, text);
  return CollapseWhitespace(text);
}

std::string FileNameText(std::string_view name) {
  size_t slash = name.find_last_of("/\\");
  if (slash != std::string_view::npos) name = name.substr(slash + 1);
  size_t dot = name.rfind('.');
  if (dot != std::string_view::npos && dot > 0) name = name.substr(0, dot);
  std::string text(name);
  std::replace_if(
      text.begin(), text.end(),
      [](char c) { return c == '_' || c == '-' || c == '.'; }, ' ');
  return CollapseWhitespace(text);
}

Document ParseXmlFile(const std::filesystem::path& file,
                      const XmlFieldPaths& paths) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open " + file.string());
  return ParseMetadataXml(in, file.stem().string(), paths);
}

CorpusLoadResult LoadJsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  CorpusLoadResult result;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (Trim(line).empty()) continue;
    auto record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object() ||
        !record.contains("doc_id") || !record["doc_id"].is_string() ||
        !record.contains("text") || !record["text"].is_string()) {
      result.warnings.push_back(fmt::format("{} line {}: malformed record",
                                            path.string(), line_number));
      continue;
    }
    Document doc;
    doc.doc_id = record["doc_id"].get<std::string>();
    doc.raw_fields.emplace(kFieldText, record["text"].get<std::string>());
    doc.extracted_text = ExtractText(doc);
    try {
      result.corpus.Add(std::move(doc));
    } catch (const Error& e) {
      result.warnings.push_back(
          fmt::format("{} line {}: {}", path.string(), line_number, e.what()));
    }
  }
  return result;
}

}  // namespace

Document ParseMetadataXml(std::istream& in, std::string doc_id,
                          const XmlFieldPaths& paths) {
  pt::ptree tree;
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw Error(fmt::format("malformed XML at line {}: {}", e.line(),
                            e.message()));
  }
  Document doc;
  doc.doc_id = std::move(doc_id);
  std::optional<std::string> name = Lookup(tree, paths.name);
  if (!name || name->empty()) {
    throw Error(fmt::format("document {}: missing name", doc.doc_id));
  }
  doc.raw_fields.emplace(kFieldName, std::move(*name));
  if (auto english = Lookup(tree, paths.english)) {
    doc.raw_fields.emplace(kFieldEnglish, std::move(*english));
  }
  if (auto comment = Lookup(tree, paths.comment)) {
    doc.raw_fields.emplace(kFieldComment, std::move(*comment));
  }
  doc.extracted_text = ExtractText(doc);
  return doc;
}

std::string ExtractText(const Document& doc) {
  if (auto it = doc.raw_fields.find(kFieldText); it != doc.raw_fields.end()) {
    return it->second;
  }
  std::vector<std::string> items;
  if (auto it = doc.raw_fields.find(kFieldName); it != doc.raw_fields.end()) {
    items.push_back(FileNameText(it->second));
  }
  for (std::string_view key : {kFieldEnglish, kFieldComment}) {
    if (auto it = doc.raw_fields.find(key); it != doc.raw_fields.end()) {
      items.push_back(CollapseWhitespace(it->second));
    }
  }
  std::string text;
  for (const std::string& item : items) {
    if (item.empty()) continue;
    if (!text.empty()) text.push_back(' ');
    text.append(item);
  }
  return text;
}

void Corpus::Add(Document doc) {
  if (doc.doc_id.empty()) throw Error("document with empty doc_id");
  std::string id = doc.doc_id;
  if (!documents_.emplace(id, std::move(doc)).second) {
    throw Error(fmt::format("duplicate doc_id \"{}\"", id));
  }
}

const Document* Corpus::Find(std::string_view doc_id) const {
  auto it = documents_.find(doc_id);
  return it == documents_.end() ? nullptr : &it->second;
}

CorpusLoadResult LoadCorpus(const std::filesystem::path& path,
                            const XmlFieldPaths& paths, unsigned threads) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) {
    throw Error("corpus path does not exist: " + path.string());
  }
  if (!std::filesystem::is_directory(path, ec)) return LoadJsonl(path);

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(path, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".xml") {
      files.push_back(entry.path());
    }
  }
  if (ec) throw Error("cannot read corpus directory " + path.string());
  std::sort(files.begin(), files.end());

  std::vector<std::optional<Document>> parsed(files.size());
  std::vector<std::string> failures(files.size());
  ParallelFor(files.size(), threads, [&](size_t i) {
    try {
      parsed[i] = ParseXmlFile(files[i], paths);
    } catch (const Error& e) {
      failures[i] = fmt::format("{}: {}", files[i].string(), e.what());
    }
  });

  CorpusLoadResult result;
  for (size_t i = 0; i < files.size(); ++i) {
    if (!parsed[i]) {
      result.warnings.push_back(std::move(failures[i]));
      continue;
    }
    try {
      result.corpus.Add(std::move(*parsed[i]));
    } catch (const Error& e) {
      result.warnings.push_back(
          fmt::format("{}: {}", files[i].string(), e.what()));
    }
  }
  if (result.corpus.empty()) {
    result.warnings.push_back("no documents loaded from " + path.string());
  }
  return result;
}

void WriteCorpusJsonl(const Corpus& corpus, std::ostream& out) {
  for (const auto& [id, doc] : corpus) {
    nlohmann::json record = {{"doc_id", id}, {"text", doc.extracted_text}};
    out << record.dump() << '\n';
  }
}

}  // namespace cyclex
