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

#include "cyclex/retrieval.h"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "cyclex/error.h"

namespace cyclex {
namespace {

constexpr std::string_view kIndexMagic = "cyclex-phrase-index 1";

const PhraseIndex::Posting* FindPosting(
    std::span<const PhraseIndex::Posting> list, std::uint32_t doc) {
  auto it = std::lower_bound(
      list.begin(), list.end(), doc,
      [](const PhraseIndex::Posting& p, std::uint32_t d) { return p.doc < d; });
  if (it == list.end() || it->doc != doc) return nullptr;
  return &*it;
}

}  // namespace

PhraseIndex PhraseIndex::Build(const Corpus& corpus) {
  PhraseIndex index;
  for (const auto& [id, doc] : corpus) {
    const auto doc_number = static_cast<std::uint32_t>(index.doc_ids_.size());
    index.doc_ids_.push_back(id);
    Tokens tokens = Normalize(doc.extracted_text);
    for (size_t pos = 0; pos < tokens.size(); ++pos) {
      std::vector<Posting>& list = index.postings_[tokens[pos]];
      if (list.empty() || list.back().doc != doc_number) {
        list.push_back(Posting{doc_number, {}});
      }
      list.back().positions.push_back(static_cast<std::uint32_t>(pos));
    }
  }
  return index;
}

std::span<const PhraseIndex::Posting> PhraseIndex::postings(
    std::string_view token) const {
  auto it = postings_.find(std::string(token));
  if (it == postings_.end()) return {};
  return it->second;
}

RankedResults PhraseIndex::Search(const PhraseSet& phrases, size_t r) const {
  if (r == 0) throw Error("result count r must be positive");
  std::unordered_map<std::uint32_t, size_t> scores;
  bool any_terms = false;
  for (const Phrase& phrase : phrases) {
    if (phrase.empty()) continue;
    any_terms = true;
    std::vector<std::span<const Posting>> lists;
    lists.reserve(phrase.size());
    for (const std::string& token : phrase) lists.push_back(postings(token));
    for (const Posting& head : lists.front()) {
      // Tail postings of this document, one per following phrase token.
      std::vector<const Posting*> tail;
      tail.reserve(phrase.size() - 1);
      for (size_t j = 1; j < phrase.size(); ++j) {
        const Posting* p = FindPosting(lists[j], head.doc);
        if (p == nullptr) break;
        tail.push_back(p);
      }
      if (tail.size() + 1 != phrase.size()) continue;
      size_t count = 0;
      for (std::uint32_t start : head.positions) {
        bool match = true;
        for (size_t j = 0; j < tail.size() && match; ++j) {
          const auto& positions = tail[j]->positions;
          match = std::binary_search(positions.begin(), positions.end(),
                                     start + static_cast<std::uint32_t>(j + 1));
        }
        if (match) ++count;
      }
      if (count > 0) scores[head.doc] += count;
    }
  }
  if (!any_terms) throw Error("no query terms");

  std::vector<std::pair<std::uint32_t, size_t>> ranked(scores.begin(),
                                                       scores.end());
  // Doc numbers follow doc_id order, so comparing them breaks ties by id.
  auto by_rank = [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  };
  size_t keep = std::min(r, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + keep, ranked.end(),
                    by_rank);
  RankedResults results;
  results.reserve(keep);
  for (size_t i = 0; i < keep; ++i) {
    results.push_back(ScoredDoc{doc_ids_[ranked[i].first],
                                static_cast<double>(ranked[i].second)});
  }
  return results;
}

void PhraseIndex::Write(std::ostream& out) const {
  out << kIndexMagic << '\n' << doc_ids_.size() << '\n';
  for (const std::string& id : doc_ids_) out << id << '\n';
  std::vector<const std::string*> tokens;
  tokens.reserve(postings_.size());
  for (const auto& [token, list] : postings_) tokens.push_back(&token);
  std::sort(tokens.begin(), tokens.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });
  out << tokens.size() << '\n';
  for (const std::string* token : tokens) {
    out << *token;
    for (const Posting& posting : postings_.at(*token)) {
      out << '\t' << posting.doc << ':';
      for (size_t i = 0; i < posting.positions.size(); ++i) {
        if (i > 0) out << ',';
        out << posting.positions[i];
      }
    }
    out << '\n';
  }
}

PhraseIndex PhraseIndex::Read(std::istream& in) {
  auto fail = [](std::string_view what) -> PhraseIndex {
    throw Error(fmt::format("malformed phrase index: {}", what));
  };
  std::string line;
  if (!std::getline(in, line) || line != kIndexMagic) return fail("header");
  PhraseIndex index;
  size_t count = 0;
  if (!std::getline(in, line)) return fail("document count");
  count = std::stoul(line);
  index.doc_ids_.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) return fail("document ids");
    index.doc_ids_.push_back(line);
  }
  if (!std::getline(in, line)) return fail("vocabulary size");
  size_t vocabulary = std::stoul(line);
  for (size_t t = 0; t < vocabulary; ++t) {
    if (!std::getline(in, line)) return fail("postings");
    std::vector<std::string> fields = Split(line, '\t');
    std::vector<Posting>& list = index.postings_[fields[0]];
    for (size_t f = 1; f < fields.size(); ++f) {
      size_t colon = fields[f].find(':');
      if (colon == std::string::npos) return fail("posting");
      Posting posting;
      posting.doc = static_cast<std::uint32_t>(
          std::stoul(fields[f].substr(0, colon)));
      if (posting.doc >= count) return fail("document number");
      for (const std::string& pos : Split(fields[f].substr(colon + 1), ',')) {
        posting.positions.push_back(static_cast<std::uint32_t>(std::stoul(pos)));
      }
      list.push_back(std::move(posting));
    }
  }
  return index;
}

double Precision(const RankedResults& results, size_t r,
                 const DocIdSet& expected) {
  if (r == 0) throw Error("result count r must be positive");
  size_t hits = 0;
  size_t limit = std::min(r, results.size());
  for (size_t i = 0; i < limit; ++i) {
    if (expected.contains(results[i].doc_id)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(r);
}

PhraseSet TitlePhrases(const KnowledgeGraph& graph, const NodeSet& articles) {
  PhraseSet phrases;
  for (NodeId id : articles) {
    phrases.insert(Split(graph.node(id).normalized_title, ' '));
  }
  return phrases;
}

Evaluation Evaluate(const PhraseIndex& index, const PhraseSet& phrases,
                    const DocIdSet& expected, std::span<const size_t> cutoffs) {
  if (cutoffs.empty()) throw Error("empty cutoff set");
  Evaluation evaluation;
  bool any_terms = std::any_of(phrases.begin(), phrases.end(),
                               [](const Phrase& p) { return !p.empty(); });
  RankedResults results;
  if (any_terms) {
    size_t deepest = *std::max_element(cutoffs.begin(), cutoffs.end());
    results = index.Search(phrases, deepest);
  }
  double sum = 0;
  for (size_t r : cutoffs) {
    double p = Precision(results, r, expected);
    evaluation.per_r[r] = p;
    sum += p;
  }
  evaluation.quality = sum / static_cast<double>(cutoffs.size());
  return evaluation;
}

Evaluation Evaluate(const PhraseIndex& index, const KnowledgeGraph& graph,
                    const NodeSet& articles, const DocIdSet& expected,
                    std::span<const size_t> cutoffs) {
  return Evaluate(index, TitlePhrases(graph, articles), expected, cutoffs);
}

double Quality(const PhraseIndex& index, const KnowledgeGraph& graph,
               const NodeSet& articles, const DocIdSet& expected,
               std::span<const size_t> cutoffs) {
  if (articles.empty()) throw Error("no query terms");
  PhraseSet phrases = TitlePhrases(graph, articles);
  size_t deepest = *std::max_element(cutoffs.begin(), cutoffs.end());
  RankedResults results = index.Search(phrases, deepest);
  double sum = 0;
  for (size_t r : cutoffs) sum += Precision(results, r, expected);
  return sum / static_cast<double>(cutoffs.size());
}

}  // namespace cyclex
