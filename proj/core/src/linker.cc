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

#include "cyclex/linker.h"

#include <algorithm>

#include "cyclex/parallel.h"

namespace cyclex {

Linker::Linker(const KnowledgeGraph& graph, size_t max_synonyms_per_term)
    : graph_(graph), max_window_(graph.max_title_tokens()) {
  for (const Node& node : graph.nodes()) {
    if (!node.is_article()) continue;
    auto redirects = graph.InNeighbors(node.id, EdgeKind::kRedirect);
    if (redirects.empty()) continue;
    std::vector<Tokens>& list = synonyms_[node.normalized_title];
    Tokens term = Split(node.normalized_title, ' ');
    for (NodeId redirect : redirects) {
      if (list.size() >= max_synonyms_per_term) break;
      const std::string& title = graph.node(redirect).normalized_title;
      list.push_back(Split(title, ' '));
      replaces_.emplace(title, term);
    }
  }
}

std::vector<Tokens> Linker::Synonyms(std::span<const std::string> term) const {
  auto it = synonyms_.find(JoinTokens(term));
  if (it == synonyms_.end()) return {};
  return it->second;
}

std::optional<NodeId> Linker::MatchWindow(
    std::span<const std::string> window) const {
  if (auto direct = graph_.FindArticle(JoinTokens(window))) {
    return graph_.ResolveMain(*direct);
  }
  // Synonym phrases: the window is a title with one strict sub-run replaced
  // by a synonym. Undo the replacement and look the title up.
  std::optional<NodeId> best;
  Tokens phrase;
  for (size_t begin = 0; begin < window.size(); ++begin) {
    for (size_t end = begin + 1; end <= window.size(); ++end) {
      if (begin == 0 && end == window.size()) continue;
      auto it = replaces_.find(JoinTokens(window.subspan(begin, end - begin)));
      if (it == replaces_.end()) continue;
      phrase.assign(window.begin(), window.begin() + begin);
      phrase.insert(phrase.end(), it->second.begin(), it->second.end());
      phrase.insert(phrase.end(), window.begin() + end, window.end());
      if (auto match = graph_.FindArticle(JoinTokens(phrase))) {
        NodeId main = graph_.ResolveMain(*match);
        if (!best || main < *best) best = main;
      }
    }
  }
  return best;
}

LinkResult Linker::Link(std::string_view text) const {
  Tokens tokens = Normalize(text);
  return LinkTokens(tokens);
}

LinkResult Linker::LinkTokens(std::span<const std::string> tokens) const {
  LinkResult result;
  std::vector<bool> consumed(tokens.size(), false);
  size_t longest = std::min(max_window_, tokens.size());
  for (size_t length = longest; length >= 1; --length) {
    for (size_t begin = 0; begin + length <= tokens.size(); ++begin) {
      bool free = std::none_of(consumed.begin() + begin,
                               consumed.begin() + begin + length,
                               [](bool c) { return c; });
      if (!free) continue;
      std::optional<NodeId> match = MatchWindow(tokens.subspan(begin, length));
      if (!match) continue;
      std::fill(consumed.begin() + begin, consumed.begin() + begin + length,
                true);
      result.spans.push_back(MatchedSpan{begin, begin + length, *match});
      result.articles.insert(*match);
    }
  }
  std::sort(result.spans.begin(), result.spans.end(),
            [](const MatchedSpan& a, const MatchedSpan& b) {
              return a.begin < b.begin;
            });
  return result;
}

std::vector<Tokens> Synonyms(std::span<const std::string> term,
                             const KnowledgeGraph& graph) {
  return Linker(graph).Synonyms(term);
}

DocumentLinks LinkDocuments(const Linker& linker,
                            std::span<const Document* const> docs,
                            unsigned threads) {
  std::vector<NodeSet> linked(docs.size());
  ParallelFor(docs.size(), threads, [&](size_t i) {
    linked[i] = linker.Link(docs[i]->extracted_text).articles;
  });
  DocumentLinks links;
  for (size_t i = 0; i < docs.size(); ++i) {
    links.all.insert(linked[i].begin(), linked[i].end());
    links.per_document[docs[i]->doc_id] = std::move(linked[i]);
  }
  return links;
}

DocumentLinks LinkDocuments(const Linker& linker, const Corpus& corpus,
                            unsigned threads) {
  std::vector<const Document*> docs;
  docs.reserve(corpus.size());
  for (const auto& [id, doc] : corpus) docs.push_back(&doc);
  return LinkDocuments(linker, docs, threads);
}

}  // namespace cyclex
