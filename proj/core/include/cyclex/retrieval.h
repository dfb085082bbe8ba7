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

#ifndef CYCLEX_RETRIEVAL_H_
#define CYCLEX_RETRIEVAL_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cyclex/corpus.h"
#include "cyclex/kgraph.h"
#include "cyclex/text.h"

namespace cyclex {

using Phrase = Tokens;
using PhraseSet = std::set<Phrase>;
using DocIdSet = std::set<std::string, std::less<>>;

struct ScoredDoc {
  std::string doc_id;
  double score = 0;

  friend bool operator==(const ScoredDoc&, const ScoredDoc&) = default;
};

// Ordered by score descending, then doc_id ascending.
using RankedResults = std::vector<ScoredDoc>;

// Cutoffs averaged by the quality measure.
inline const std::vector<size_t> kDefaultCutoffs = {1, 5, 10, 15};

// Positional inverted index over the documents' extracted text.
class PhraseIndex {
 public:
  struct Posting {
    std::uint32_t doc = 0;                // index into doc_ids()
    std::vector<std::uint32_t> positions;  // strictly increasing
  };

  static PhraseIndex Build(const Corpus& corpus);

  // Plain-text serialization; Read(Write(x)) reproduces x exactly.
  void Write(std::ostream& out) const;
  static PhraseIndex Read(std::istream& in);

  size_t doc_count() const { return doc_ids_.size(); }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  // Postings sorted by doc; empty for unknown tokens.
  std::span<const Posting> postings(std::string_view token) const;
  size_t vocabulary_size() const { return postings_.size(); }

  // Exact-phrase search. score(d) is the total number of occurrences of all
  // phrases in d; documents scoring 0 are dropped and at most `r` results are
  // returned. Empty phrases are ignored; throws "no query terms" when nothing
  // is left or r == 0.
  RankedResults Search(const PhraseSet& phrases, size_t r) const;

 private:
  std::vector<std::string> doc_ids_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
};

// |top-r ∩ expected| / r. The denominator stays r when fewer results exist.
double Precision(const RankedResults& results, size_t r,
                 const DocIdSet& expected);

struct Evaluation {
  std::map<size_t, double> per_r;  // cutoff -> precision
  double quality = 0;              // mean over cutoffs
};

// Normalized titles of the given articles.
PhraseSet TitlePhrases(const KnowledgeGraph& graph, const NodeSet& articles);

// Per-cutoff precision and their mean for a phrase query. An empty phrase
// set retrieves nothing and evaluates to all zeros.
Evaluation Evaluate(const PhraseIndex& index, const PhraseSet& phrases,
                    const DocIdSet& expected,
                    std::span<const size_t> cutoffs = kDefaultCutoffs);
Evaluation Evaluate(const PhraseIndex& index, const KnowledgeGraph& graph,
                    const NodeSet& articles, const DocIdSet& expected,
                    std::span<const size_t> cutoffs = kDefaultCutoffs);

// Mean precision over the cutoffs for the titles of `articles`. Requires a
// non-empty article set; errors from Search propagate.
double Quality(const PhraseIndex& index, const KnowledgeGraph& graph,
               const NodeSet& articles, const DocIdSet& expected,
               std::span<const size_t> cutoffs = kDefaultCutoffs);

}  // namespace cyclex

#endif  // CYCLEX_RETRIEVAL_H_
