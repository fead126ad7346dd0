/**
 * Copyright 2026 The mpemb Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MPEMB_FEATURES_H_
#define MPEMB_FEATURES_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <unordered_map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mpemb/dictionary.h"
#include "mpemb/embedding.h"
#include "mpemb/graph.h"

namespace mpemb {

enum class FeatureSource { kEdgeMetaPaths, kNodeMetaPaths, kNodeTypes, kPair };
enum class PairOperator { kAverage, kConcat, kHadamard, kWeightedL1, kWeightedL2 };

std::string_view ToString(FeatureSource source);
PairOperator ParsePairOperator(std::string_view name);
std::string_view ToString(PairOperator op);

struct FeatureVector {
  std::vector<double> values;
  FeatureSource source = FeatureSource::kNodeTypes;
  /// No meta-path contributed; `values` is the zero vector.
  bool empty = false;
  /// Operator that produced a pair feature.
  std::optional<PairOperator> op;
  /// Meta-paths skipped because the table cannot embed them.
  std::size_t unknown_words = 0;
};

/// Memoized emb(mp) for dictionary path ids. Paths whose word is neither in
/// the table nor composable from known grams map to nothing.
class PathEmbeddingCache {
 public:
  PathEmbeddingCache(const MetaPathDictionary& dict, const EmbeddingTable& table)
      : dict_(dict), table_(table) {}
  const std::vector<double>* Get(std::uint32_t path);
  int dim() const { return table_.dim(); }

 private:
  const MetaPathDictionary& dict_;
  const EmbeddingTable& table_;
  std::unordered_map<std::uint32_t, std::optional<std::vector<double>>> cache_;
};

/// Mean emb over the meta-paths stored for {i, j}.
FeatureVector EdgeEmbedding(NodeId i, NodeId j, const MetaPathDictionary& dict,
                            PathEmbeddingCache& cache);

/// Distinct meta-paths with each node as an endpoint, with multiplicities
/// summed over the node's pairs.
class NodeMetaPathIndex {
 public:
  NodeMetaPathIndex(const MetaPathDictionary& dict, std::size_t num_nodes);
  /// (path id, multiplicity), ascending path id.
  const std::vector<std::pair<std::uint32_t, std::uint64_t>>& Paths(
      NodeId node) const {
    return paths_.at(node);
  }

 private:
  std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> paths_;
};

/// Mean emb over the node's meta-paths. `top_k` > 0 keeps only the k most
/// frequent ones (ties by path id).
FeatureVector NodeEmbeddingMetaPaths(NodeId node, const NodeMetaPathIndex& index,
                                     PathEmbeddingCache& cache,
                                     std::size_t top_k = 0);

/// Mean of the node-type unigram vectors over the node's types.
FeatureVector NodeEmbeddingTypes(NodeId node, const KnowledgeGraph& graph,
                                 const EmbeddingTable& table);

/// Throws DimensionMismatchError for vectors of different sizes.
FeatureVector CombinePair(const FeatureVector& a, const FeatureVector& b,
                          PairOperator op);

/// `id<TAB>v1 ... vd` per row.
void WriteFeatures(
    const std::filesystem::path& file,
    const std::vector<std::pair<std::string, FeatureVector>>& rows);

}  // namespace mpemb

#endif  // MPEMB_FEATURES_H_
