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

#ifndef MPEMB_MINER_H_
#define MPEMB_MINER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mpemb/dictionary.h"
#include "mpemb/error.h"
#include "mpemb/graph.h"

namespace mpemb {

/// How nodes carrying several types contribute to meta-paths.
enum class MultiTypeMode {
  kFirstType,         // lowest type id per node
  kCartesianProduct,  // one meta-path per combination of types along the walk
};

MultiTypeMode ParseMultiTypeMode(std::string_view name);
std::string_view ToString(MultiTypeMode mode);

struct MiningConfig {
  /// Maximum number of node positions per meta-path.
  int max_length = 3;
  /// Walks shorter than this are traversed but not recorded.
  int min_length = 1;
  /// Probability of skipping a start node.
  double node_skip_probability = 0.0;
  /// Probability of not following an edge during expansion.
  double edge_skip_probability = 0.0;
  /// Stop expanding from a start node after this many recorded meta-paths.
  std::optional<std::size_t> max_paths_per_node;
  std::uint64_t seed = 0;
  MultiTypeMode multi_type_mode = MultiTypeMode::kFirstType;
  /// Upper bound on meta-paths produced by one cartesian expansion.
  std::size_t product_cap = 4096;
  /// Abort once this many walks were recorded in total; 0 disables the limit.
  std::uint64_t max_records = 0;
  int workers = 1;
  /// Start nodes to mine from; empty means every node.
  std::vector<NodeId> start_nodes;

  /// Throws ConfigError on out-of-range values.
  void Validate() const;
};

/// Thrown when `max_records` is exceeded. Holds everything mined so far.
class MiningBudgetError : public ResourceError {
 public:
  MiningBudgetError(const std::string& what, MetaPathDictionary partial)
      : ResourceError(what), partial_(std::move(partial)) {}
  const MetaPathDictionary& partial() const { return partial_; }

 private:
  MetaPathDictionary partial_;
};

struct MiningStats {
  std::size_t start_nodes_processed = 0;
  std::size_t start_nodes_skipped = 0;
  std::size_t start_nodes_stopped_early = 0;
  std::size_t truncated_expansions = 0;
};

/// Every walk of at most `max_length` nodes over the undirected view of the
/// graph, from every start node. Node revisits are allowed. The skip
/// probabilities of `cfg` are ignored (treated as 0).
MetaPathDictionary MineAll(const KnowledgeGraph& graph, MiningConfig cfg,
                           MiningStats* stats = nullptr);

/// Same traversal with random skipping: a start node is mined with
/// probability 1 - node_skip_probability and each edge is followed with
/// probability 1 - edge_skip_probability, so a fixed walk over l edges is
/// found with probability (1 - q)^l. Random draws for a start node come from
/// a stream seeded by (seed, start node), so the result does not depend on
/// the number of workers.
MetaPathDictionary MineProbabilistic(const KnowledgeGraph& graph,
                                     const MiningConfig& cfg,
                                     MiningStats* stats = nullptr);

/// A walk template whose node positions carry type sets.
struct TypeSetPath {
  std::vector<std::vector<NodeTypeId>> node_types;
  std::vector<EdgeTypeId> edge_types;
};

struct ExpandedPaths {
  std::vector<MetaPath> paths;
  bool truncated = false;
};

/// Turns a template into concrete meta-paths. Cartesian mode enumerates the
/// product of the type sets (first position varying slowest) and stops after
/// `cap` results with `truncated` set. First-type mode uses the lowest id of
/// every set. Throws ConfigError on an empty type set or a malformed template.
ExpandedPaths ExpandMultiType(const TypeSetPath& path, MultiTypeMode mode,
                              std::size_t cap);

}  // namespace mpemb

#endif  // MPEMB_MINER_H_
