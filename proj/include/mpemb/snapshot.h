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

#ifndef MPEMB_SNAPSHOT_H_
#define MPEMB_SNAPSHOT_H_

#include <filesystem>
#include <string>
#include <vector>

#include "mpemb/graph.h"

namespace mpemb {

/// An edge of the later snapshot that is missing from the earlier one,
/// identified by names so it is meaningful in both id spaces.
struct NewEdge {
  std::string src;
  std::string dst;
  std::string type;
  bool touches_new_node = false;
  auto operator<=>(const NewEdge&) const = default;
};

struct SnapshotDiff {
  std::vector<NewEdge> new_edges;       // in the later snapshot's edge order
  std::vector<std::string> new_nodes;   // sorted
  bool empty() const { return new_edges.empty() && new_nodes.empty(); }
};

/// new_edges = E(later) \ E(earlier), new_nodes = V(later) \ V(earlier),
/// matched by node, type and edge-type names.
SnapshotDiff DiffSnapshots(const KnowledgeGraph& earlier,
                           const KnowledgeGraph& later);

/// `src<TAB>dst<TAB>edge_type<TAB>touches_new_node(0|1)` per new edge.
void WriteDiff(const SnapshotDiff& diff, const std::filesystem::path& file);
/// New nodes are not part of the file format; the result has only edges.
SnapshotDiff ReadDiff(const std::filesystem::path& file);

}  // namespace mpemb

#endif  // MPEMB_SNAPSHOT_H_
