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

#ifndef MPEMB_GRAPH_H_
#define MPEMB_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "mpemb/ids.h"

namespace mpemb {

/// Name of the type given to nodes that end up without any type.
inline constexpr std::string_view kUntypedName = "UNTYPED";

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  EdgeTypeId type;
  auto operator<=>(const Edge&) const = default;
};

/// One entry of the undirected adjacency: the neighbor reached and the type
/// of the edge used.
struct Neighbor {
  NodeId node = 0;
  EdgeTypeId type;
  auto operator<=>(const Neighbor&) const = default;
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept {
    std::uint64_t h = (std::uint64_t{e.src} << 32) | e.dst;
    h ^= std::uint64_t{e.type.value} * 0x9e3779b97f4a7c15ULL;
    return std::hash<std::uint64_t>{}(h ^ (h >> 29));
  }
};

class KnowledgeGraph;

/// Accumulates nodes, types and edges and produces an immutable
/// KnowledgeGraph. Identical (src, dst, type) edges are stored once.
class GraphBuilder {
 public:
  NodeId AddNode(std::string_view name);
  std::optional<NodeId> FindNode(std::string_view name) const {
    return nodes_.Find(name);
  }
  NodeTypeId AddNodeType(std::string_view name);
  EdgeTypeId AddEdgeType(std::string_view name);
  void AddNodeLabel(NodeId node, NodeTypeId type);
  /// Returns false when the edge was already present.
  bool AddEdge(NodeId src, NodeId dst, EdgeTypeId type);

  std::size_t num_nodes() const { return nodes_.size(); }

  /// Nodes without any label receive the reserved UNTYPED type.
  KnowledgeGraph Build() &&;

 private:
  NameDictionary nodes_;
  NameDictionary node_types_;
  NameDictionary edge_types_;
  std::vector<std::vector<NodeTypeId>> labels_;
  std::vector<Edge> edges_;
  std::unordered_set<Edge, EdgeHash> edge_set_;
};

/// Typed multigraph. Edges keep their direction for serialization and
/// snapshot comparison; the adjacency view is undirected (every edge is
/// reachable from both endpoints). Immutable once built.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  std::size_t num_nodes() const { return node_names_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_node_types() const { return node_type_names_.size(); }
  std::size_t num_edge_types() const { return edge_type_names_.size(); }

  const NameDictionary& node_names() const { return node_names_; }
  const NameDictionary& node_type_names() const { return node_type_names_; }
  const NameDictionary& edge_type_names() const { return edge_type_names_; }

  std::optional<NodeId> FindNode(std::string_view name) const {
    return node_names_.Find(name);
  }
  std::optional<NodeTypeId> FindNodeType(std::string_view name) const;
  std::optional<EdgeTypeId> FindEdgeType(std::string_view name) const;

  /// Node types of `node`, sorted by id, never empty.
  std::span<const NodeTypeId> NodeTypes(NodeId node) const {
    return {type_values_.data() + type_offsets_[node],
            type_values_.data() + type_offsets_[node + 1]};
  }
  /// Undirected neighbors as a sorted set of (node, type): u->v and v->u
  /// edges of the same type collapse to one entry, and a self loop appears
  /// once.
  std::span<const Neighbor> Neighbors(NodeId node) const {
    return {adjacency_.data() + adj_offsets_[node],
            adjacency_.data() + adj_offsets_[node + 1]};
  }
  std::size_t Degree(NodeId node) const {
    return adj_offsets_[node + 1] - adj_offsets_[node];
  }

  const std::vector<Edge>& edges() const { return edges_; }
  bool HasEdge(NodeId src, NodeId dst, EdgeTypeId type) const;
  /// True when any edge joins u and v in either direction.
  bool Adjacent(NodeId u, NodeId v) const;

  /// Copy of this graph with replaced node type sets. `types[node]` lists
  /// type names. Names in `type_order` get the lowest ids in that order; the
  /// rest are assigned in order of first appearance.
  KnowledgeGraph WithNodeTypes(
      const std::vector<std::vector<std::string>>& types,
      const std::vector<std::string>& type_order = {}) const;

 private:
  friend class GraphBuilder;

  NameDictionary node_names_;
  NameDictionary node_type_names_;
  NameDictionary edge_type_names_;
  std::vector<std::size_t> type_offsets_;
  std::vector<NodeTypeId> type_values_;
  std::vector<Edge> edges_;
  std::unordered_set<Edge, EdgeHash> edge_set_;
  std::vector<std::size_t> adj_offsets_;
  std::vector<Neighbor> adjacency_;
};

/// Reads the nodes and edges TSV files.
///   nodes: node_name<TAB>type_name[,type_name...]   (type list optional)
///   edges: src_name<TAB>dst_name<TAB>edge_type_name
///   types: one node type name per line, in id order (optional file)
/// Listed types get the lowest ids; other types are numbered in order of
/// first appearance in the nodes file.
/// Throws ParseError on malformed lines and IntegrityError when an edge names
/// an unknown node.
KnowledgeGraph LoadGraph(const std::filesystem::path& nodes_file,
                         const std::filesystem::path& edges_file,
                         const std::filesystem::path& types_file = {});

/// Writes the graph in the format read by LoadGraph. Nodes are written in id
/// order and edges in insertion order. With a types file, reloading
/// reproduces identical node, node type and edge type ids.
void SaveGraph(const KnowledgeGraph& graph,
               const std::filesystem::path& nodes_file,
               const std::filesystem::path& edges_file,
               const std::filesystem::path& types_file = {});

/// Structural equality on node names, type names per node, and edge sets.
bool SameGraph(const KnowledgeGraph& a, const KnowledgeGraph& b);

}  // namespace mpemb

#endif  // MPEMB_GRAPH_H_
