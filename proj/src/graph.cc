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

#include "mpemb/graph.h"

#include <algorithm>
#include <fstream>

#include "mpemb/error.h"
#include "mpemb/tsv.h"

namespace mpemb {

std::uint32_t NameDictionary::GetOrAdd(std::string_view name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(names_.size());
  names_.emplace_back(name);
  index_.emplace(names_.back(), id);
  return id;
}

std::optional<std::uint32_t> NameDictionary::Find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeId GraphBuilder::AddNode(std::string_view name) {
  NodeId id = nodes_.GetOrAdd(name);
  if (id >= labels_.size()) labels_.resize(id + 1);
  return id;
}

NodeTypeId GraphBuilder::AddNodeType(std::string_view name) {
  return NodeTypeId(node_types_.GetOrAdd(name));
}

EdgeTypeId GraphBuilder::AddEdgeType(std::string_view name) {
  return EdgeTypeId(edge_types_.GetOrAdd(name));
}

void GraphBuilder::AddNodeLabel(NodeId node, NodeTypeId type) {
  if (node >= labels_.size()) throw IntegrityError("unknown node id");
  if (type.value >= node_types_.size()) {
    throw IntegrityError("unknown node type id");
  }
  labels_[node].push_back(type);
}

bool GraphBuilder::AddEdge(NodeId src, NodeId dst, EdgeTypeId type) {
  if (src >= nodes_.size() || dst >= nodes_.size()) {
    throw IntegrityError("edge endpoint is not a known node");
  }
  if (type.value >= edge_types_.size()) {
    throw IntegrityError("unknown edge type id");
  }
  Edge e{src, dst, type};
  if (!edge_set_.insert(e).second) return false;
  edges_.push_back(e);
  return true;
}

KnowledgeGraph GraphBuilder::Build() && {
  KnowledgeGraph g;
  const std::size_t n = nodes_.size();
  labels_.resize(n);

  std::optional<NodeTypeId> untyped;
  g.type_offsets_.reserve(n + 1);
  g.type_offsets_.push_back(0);
  for (auto& types : labels_) {
    std::sort(types.begin(), types.end());
    types.erase(std::unique(types.begin(), types.end()), types.end());
    if (types.empty()) {
      if (!untyped) untyped = NodeTypeId(node_types_.GetOrAdd(kUntypedName));
      types.push_back(*untyped);
    }
    g.type_values_.insert(g.type_values_.end(), types.begin(), types.end());
    g.type_offsets_.push_back(g.type_values_.size());
  }

  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : edges_) {
    ++degree[e.src];
    if (e.src != e.dst) ++degree[e.dst];
  }
  std::vector<std::size_t> offsets(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] = offsets[i] + degree[i];
  std::vector<Neighbor> adjacency(offsets[n]);
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : edges_) {
    adjacency[cursor[e.src]++] = Neighbor{e.dst, e.type};
    if (e.src != e.dst) adjacency[cursor[e.dst]++] = Neighbor{e.src, e.type};
  }
  // Sort and collapse u->v / v->u duplicates into a compact CSR.
  g.adj_offsets_.reserve(n + 1);
  g.adj_offsets_.push_back(0);
  g.adjacency_.reserve(adjacency.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto first = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[i]);
    auto last = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    g.adjacency_.insert(g.adjacency_.end(), first, last);
    g.adj_offsets_.push_back(g.adjacency_.size());
  }

  g.node_names_ = std::move(nodes_);
  g.node_type_names_ = std::move(node_types_);
  g.edge_type_names_ = std::move(edge_types_);
  g.edges_ = std::move(edges_);
  g.edge_set_ = std::move(edge_set_);
  return g;
}

std::optional<NodeTypeId> KnowledgeGraph::FindNodeType(
    std::string_view name) const {
  auto id = node_type_names_.Find(name);
  if (!id) return std::nullopt;
  return NodeTypeId(*id);
}

std::optional<EdgeTypeId> KnowledgeGraph::FindEdgeType(
    std::string_view name) const {
  auto id = edge_type_names_.Find(name);
  if (!id) return std::nullopt;
  return EdgeTypeId(*id);
}

bool KnowledgeGraph::HasEdge(NodeId src, NodeId dst, EdgeTypeId type) const {
  return edge_set_.count(Edge{src, dst, type}) > 0;
}

bool KnowledgeGraph::Adjacent(NodeId u, NodeId v) const {
  auto nbrs = Neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(),
                             Neighbor{v, EdgeTypeId(0)});
  return it != nbrs.end() && it->node == v;
}

KnowledgeGraph KnowledgeGraph::WithNodeTypes(
    const std::vector<std::vector<std::string>>& types,
    const std::vector<std::string>& type_order) const {
  if (types.size() != num_nodes()) {
    throw IntegrityError("type list count does not match node count");
  }
  GraphBuilder b;
  for (const std::string& t : type_order) {
    if (t != kUntypedName) b.AddNodeType(t);
  }
  for (NodeId v = 0; v < num_nodes(); ++v) b.AddNode(node_names_.Name(v));
  for (NodeId v = 0; v < num_nodes(); ++v) {
    for (const std::string& t : types[v]) {
      if (t == kUntypedName) continue;
      b.AddNodeLabel(v, b.AddNodeType(t));
    }
  }
  for (const std::string& name : edge_type_names_.names()) b.AddEdgeType(name);
  for (const Edge& e : edges_) b.AddEdge(e.src, e.dst, e.type);
  return std::move(b).Build();
}

KnowledgeGraph LoadGraph(const std::filesystem::path& nodes_file,
                         const std::filesystem::path& edges_file,
                         const std::filesystem::path& types_file) {
  GraphBuilder b;
  if (!types_file.empty()) {
    const std::string types_name = types_file.string();
    ForEachTsvLine(types_file, [&](std::span<const std::string_view> f,
                                   std::size_t line) {
      if (f.size() != 1 || f[0].empty()) {
        throw ParseError(types_name, line, "expected one type name");
      }
      if (f[0] != kUntypedName) b.AddNodeType(f[0]);
    });
  }
  const std::string nodes_name = nodes_file.string();
  ForEachTsvLine(nodes_file, [&](std::span<const std::string_view> f,
                                 std::size_t line) {
    if (f.size() > 2) throw ParseError(nodes_name, line, "too many fields");
    if (f[0].empty()) throw ParseError(nodes_name, line, "empty node name");
    NodeId v = b.AddNode(f[0]);
    if (f.size() == 2 && !f[1].empty()) {
      for (std::string_view t : Split(f[1], ',')) {
        if (t.empty()) throw ParseError(nodes_name, line, "empty type name");
        if (t == kUntypedName) continue;
        b.AddNodeLabel(v, b.AddNodeType(t));
      }
    }
  });
  const std::string edges_name = edges_file.string();
  ForEachTsvLine(edges_file, [&](std::span<const std::string_view> f,
                                 std::size_t line) {
    if (f.size() != 3) {
      throw ParseError(edges_name, line, "expected 3 fields, got " +
                                             std::to_string(f.size()));
    }
    if (f[2].empty()) throw ParseError(edges_name, line, "empty edge type");
    auto src = b.FindNode(f[0]);
    auto dst = b.FindNode(f[1]);
    if (!src || !dst) {
      throw IntegrityError(edges_name + ":" + std::to_string(line) +
                           ": unknown node '" +
                           std::string(!src ? f[0] : f[1]) + "'");
    }
    b.AddEdge(*src, *dst, b.AddEdgeType(f[2]));
  });
  return std::move(b).Build();
}

void SaveGraph(const KnowledgeGraph& graph,
               const std::filesystem::path& nodes_file,
               const std::filesystem::path& edges_file,
               const std::filesystem::path& types_file) {
  const auto untyped = graph.FindNodeType(kUntypedName);
  if (!types_file.empty()) {
    std::ofstream types(types_file);
    if (!types) throw Error("cannot write " + types_file.string());
    for (const std::string& name : graph.node_type_names().names()) {
      if (name != kUntypedName) types << name << '\n';
    }
  }
  std::ofstream nodes(nodes_file);
  if (!nodes) throw Error("cannot write " + nodes_file.string());
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    nodes << graph.node_names().Name(v);
    bool first = true;
    for (NodeTypeId t : graph.NodeTypes(v)) {
      if (untyped && t == *untyped) continue;
      nodes << (first ? '\t' : ',') << graph.node_type_names().Name(t.value);
      first = false;
    }
    nodes << '\n';
  }
  std::ofstream edges(edges_file);
  if (!edges) throw Error("cannot write " + edges_file.string());
  for (const Edge& e : graph.edges()) {
    edges << graph.node_names().Name(e.src) << '\t'
          << graph.node_names().Name(e.dst) << '\t'
          << graph.edge_type_names().Name(e.type.value) << '\n';
  }
}

bool SameGraph(const KnowledgeGraph& a, const KnowledgeGraph& b) {
  if (a.num_nodes() != b.num_nodes() || a.num_edges() != b.num_edges()) {
    return false;
  }
  auto type_names = [](const KnowledgeGraph& g, NodeId v) {
    std::vector<std::string> out;
    for (NodeTypeId t : g.NodeTypes(v)) {
      out.push_back(g.node_type_names().Name(t.value));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  for (NodeId v = 0; v < a.num_nodes(); ++v) {
    auto w = b.FindNode(a.node_names().Name(v));
    if (!w || type_names(a, v) != type_names(b, *w)) return false;
  }
  for (const Edge& e : a.edges()) {
    auto s = b.FindNode(a.node_names().Name(e.src));
    auto d = b.FindNode(a.node_names().Name(e.dst));
    auto t = b.FindEdgeType(a.edge_type_names().Name(e.type.value));
    if (!s || !d || !t || !b.HasEdge(*s, *d, *t)) return false;
  }
  return true;
}

}  // namespace mpemb
