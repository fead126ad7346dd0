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

#include "mpemb/taxonomy.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <string>

#include "mpemb/error.h"
#include "mpemb/tsv.h"

namespace mpemb {

void Taxonomy::AddParent(NodeTypeId child, NodeTypeId parent) {
  if (child.value >= parents_.size() || parent.value >= parents_.size()) {
    throw TaxonomyError("unknown taxonomy type id");
  }
  auto& ps = parents_[child.value];
  if (std::find(ps.begin(), ps.end(), parent) == ps.end()) ps.push_back(parent);
}

std::vector<NodeTypeId> Taxonomy::Roots() const {
  std::vector<NodeTypeId> roots;
  for (std::uint32_t t = 0; t < parents_.size(); ++t) {
    if (parents_[t].empty()) roots.emplace_back(t);
  }
  return roots;
}

Taxonomy LoadTaxonomy(const std::filesystem::path& file) {
  Taxonomy tax;
  const std::string name = file.string();
  ForEachTsvLine(file, [&](std::span<const std::string_view> f,
                           std::size_t line) {
    if (f.size() != 2) throw ParseError(name, line, "expected child<TAB>parent");
    if (f[0].empty() || f[1].empty()) {
      throw ParseError(name, line, "empty type name");
    }
    NodeTypeId child = tax.AddType(f[0]);
    NodeTypeId parent = tax.AddType(f[1]);
    tax.AddParent(child, parent);
  });
  return tax;
}

namespace {

// Parents-before-children order. Throws on a cycle.
std::vector<std::uint32_t> TopologicalOrder(const Taxonomy& tax) {
  const std::size_t n = tax.size();
  std::vector<std::vector<std::uint32_t>> children(n);
  std::vector<std::size_t> pending(n, 0);
  for (std::uint32_t t = 0; t < n; ++t) {
    for (NodeTypeId p : tax.Parents(NodeTypeId(t))) {
      children[p.value].push_back(t);
      ++pending[t];
    }
  }
  std::deque<std::uint32_t> ready;
  for (std::uint32_t t = 0; t < n; ++t) {
    if (pending[t] == 0) ready.push_back(t);
  }
  std::vector<std::uint32_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    std::uint32_t t = ready.front();
    ready.pop_front();
    order.push_back(t);
    for (std::uint32_t c : children[t]) {
      if (--pending[c] == 0) ready.push_back(c);
    }
  }
  if (order.size() != n) {
    for (std::uint32_t t = 0; t < n; ++t) {
      if (pending[t] > 0) {
        throw TaxonomyError("cycle in taxonomy involving type '" +
                            tax.names().Name(t) + "'");
      }
    }
  }
  return order;
}

}  // namespace

std::vector<int> TypeDepths(const Taxonomy& tax) {
  std::vector<int> depth(tax.size(), 0);
  for (std::uint32_t t : TopologicalOrder(tax)) {
    const auto& parents = tax.Parents(NodeTypeId(t));
    if (parents.empty()) {
      depth[t] = 1;
      continue;
    }
    int best = depth[parents.front().value];
    for (NodeTypeId p : parents) best = std::min(best, depth[p.value]);
    depth[t] = best + 1;
  }
  return depth;
}

std::vector<std::vector<NodeTypeId>> ReduceTaxonomy(const Taxonomy& tax,
                                                    int depth_limit) {
  if (depth_limit < 1) throw ConfigError("depth limit must be >= 1");
  const auto order = TopologicalOrder(tax);
  const auto depth = TypeDepths(tax);
  // An ancestor a of t lies on some root chain through t at position
  // depth(a), so labels(t) = {a ancestor-or-self of t : depth(a) <= limit}.
  std::vector<std::vector<NodeTypeId>> labels(tax.size());
  for (std::uint32_t t : order) {
    std::vector<NodeTypeId> acc;
    if (depth[t] <= depth_limit) acc.emplace_back(t);
    for (NodeTypeId p : tax.Parents(NodeTypeId(t))) {
      const auto& pl = labels[p.value];
      acc.insert(acc.end(), pl.begin(), pl.end());
    }
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    labels[t] = std::move(acc);
  }
  return labels;
}

KnowledgeGraph AssignNodeTypes(const KnowledgeGraph& graph,
                               const Taxonomy& tax,
                               std::string_view instance_of, int depth_limit,
                               TypeAssignmentReport* report) {
  auto instance_type = graph.FindEdgeType(instance_of);
  if (!instance_type) {
    throw ConfigError("instance-of edge type '" + std::string(instance_of) +
                      "' does not occur in the graph");
  }
  const auto reduced = ReduceTaxonomy(tax, depth_limit);
  const auto untyped = graph.FindNodeType(kUntypedName);

  std::vector<std::set<std::string>> names(graph.num_nodes());
  auto add_class = [&](std::set<std::string>& out, std::string_view cls) {
    if (auto id = tax.names().Find(cls)) {
      for (NodeTypeId a : reduced[*id]) out.insert(tax.names().Name(a.value));
    } else {
      out.emplace(cls);
    }
  };

  TypeAssignmentReport local;
  std::vector<bool> via_instance(graph.num_nodes(), false);
  for (const Edge& e : graph.edges()) {
    if (e.type != *instance_type) continue;
    add_class(names[e.src], graph.node_names().Name(e.dst));
    via_instance[e.src] = true;
  }
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    const std::string& name = graph.node_names().Name(v);
    if (tax.names().Find(name)) {
      add_class(names[v], name);
      ++local.class_nodes;
    }
    for (NodeTypeId t : graph.NodeTypes(v)) {
      if (untyped && t == *untyped) continue;
      names[v].insert(graph.node_type_names().Name(t.value));
    }
    if (via_instance[v]) ++local.typed_by_instance_of;
    if (names[v].empty()) ++local.untyped;
  }
  if (report) *report = local;

  std::vector<std::vector<std::string>> types(graph.num_nodes());
  std::set<std::string> used;
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    types[v].assign(names[v].begin(), names[v].end());
    used.insert(names[v].begin(), names[v].end());
  }
  // Deepest types first, so the lowest id of a node is its most specific
  // label. Names outside the taxonomy count as deepest.
  const auto depths = TypeDepths(tax);
  auto depth = [&](const std::string& name) {
    auto id = tax.names().Find(name);
    return id ? depths[*id] : std::numeric_limits<int>::max();
  };
  std::vector<std::string> order(used.begin(), used.end());
  std::stable_sort(order.begin(), order.end(),
                   [&](const std::string& a, const std::string& b) {
                     return depth(a) > depth(b);
                   });
  return graph.WithNodeTypes(types, order);
}

}  // namespace mpemb
