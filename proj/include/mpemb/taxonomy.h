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

#ifndef MPEMB_TAXONOMY_H_
#define MPEMB_TAXONOMY_H_

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "mpemb/graph.h"
#include "mpemb/ids.h"

namespace mpemb {

/// Class hierarchy over type names. Multiple parents are allowed, so the
/// structure is a DAG; roots are types without parents.
class Taxonomy {
 public:
  NodeTypeId AddType(std::string_view name) {
    auto id = names_.GetOrAdd(name);
    if (id >= parents_.size()) parents_.resize(id + 1);
    return NodeTypeId(id);
  }
  void AddParent(NodeTypeId child, NodeTypeId parent);

  std::size_t size() const { return names_.size(); }
  const NameDictionary& names() const { return names_; }
  const std::vector<NodeTypeId>& Parents(NodeTypeId t) const {
    return parents_.at(t.value);
  }
  std::vector<NodeTypeId> Roots() const;

 private:
  NameDictionary names_;
  std::vector<std::vector<NodeTypeId>> parents_;
};

/// Reads `child_type<TAB>parent_type` lines.
Taxonomy LoadTaxonomy(const std::filesystem::path& file);

/// Depth of every type: roots have depth 1 and every other type one more than
/// its shallowest parent. Throws TaxonomyError on a cycle.
std::vector<int> TypeDepths(const Taxonomy& tax);

/// Label set of every type after cutting the hierarchy at `depth_limit`:
/// the type's ancestors (itself included) whose depth is at most the limit.
/// Types below the limit therefore inherit exactly the labels of their
/// ancestors at the limit. Result vectors are sorted by id.
/// Throws ConfigError for depth_limit < 1 and TaxonomyError on a cycle.
std::vector<std::vector<NodeTypeId>> ReduceTaxonomy(const Taxonomy& tax,
                                                    int depth_limit);

struct TypeAssignmentReport {
  std::size_t typed_by_instance_of = 0;
  std::size_t class_nodes = 0;
  std::size_t untyped = 0;
};

/// Assigns node types from the class hierarchy. A node x with an edge
/// x -instance_of-> c receives the reduced label set of class c. A node whose
/// name is itself a taxonomy type keeps its own reduced label set; when such
/// a class node is also an instance of other classes, both sources are
/// unioned. Explicit types from the nodes file are kept. Nodes left without
/// any type become UNTYPED. Instance-of targets that are not in the taxonomy
/// contribute their own name as a single label. Node type ids are ordered by
/// descending taxonomy depth, then by name.
/// Throws ConfigError when `instance_of` is not an edge type of the graph.
KnowledgeGraph AssignNodeTypes(const KnowledgeGraph& graph,
                               const Taxonomy& tax,
                               std::string_view instance_of, int depth_limit,
                               TypeAssignmentReport* report = nullptr);

}  // namespace mpemb

#endif  // MPEMB_TAXONOMY_H_
