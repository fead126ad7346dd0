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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "mpemb/error.h"
#include "mpemb/graph.h"
#include "mpemb/snapshot.h"
#include "mpemb/taxonomy.h"
#include "test_util.h"

namespace mpemb {
namespace {

using testing::MakeGraph;
using testing::TempDir;
using testing::WriteText;

TEST_CASE("load_graph reads typed nodes and edges") {
  TempDir dir;
  WriteText(dir / "n.tsv", "# comment\n1\tA\n2\tB\n3\tA\n");
  WriteText(dir / "e.tsv", "1\t2\tr\n2\t3\ts\n3\t1\tr\n");
  const KnowledgeGraph g = LoadGraph(dir / "n.tsv", dir / "e.tsv");
  CHECK(g.num_nodes() == 3);
  CHECK(g.num_edges() == 3);
  CHECK(g.num_node_types() == 2);
  CHECK(g.num_edge_types() == 2);
  const NodeId n2 = *g.FindNode("2");
  REQUIRE(g.NodeTypes(n2).size() == 1);
  CHECK(g.node_type_names().Name(g.NodeTypes(n2)[0].value) == "B");
  CHECK(g.Adjacent(*g.FindNode("1"), *g.FindNode("3")));
  CHECK(g.Adjacent(*g.FindNode("3"), *g.FindNode("1")));
}

TEST_CASE("load_graph accepts an empty edges file") {
  TempDir dir;
  WriteText(dir / "n.tsv", "a\tT\nb\n");
  WriteText(dir / "e.tsv", "");
  const KnowledgeGraph g = LoadGraph(dir / "n.tsv", dir / "e.tsv");
  CHECK(g.num_edges() == 0);
  CHECK(g.num_nodes() == 2);
  const NodeId b = *g.FindNode("b");
  CHECK(g.node_type_names().Name(g.NodeTypes(b)[0].value) == kUntypedName);
}

TEST_CASE("load_graph rejects unknown endpoints and malformed lines") {
  TempDir dir;
  WriteText(dir / "n.tsv", "1\tA\n2\tB\n");
  WriteText(dir / "e.tsv", "1\t99\tr\n");
  CHECK_THROWS_AS(LoadGraph(dir / "n.tsv", dir / "e.tsv"), IntegrityError);
  WriteText(dir / "e.tsv", "1\t2\n");
  try {
    LoadGraph(dir / "n.tsv", dir / "e.tsv");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(":1") != std::string::npos);
  }
  WriteText(dir / "n.tsv", "1\tA\textra\n");
  CHECK_THROWS_AS(LoadGraph(dir / "n.tsv", dir / "e.tsv"), ParseError);
}

TEST_CASE("multi-typed nodes and multi-type lists") {
  TempDir dir;
  WriteText(dir / "n.tsv", "x\tA,B\ny\tB\n");
  WriteText(dir / "e.tsv", "x\ty\tr\nx\ty\ts\nx\ty\tr\n");
  const KnowledgeGraph g = LoadGraph(dir / "n.tsv", dir / "e.tsv");
  CHECK(g.NodeTypes(*g.FindNode("x")).size() == 2);
  // identical triples collapse; different types are kept
  CHECK(g.num_edges() == 2);
  CHECK(g.Degree(*g.FindNode("x")) == 2);
}

TEST_CASE("undirected adjacency collapses reverse edges of the same type") {
  const KnowledgeGraph g = MakeGraph({{"a", {"A"}}, {"b", {"B"}}},
                                     {{"a", "b", "r"}, {"b", "a", "r"}, {"a", "a", "s"}});
  CHECK(g.num_edges() == 3);
  CHECK(g.Degree(0) == 2);  // (b, r) and the self loop once
  CHECK(g.Degree(1) == 1);
}

TEST_CASE("save then load is the identity on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const KnowledgeGraph g = testing::RandomGraph(rng, 15, 4, 4, 3);
    TempDir dir;
    SaveGraph(g, dir / "n.tsv", dir / "e.tsv");
    const KnowledgeGraph h = LoadGraph(dir / "n.tsv", dir / "e.tsv");
    CHECK(SameGraph(g, h));
    CHECK(h.num_edges() == g.num_edges());
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      CHECK(h.node_names().Name(v) == g.node_names().Name(v));
    }
  }
}

TEST_CASE("a types file preserves node type ids across save and load") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 25; ++trial) {
    const KnowledgeGraph g = testing::RandomGraph(rng, 15, 4, 4, 3);
    std::vector<std::vector<std::string>> types(g.num_nodes());
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      for (NodeTypeId t : g.NodeTypes(v)) {
        types[v].push_back(g.node_type_names().Name(t.value));
      }
    }
    std::vector<std::string> order = g.node_type_names().names();
    std::shuffle(order.begin(), order.end(), rng);
    const KnowledgeGraph r = g.WithNodeTypes(types, order);
    TempDir dir;
    SaveGraph(r, dir / "n.tsv", dir / "e.tsv", dir / "t.tsv");
    const KnowledgeGraph h = LoadGraph(dir / "n.tsv", dir / "e.tsv", dir / "t.tsv");
    CHECK(SameGraph(r, h));
    CHECK(h.node_type_names().names() == r.node_type_names().names());
    for (NodeId v = 0; v < r.num_nodes(); ++v) {
      CHECK(h.NodeTypes(v).size() == r.NodeTypes(v).size());
      CHECK(std::equal(h.NodeTypes(v).begin(), h.NodeTypes(v).end(),
                       r.NodeTypes(v).begin()));
    }
  }
}

TEST_CASE("adjacency is symmetric") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const KnowledgeGraph g = testing::RandomGraph(rng, 20, 4, 4, 4);
    for (const Edge& e : g.edges()) {
      auto has = [&](NodeId a, NodeId b) {
        auto nb = g.Neighbors(a);
        return std::find(nb.begin(), nb.end(), Neighbor{b, e.type}) != nb.end();
      };
      CHECK(has(e.src, e.dst));
      CHECK(has(e.dst, e.src));
    }
  }
}

// ---- taxonomy ----------------------------------------------------------------

Taxonomy Chain(const std::vector<std::string>& names) {
  Taxonomy tax;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const NodeTypeId t = tax.AddType(names[i]);
    if (i > 0) tax.AddParent(t, NodeTypeId(*tax.names().Find(names[i - 1])));
  }
  return tax;
}

std::set<std::string> Labels(const Taxonomy& tax,
                             const std::vector<std::vector<NodeTypeId>>& reduced,
                             const std::string& type) {
  std::set<std::string> out;
  for (NodeTypeId t : reduced[*tax.names().Find(type)]) {
    out.insert(tax.names().Name(t.value));
  }
  return out;
}

TEST_CASE("reduce_taxonomy truncates a 4-chain") {
  const Taxonomy tax = Chain({"root", "a", "b", "c"});
  const auto r2 = ReduceTaxonomy(tax, 2);
  CHECK(Labels(tax, r2, "c") == std::set<std::string>{"root", "a"});
  CHECK(Labels(tax, r2, "b") == std::set<std::string>{"root", "a"});
  CHECK(Labels(tax, r2, "a") == std::set<std::string>{"root", "a"});
  CHECK(Labels(tax, r2, "root") == std::set<std::string>{"root"});
  const auto full = ReduceTaxonomy(tax, 10);
  CHECK(Labels(tax, full, "c") == std::set<std::string>{"root", "a", "b", "c"});
  CHECK_THROWS_AS(ReduceTaxonomy(tax, 0), ConfigError);
}

TEST_CASE("single root maps to itself at any limit") {
  Taxonomy tax;
  tax.AddType("only");
  for (int limit : {1, 2, 7}) {
    CHECK(Labels(tax, ReduceTaxonomy(tax, limit), "only") ==
          std::set<std::string>{"only"});
  }
}

TEST_CASE("reduced labels never exceed the depth limit (random DAGs)") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Taxonomy tax;
    const int n = 2 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) {
      const NodeTypeId t = tax.AddType("t" + std::to_string(i));
      if (i > 0) {
        const int parents = 1 + static_cast<int>(rng() % 2);
        for (int p = 0; p < parents; ++p) {
          tax.AddParent(t, NodeTypeId(static_cast<std::uint32_t>(rng() % i)));
        }
      }
    }
    const auto depth = TypeDepths(tax);
    const int limit = 1 + static_cast<int>(rng() % 4);
    const auto reduced = ReduceTaxonomy(tax, limit);
    for (std::size_t t = 0; t < reduced.size(); ++t) {
      CHECK_FALSE(reduced[t].empty());
      for (NodeTypeId l : reduced[t]) CHECK(depth[l.value] <= limit);
    }
  }
}

TEST_CASE("taxonomy cycles are rejected") {
  Taxonomy tax;
  const NodeTypeId a = tax.AddType("a");
  const NodeTypeId b = tax.AddType("b");
  const NodeTypeId c = tax.AddType("c");
  tax.AddParent(b, a);
  tax.AddParent(c, b);
  tax.AddParent(b, c);
  CHECK_THROWS_AS(TypeDepths(tax), TaxonomyError);
  CHECK_THROWS_AS(ReduceTaxonomy(tax, 2), TaxonomyError);
}

TEST_CASE("assign_node_types follows instance-of edges") {
  Taxonomy tax = Chain({"d1", "d2", "d3", "d4"});
  const NodeTypeId other = tax.AddType("other");
  (void)other;
  const KnowledgeGraph g = MakeGraph(
      {{"x", {}}, {"y", {}}, {"lonely", {}}, {"d4", {}}, {"other", {}}},
      {{"x", "d4", "instance_of"}, {"y", "d4", "instance_of"},
       {"y", "other", "instance_of"}, {"x", "y", "knows"}});
  TypeAssignmentReport rep;
  const KnowledgeGraph t = AssignNodeTypes(g, tax, "instance_of", 3, &rep);
  auto names = [&](const std::string& node) {
    std::set<std::string> out;
    for (NodeTypeId id : t.NodeTypes(*t.FindNode(node))) {
      out.insert(t.node_type_names().Name(id.value));
    }
    return out;
  };
  CHECK(names("x") == std::set<std::string>{"d1", "d2", "d3"});
  CHECK(names("y") == std::set<std::string>{"d1", "d2", "d3", "other"});
  CHECK(names("lonely") == std::set<std::string>{std::string(kUntypedName)});
  // class node keeps its own reduced label set
  CHECK(names("d4") == std::set<std::string>{"d1", "d2", "d3"});
  CHECK(rep.untyped == 1);
  // deepest labels get the lowest ids, ties broken by name
  auto id = [&](const std::string& type) { return t.FindNodeType(type)->value; };
  CHECK(id("d3") == 0);
  CHECK(id("d2") == 1);
  CHECK(id("d1") == 2);
  CHECK(id("other") == 3);
  CHECK(t.NodeTypes(*t.FindNode("x")).front() == NodeTypeId(0));
  CHECK(t.num_edges() == g.num_edges());
  CHECK_THROWS_AS(AssignNodeTypes(g, tax, "subclass_of", 3), ConfigError);
}

// ---- snapshots ---------------------------------------------------------------

TEST_CASE("diff_snapshots") {
  const std::vector<testing::NodeSpec> nodes{{"1", {"A"}}, {"2", {"A"}}, {"3", {"A"}}};
  const KnowledgeGraph g0 = MakeGraph(nodes, {{"1", "3", "r"}});
  CHECK(DiffSnapshots(g0, g0).empty());

  const KnowledgeGraph g1 = MakeGraph(nodes, {{"1", "3", "r"}, {"1", "2", "r"}});
  const SnapshotDiff d1 = DiffSnapshots(g0, g1);
  REQUIRE(d1.new_edges.size() == 1);
  CHECK(d1.new_edges[0] == NewEdge{"1", "2", "r", false});
  CHECK(d1.new_nodes.empty());

  auto more = nodes;
  more.push_back({"9", {"A"}});
  const KnowledgeGraph g2 = MakeGraph(more, {{"1", "3", "r"}, {"1", "9", "r"}});
  const SnapshotDiff d2 = DiffSnapshots(g0, g2);
  REQUIRE(d2.new_edges.size() == 1);
  CHECK(d2.new_edges[0].touches_new_node);
  CHECK(d2.new_nodes == std::vector<std::string>{"9"});
}

TEST_CASE("diff is monotone and round-trips through its file format") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const KnowledgeGraph g = testing::RandomGraph(rng, 12, 3, 2, 2);
    GraphBuilder b;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      const NodeId id = b.AddNode(g.node_names().Name(v));
      for (NodeTypeId t : g.NodeTypes(v)) {
        b.AddNodeLabel(id, b.AddNodeType(g.node_type_names().Name(t.value)));
      }
    }
    for (const Edge& e : g.edges()) {
      b.AddEdge(e.src, e.dst, b.AddEdgeType(g.edge_type_names().Name(e.type.value)));
    }
    const bool added = b.AddEdge(0, 0, b.AddEdgeType("fresh"));
    REQUIRE(added);
    const KnowledgeGraph h = std::move(b).Build();
    const SnapshotDiff d = DiffSnapshots(g, h);
    REQUIRE(d.new_edges.size() == 1);
    CHECK(d.new_edges[0].type == "fresh");
    TempDir dir;
    WriteDiff(d, dir / "d.tsv");
    const SnapshotDiff back = ReadDiff(dir / "d.tsv");
    CHECK(back.new_edges == d.new_edges);
  }
}

}  // namespace
}  // namespace mpemb
