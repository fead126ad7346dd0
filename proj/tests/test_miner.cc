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

#include <random>
#include <set>

#include "mpemb/dictionary.h"
#include "mpemb/error.h"
#include "mpemb/metapath.h"
#include "mpemb/miner.h"
#include "test_util.h"

namespace mpemb {
namespace {

using testing::MakeGraph;
using testing::Word;

std::set<std::string> Words(const MetaPathDictionary& d, NodeId u, NodeId v) {
  std::set<std::string> out;
  for (const MetaPath& mp : d.Get(u, v)) out.insert(SerializeMetaPath(mp));
  return out;
}

KnowledgeGraph PathGraph() {
  return MakeGraph({{"1", {"A"}}, {"2", {"B"}}, {"3", {"A"}}},
                   {{"1", "2", "r"}, {"2", "3", "s"}});
}

TEST_CASE("serialize and parse meta-paths") {
  CHECK(SerializeMetaPath(MetaPath({3, 7, 5})) == "n3.e7.n5");
  CHECK(SerializeMetaPath(MetaPath({0})) == "n0");
  CHECK_THROWS_AS(MetaPath({1, 2}), ConfigError);
  for (const char* bad : {"", "n1.", "e1", "n1.n2.n3", "n1.e", "x1", "n1.e2", "n-1"}) {
    CHECK_THROWS_AS(ParseMetaPath(bad), ConfigError);
  }
  std::mt19937_64 rng(1);
  for (int i = 0; i < 500; ++i) {
    const std::size_t len = 1 + rng() % 6;
    std::vector<std::uint32_t> tokens;
    for (std::size_t k = 0; k < 2 * len - 1; ++k) {
      tokens.push_back(static_cast<std::uint32_t>(rng() % 1000000));
    }
    const MetaPath mp(tokens);
    CHECK(ParseMetaPath(SerializeMetaPath(mp)) == mp);
    CHECK(mp.Reversed().Reversed() == mp);
  }
}

TEST_CASE("serialization is injective on random pairs") {
  std::mt19937_64 rng(2);
  std::map<std::string, MetaPath> seen;
  for (int i = 0; i < 3000; ++i) {
    const std::size_t len = 1 + rng() % 3;
    std::vector<std::uint32_t> tokens;
    for (std::size_t k = 0; k < 2 * len - 1; ++k) {
      tokens.push_back(static_cast<std::uint32_t>(rng() % 12));
    }
    const MetaPath mp(tokens);
    auto [it, inserted] = seen.emplace(SerializeMetaPath(mp), mp);
    if (!inserted) CHECK(it->second == mp);
  }
}

TEST_CASE("mine_all on the 3-node path graph") {
  const KnowledgeGraph g = PathGraph();
  MiningConfig cfg;
  cfg.max_length = 3;
  const MetaPathDictionary d = MineAll(g, cfg);
  CHECK(Words(d, 0, 2) == std::set<std::string>{Word(g, {"A", "r", "B", "s", "A"})});
  CHECK(Words(d, 2, 0) == std::set<std::string>{Word(g, {"A", "s", "B", "r", "A"})});
  CHECK(Words(d, 0, 0).count(Word(g, {"A"})) == 1);
}

TEST_CASE("max_length 1 only stores trivial meta-paths") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const KnowledgeGraph g = testing::RandomGraph(rng, 10, 3, 3, 2);
    MiningConfig cfg;
    cfg.max_length = 1;
    const MetaPathDictionary d = MineAll(g, cfg);
    CHECK(d.num_pairs() == g.num_nodes());
    for (const NodePair& p : d.Pairs()) {
      CHECK(p.first == p.second);
      REQUIRE(d.Entries(p).size() == 1);
      CHECK(d.path(d.Entries(p)[0].path).length() == 1);
    }
  }
}

TEST_CASE("mine_all on the triangle") {
  const KnowledgeGraph g =
      MakeGraph({{"1", {"A"}}, {"2", {"B"}}, {"3", {"A"}}},
                {{"1", "2", "r"}, {"2", "3", "s"}, {"1", "3", "t"}});
  MiningConfig cfg;
  cfg.max_length = 3;
  const MetaPathDictionary d = MineAll(g, cfg);
  CHECK(Words(d, 0, 2) == std::set<std::string>{Word(g, {"A", "t", "A"}),
                                                 Word(g, {"A", "r", "B", "s", "A"})});
}

TEST_CASE("mine_all matches the brute-force walk oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const KnowledgeGraph g = testing::RandomGraph(rng, 12, 4, 4, 4);
    MiningConfig cfg;
    cfg.max_length = 1 + static_cast<int>(rng() % 4);
    const auto expected = testing::BruteForceWalks(g, cfg.max_length);
    const auto actual = testing::DirectedView(MineAll(g, cfg));
    CHECK(actual == expected);
  }
}

TEST_CASE("dictionary symmetry: (v,u) holds the reversed meta-paths of (u,v)") {
  std::mt19937_64 rng(9);
  const KnowledgeGraph g = testing::RandomGraph(rng, 12, 4, 3, 3);
  MiningConfig cfg;
  cfg.max_length = 3;
  const MetaPathDictionary d = MineAll(g, cfg);
  for (const NodePair& p : d.Pairs()) {
    std::set<MetaPath> fwd, back;
    for (const MetaPath& mp : d.Get(p.first, p.second)) fwd.insert(mp);
    for (const MetaPath& mp : d.Get(p.second, p.first)) back.insert(mp.Reversed());
    CHECK(fwd == back);
  }
}

TEST_CASE("probabilistic mining: degenerate probabilities") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const KnowledgeGraph g = testing::RandomGraph(rng, 14, 4, 3, 3);
    MiningConfig cfg;
    cfg.max_length = 3;
    cfg.seed = trial;
    CHECK(MineProbabilistic(g, cfg).SameContent(MineAll(g, cfg)));
    cfg.node_skip_probability = 1.0;
    CHECK(MineProbabilistic(g, cfg).num_pairs() == 0);
  }
}

TEST_CASE("probabilistic output is a subset of mine_all") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const KnowledgeGraph g = testing::RandomGraph(rng, 14, 4, 3, 3);
    MiningConfig cfg;
    cfg.max_length = 3;
    cfg.seed = trial;
    cfg.node_skip_probability = 0.3;
    cfg.edge_skip_probability = 0.4;
    const auto all = testing::DirectedView(MineAll(g, cfg));
    const auto some = testing::DirectedView(MineProbabilistic(g, cfg));
    for (const auto& [pair, paths] : some) {
      auto it = all.find(pair);
      REQUIRE(it != all.end());
      for (const auto& [mp, count] : paths) {
        auto jt = it->second.find(mp);
        REQUIRE(jt != it->second.end());
        CHECK(count <= jt->second);
      }
    }
  }
}

TEST_CASE("worker count does not change the result") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 8; ++trial) {
    const KnowledgeGraph g = testing::RandomGraph(rng, 20, 4, 3, 3);
    MiningConfig cfg;
    cfg.max_length = 3;
    cfg.seed = 100 + trial;
    cfg.edge_skip_probability = 0.3;
    cfg.node_skip_probability = 0.2;
    const MetaPathDictionary one = MineProbabilistic(g, cfg);
    cfg.workers = 4;
    CHECK(MineProbabilistic(g, cfg).SameContent(one));
  }
}

TEST_CASE("max_paths_per_node stops a start node") {
  std::mt19937_64 rng(14);
  const KnowledgeGraph g = testing::RandomGraph(rng, 15, 4, 2, 2);
  MiningConfig cfg;
  cfg.max_length = 4;
  cfg.max_paths_per_node = 3;
  MiningStats stats;
  const MetaPathDictionary d = MineProbabilistic(g, cfg, &stats);
  CHECK(d.total_records() <= 3 * g.num_nodes());
}

TEST_CASE("record budget aborts with a partial dictionary") {
  std::mt19937_64 rng(15);
  const KnowledgeGraph g = testing::RandomGraph(rng, 20, 4, 2, 2);
  MiningConfig cfg;
  cfg.max_length = 4;
  cfg.max_records = 10;
  try {
    MineAll(g, cfg);
    FAIL("expected MiningBudgetError");
  } catch (const MiningBudgetError& e) {
    CHECK(e.partial().total_records() <= 10);
  }
}

TEST_CASE("mining config validation") {
  MiningConfig cfg;
  cfg.max_length = 0;
  CHECK_THROWS_AS(cfg.Validate(), ConfigError);
  cfg.max_length = 2;
  cfg.edge_skip_probability = 1.5;
  CHECK_THROWS_AS(cfg.Validate(), ConfigError);
}

TEST_CASE("expand_multi_type") {
  const NodeTypeId a(0), b(1), c(2);
  const EdgeTypeId r(0);
  auto words = [](const ExpandedPaths& e) {
    std::set<std::string> out;
    for (const auto& mp : e.paths) out.insert(SerializeMetaPath(mp));
    return out;
  };
  CHECK(words(ExpandMultiType({{{a}, {b}}, {r}}, MultiTypeMode::kCartesianProduct, 100)) ==
        std::set<std::string>{"n0.e0.n1"});
  CHECK(words(ExpandMultiType({{{a, c}, {b}}, {r}}, MultiTypeMode::kCartesianProduct, 100)) ==
        std::set<std::string>{"n0.e0.n1", "n2.e0.n1"});
  CHECK(words(ExpandMultiType({{{c, a}, {b}}, {r}}, MultiTypeMode::kFirstType, 100)) ==
        std::set<std::string>{"n0.e0.n1"});
  const auto capped =
      ExpandMultiType({{{a, b, c}, {a, b, c}}, {r}}, MultiTypeMode::kCartesianProduct, 4);
  CHECK(capped.truncated);
  CHECK(capped.paths.size() == 4);
  CHECK_THROWS_AS(ExpandMultiType({{{}, {b}}, {r}}, MultiTypeMode::kFirstType, 4), ConfigError);
}

TEST_CASE("cartesian mode stores one meta-path per type combination") {
  const KnowledgeGraph g = MakeGraph({{"x", {"A", "C"}}, {"y", {"B"}}}, {{"x", "y", "r"}});
  MiningConfig cfg;
  cfg.max_length = 2;
  cfg.multi_type_mode = MultiTypeMode::kCartesianProduct;
  const MetaPathDictionary d = MineAll(g, cfg);
  CHECK(Words(d, 0, 1) == std::set<std::string>{Word(g, {"A", "r", "B"}), Word(g, {"C", "r", "B"})});
  cfg.multi_type_mode = MultiTypeMode::kFirstType;
  CHECK(Words(MineAll(g, cfg), 0, 1) == std::set<std::string>{Word(g, {"A", "r", "B"})});
}

TEST_CASE("min_length filters short walks") {
  const KnowledgeGraph g = PathGraph();
  MiningConfig cfg;
  cfg.max_length = 3;
  cfg.min_length = 3;
  const MetaPathDictionary d = MineAll(g, cfg);
  for (const NodePair& p : d.Pairs()) {
    for (const PathCount& pc : d.Entries(p)) CHECK(d.path(pc.path).length() == 3);
  }
}

TEST_CASE("dictionary dump round-trips totals") {
  std::mt19937_64 rng(16);
  const KnowledgeGraph g = testing::RandomGraph(rng, 15, 4, 3, 3);
  MiningConfig cfg;
  cfg.max_length = 3;
  const MetaPathDictionary d = MineAll(g, cfg);
  testing::TempDir dir;
  const auto files = WriteDictionary(d, g, dir.path(), 3);
  CHECK(files.size() == 3);
  CHECK(DictionaryShards(dir.path()) == files);
  const MetaPathDictionary back = ReadDictionary(g, files);
  CHECK(back.SameContent(d, /*per_direction=*/false));
  // rewriting the same content gives the same bytes
  testing::TempDir again;
  const auto files2 = WriteDictionary(back, g, again.path(), 3);
  for (std::size_t i = 0; i < files.size(); ++i) {
    CHECK(testing::ReadText(files[i]) == testing::ReadText(files2[i]));
  }
}

TEST_CASE("merge equals mining the union of start nodes") {
  std::mt19937_64 rng(17);
  const KnowledgeGraph g = testing::RandomGraph(rng, 16, 4, 3, 3);
  MiningConfig cfg;
  cfg.max_length = 3;
  REQUIRE(g.num_nodes() >= 2);
  MiningConfig lo = cfg, hi = cfg;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    (v % 2 ? lo : hi).start_nodes.push_back(v);
  }
  MetaPathDictionary merged = MineAll(g, lo);
  merged.Merge(MineAll(g, hi));
  CHECK(merged.SameContent(MineAll(g, cfg)));
}

}  // namespace
}  // namespace mpemb
