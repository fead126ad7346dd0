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

#include "mpemb/synthetic.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mpemb/error.h"
#include "mpemb/random.h"

namespace mpemb {

SnapshotPair MakeTwoBlockGraph(const TwoBlockConfig& cfg) {
  if (cfg.block_size == 0) throw ConfigError("block size must be positive");
  if (cfg.p_in < 0 || cfg.p_in > 1 || cfg.p_out < 0 || cfg.p_out > 1) {
    throw ConfigError("edge probabilities must be in [0, 1]");
  }
  if (!(cfg.holdout >= 0.0 && cfg.holdout < 1.0)) {
    throw ConfigError("holdout share must be in [0, 1)");
  }
  Rng rng(DeriveSeed(cfg.seed, {0x32626c6bULL}));
  const std::size_t n = 2 * cfg.block_size;
  std::vector<std::string> types(n);
  for (std::size_t v = 0; v < n; ++v) {
    const bool second = Uniform01(rng) < 0.5;
    types[v] = v < cfg.block_size ? (second ? "B" : "A") : (second ? "D" : "C");
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const bool same = (u < cfg.block_size) == (v < cfg.block_size);
      if (Uniform01(rng) < (same ? cfg.p_in : cfg.p_out)) {
        edges.emplace_back(u, v);
      }
    }
  }
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Shuffle(order.begin(), order.end(), rng);
  const auto held = static_cast<std::size_t>(
      std::llround(cfg.holdout * static_cast<double>(edges.size())));
  std::vector<bool> is_held(edges.size(), false);
  for (std::size_t i = 0; i < held; ++i) is_held[order[i]] = true;

  auto build = [&](bool with_held) {
    GraphBuilder b;
    const EdgeTypeId link = b.AddEdgeType("link");
    for (std::size_t v = 0; v < n; ++v) {
      const NodeId id = b.AddNode("v" + std::to_string(v));
      b.AddNodeLabel(id, b.AddNodeType(types[v]));
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (is_held[i] && !with_held) continue;
      b.AddEdge(static_cast<NodeId>(edges[i].first),
                static_cast<NodeId>(edges[i].second), link);
    }
    return std::move(b).Build();
  };
  return {build(false), build(true)};
}

KnowledgeGraph MakeRegularGraph(std::size_t num_nodes, int degree,
                                std::uint64_t seed) {
  if (num_nodes < 2 || num_nodes % 2 != 0) {
    throw ConfigError("regular graphs need an even number of nodes >= 2");
  }
  if (degree < 1) throw ConfigError("degree must be >= 1");
  Rng rng(DeriveSeed(seed, {0x726567ULL}));
  GraphBuilder b;
  const NodeTypeId t = b.AddNodeType("T");
  for (std::size_t v = 0; v < num_nodes; ++v) {
    b.AddNodeLabel(b.AddNode("v" + std::to_string(v)), t);
  }
  std::vector<NodeId> perm(num_nodes);
  for (int k = 0; k < degree; ++k) {
    const EdgeTypeId type = b.AddEdgeType("m" + std::to_string(k));
    for (std::size_t i = 0; i < num_nodes; ++i) perm[i] = static_cast<NodeId>(i);
    Shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < num_nodes; i += 2) {
      b.AddEdge(perm[i], perm[i + 1], type);
    }
  }
  return std::move(b).Build();
}

}  // namespace mpemb
