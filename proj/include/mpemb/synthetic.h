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

#ifndef MPEMB_SYNTHETIC_H_
#define MPEMB_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>

#include "mpemb/graph.h"

namespace mpemb {

/// Two communities with stochastic-block edges. Nodes of the first block are
/// typed A or B, nodes of the second C or D, uniformly at random. A random
/// `holdout` share of the edges is missing from t0 and present in t1.
struct TwoBlockConfig {
  std::size_t block_size = 500;
  double p_in = 0.02;
  double p_out = 0.001;
  double holdout = 0.1;
  std::uint64_t seed = 0;
};

struct SnapshotPair {
  KnowledgeGraph t0;
  KnowledgeGraph t1;
};

SnapshotPair MakeTwoBlockGraph(const TwoBlockConfig& cfg);

/// Union of `degree` random perfect matchings on `num_nodes` (even) nodes of
/// a single type. Matching k uses edge type `m<k>`, so every node has exactly
/// `degree` typed incident edges.
KnowledgeGraph MakeRegularGraph(std::size_t num_nodes, int degree,
                                std::uint64_t seed);

}  // namespace mpemb

#endif  // MPEMB_SYNTHETIC_H_
