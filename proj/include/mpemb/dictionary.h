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

#ifndef MPEMB_DICTIONARY_H_
#define MPEMB_DICTIONARY_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <unordered_map>
#include <vector>

#include "mpemb/graph.h"
#include "mpemb/metapath.h"

namespace mpemb {

/// Unordered node pair in canonical order (first <= second).
struct NodePair {
  NodeId first = 0;
  NodeId second = 0;

  static NodePair Canonical(NodeId u, NodeId v) {
    return u <= v ? NodePair{u, v} : NodePair{v, u};
  }
  std::uint64_t key() const {
    return (std::uint64_t{first} << 32) | second;
  }
  auto operator<=>(const NodePair&) const = default;
};

/// A distinct meta-path stored for a pair, oriented from `first` to `second`,
/// with the number of walks that produced it from each end.
struct PathCount {
  std::uint32_t path = 0;
  std::uint64_t from_first = 0;
  std::uint64_t from_second = 0;
  std::uint64_t total() const { return from_first + from_second; }
};

/// Meta-paths found between node pairs. Mining is undirected, so each pair is
/// stored once under its canonical order; a walk from the larger to the
/// smaller id is stored reversed and counted in `from_second`. Identical
/// meta-paths of a pair are kept once with multiplicity counts.
class MetaPathDictionary {
 public:
  std::uint32_t Intern(const MetaPath& mp);
  const MetaPath& path(std::uint32_t id) const { return paths_[id]; }
  std::size_t num_paths() const { return paths_.size(); }

  /// Records one walk from `start` to `end` whose meta-path is `mp`.
  void Record(NodeId start, NodeId end, const MetaPath& mp,
              std::uint64_t count = 1);
  /// Adds `entry` (already canonically oriented) to `pair`.
  void Add(NodePair pair, const MetaPath& mp, std::uint64_t from_first,
           std::uint64_t from_second);

  std::span<const PathCount> Entries(NodePair pair) const;
  /// Distinct meta-paths between u and v, oriented from u to v, sorted.
  std::vector<MetaPath> Get(NodeId u, NodeId v) const;

  std::size_t num_pairs() const { return pairs_.size(); }
  std::uint64_t total_records() const { return total_records_; }
  /// All pairs in ascending order.
  std::vector<NodePair> Pairs() const;

  void Merge(const MetaPathDictionary& other);

  /// Same pairs, same meta-paths per pair and same counts (per direction when
  /// `per_direction`, otherwise totals). Interning order is irrelevant.
  bool SameContent(const MetaPathDictionary& other,
                   bool per_direction = true) const;

 private:
  std::vector<MetaPath> paths_;
  std::unordered_map<MetaPath, std::uint32_t, MetaPathHash> path_index_;
  std::unordered_map<std::uint64_t, std::vector<PathCount>> pairs_;
  std::uint64_t total_records_ = 0;
  MetaPath scratch_;
};

/// Writes `u<TAB>v<TAB>count<TAB>word` lines (node names, canonical pair
/// order, total count) into `dir/metapaths-<shard>.tsv`. Pairs are assigned
/// to shards by contiguous ranges of their first node, matching the
/// start-node partition used by the workers. Lines are sorted, so output is
/// byte-identical for identical content. Returns the written files.
std::vector<std::filesystem::path> WriteDictionary(
    const MetaPathDictionary& dict, const KnowledgeGraph& graph,
    const std::filesystem::path& dir, std::size_t shards);

/// Reads and merges dump files. Counts are summed over files and stored as
/// `from_first`, since the dump keeps only totals.
MetaPathDictionary ReadDictionary(
    const KnowledgeGraph& graph,
    std::span<const std::filesystem::path> files);

/// All `metapaths-*.tsv` files of a directory in name order.
std::vector<std::filesystem::path> DictionaryShards(
    const std::filesystem::path& dir);

}  // namespace mpemb

#endif  // MPEMB_DICTIONARY_H_
