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

#ifndef MPEMB_METAPATH_H_
#define MPEMB_METAPATH_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpemb/ids.h"

namespace mpemb {

/// Alternating sequence <node type, edge type, node type, ..., node type>.
/// Even token positions hold node type ids, odd positions edge type ids.
class MetaPath {
 public:
  MetaPath() = default;
  /// Throws ConfigError unless the token count is odd.
  explicit MetaPath(std::vector<std::uint32_t> tokens);
  static MetaPath Single(NodeTypeId type) { return MetaPath({type.value}); }

  /// Number of node positions.
  std::size_t length() const { return (tokens_.size() + 1) / 2; }
  bool empty() const { return tokens_.empty(); }
  NodeTypeId node_type(std::size_t i) const {
    return NodeTypeId(tokens_[2 * i]);
  }
  EdgeTypeId edge_type(std::size_t i) const {
    return EdgeTypeId(tokens_[2 * i + 1]);
  }
  std::span<const std::uint32_t> tokens() const { return tokens_; }

  /// Same path read from the other end.
  MetaPath Reversed() const;

  // Incremental construction used by the miner's walk buffer.
  void PushNode(NodeTypeId t) { tokens_.push_back(t.value); }
  void PushEdge(EdgeTypeId t) { tokens_.push_back(t.value); }
  void Truncate(std::size_t token_count) { tokens_.resize(token_count); }
  std::size_t token_count() const { return tokens_.size(); }

  auto operator<=>(const MetaPath&) const = default;

 private:
  std::vector<std::uint32_t> tokens_;
};

struct MetaPathHash {
  std::size_t operator()(const MetaPath& mp) const noexcept;
};

/// Canonical word for a meta-path: `n<id>.e<id>.n<id>...` with no spaces.
std::string SerializeMetaPath(const MetaPath& mp);
/// Inverse of SerializeMetaPath. Throws ConfigError on a malformed word.
MetaPath ParseMetaPath(std::string_view word);
/// Splits a word into its `n<id>` / `e<id>` tokens without validation.
std::vector<std::string_view> MetaPathTokens(std::string_view word);

}  // namespace mpemb

#endif  // MPEMB_METAPATH_H_
