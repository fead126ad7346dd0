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

#include "mpemb/snapshot.h"

#include <algorithm>
#include <fstream>

#include "mpemb/error.h"
#include "mpemb/tsv.h"

namespace mpemb {

SnapshotDiff DiffSnapshots(const KnowledgeGraph& earlier,
                           const KnowledgeGraph& later) {
  SnapshotDiff diff;
  std::vector<bool> is_new(later.num_nodes(), false);
  for (NodeId v = 0; v < later.num_nodes(); ++v) {
    const std::string& name = later.node_names().Name(v);
    if (!earlier.FindNode(name)) {
      is_new[v] = true;
      diff.new_nodes.push_back(name);
    }
  }
  std::sort(diff.new_nodes.begin(), diff.new_nodes.end());

  for (const Edge& e : later.edges()) {
    const std::string& src = later.node_names().Name(e.src);
    const std::string& dst = later.node_names().Name(e.dst);
    const std::string& type = later.edge_type_names().Name(e.type.value);
    bool present = false;
    if (!is_new[e.src] && !is_new[e.dst]) {
      auto s = earlier.FindNode(src);
      auto d = earlier.FindNode(dst);
      auto t = earlier.FindEdgeType(type);
      present = t && earlier.HasEdge(*s, *d, *t);
    }
    if (!present) {
      diff.new_edges.push_back(
          NewEdge{src, dst, type, is_new[e.src] || is_new[e.dst]});
    }
  }
  return diff;
}

void WriteDiff(const SnapshotDiff& diff, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw Error("cannot write " + file.string());
  for (const NewEdge& e : diff.new_edges) {
    out << e.src << '\t' << e.dst << '\t' << e.type << '\t'
        << (e.touches_new_node ? 1 : 0) << '\n';
  }
}

SnapshotDiff ReadDiff(const std::filesystem::path& file) {
  SnapshotDiff diff;
  const std::string name = file.string();
  ForEachTsvLine(file, [&](std::span<const std::string_view> f,
                           std::size_t line) {
    if (f.size() != 4) throw ParseError(name, line, "expected 4 fields");
    if (f[3] != "0" && f[3] != "1") {
      throw ParseError(name, line, "touches_new_node must be 0 or 1");
    }
    diff.new_edges.push_back(NewEdge{std::string(f[0]), std::string(f[1]),
                                     std::string(f[2]), f[3] == "1"});
  });
  return diff;
}

}  // namespace mpemb
