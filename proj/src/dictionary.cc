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

#include "mpemb/dictionary.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <string>

#include "mpemb/error.h"
#include "mpemb/tsv.h"

namespace mpemb {

std::uint32_t MetaPathDictionary::Intern(const MetaPath& mp) {
  auto it = path_index_.find(mp);
  if (it != path_index_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(paths_.size());
  paths_.push_back(mp);
  path_index_.emplace(mp, id);
  return id;
}

void MetaPathDictionary::Record(NodeId start, NodeId end, const MetaPath& mp,
                                std::uint64_t count) {
  if (start <= end) {
    Add(NodePair{start, end}, mp, count, 0);
    return;
  }
  auto tokens = mp.tokens();
  scratch_.Truncate(0);
  for (std::size_t i = tokens.size(); i-- > 0;) {
    if (i % 2 == 0) {
      scratch_.PushNode(NodeTypeId(tokens[i]));
    } else {
      scratch_.PushEdge(EdgeTypeId(tokens[i]));
    }
  }
  Add(NodePair{end, start}, scratch_, 0, count);
}

void MetaPathDictionary::Add(NodePair pair, const MetaPath& mp,
                             std::uint64_t from_first,
                             std::uint64_t from_second) {
  const std::uint32_t id = Intern(mp);
  auto& entries = pairs_[pair.key()];
  auto it = std::find_if(entries.begin(), entries.end(),
                         [id](const PathCount& pc) { return pc.path == id; });
  if (it == entries.end()) {
    entries.push_back(PathCount{id, from_first, from_second});
  } else {
    it->from_first += from_first;
    it->from_second += from_second;
  }
  total_records_ += from_first + from_second;
}

std::span<const PathCount> MetaPathDictionary::Entries(NodePair pair) const {
  auto it = pairs_.find(pair.key());
  if (it == pairs_.end()) return {};
  return it->second;
}

std::vector<MetaPath> MetaPathDictionary::Get(NodeId u, NodeId v) const {
  std::vector<MetaPath> out;
  const NodePair pair = NodePair::Canonical(u, v);
  for (const PathCount& pc : Entries(pair)) {
    out.push_back(u <= v ? paths_[pc.path] : paths_[pc.path].Reversed());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodePair> MetaPathDictionary::Pairs() const {
  std::vector<NodePair> out;
  out.reserve(pairs_.size());
  for (const auto& [key, entries] : pairs_) {
    out.push_back(NodePair{static_cast<NodeId>(key >> 32),
                           static_cast<NodeId>(key & 0xffffffffu)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

void MetaPathDictionary::Merge(const MetaPathDictionary& other) {
  for (const auto& [key, entries] : other.pairs_) {
    const NodePair pair{static_cast<NodeId>(key >> 32),
                        static_cast<NodeId>(key & 0xffffffffu)};
    for (const PathCount& pc : entries) {
      Add(pair, other.paths_[pc.path], pc.from_first, pc.from_second);
    }
  }
}

bool MetaPathDictionary::SameContent(const MetaPathDictionary& other,
                                     bool per_direction) const {
  if (pairs_.size() != other.pairs_.size()) return false;
  using Counts = std::map<MetaPath, std::pair<std::uint64_t, std::uint64_t>>;
  auto collect = [per_direction](const MetaPathDictionary& d,
                                 const std::vector<PathCount>& entries) {
    Counts c;
    for (const PathCount& pc : entries) {
      c[d.paths_[pc.path]] =
          per_direction ? std::pair{pc.from_first, pc.from_second}
                        : std::pair{pc.total(), std::uint64_t{0}};
    }
    return c;
  };
  for (const auto& [key, entries] : pairs_) {
    auto it = other.pairs_.find(key);
    if (it == other.pairs_.end()) return false;
    if (collect(*this, entries) != collect(other, it->second)) return false;
  }
  return true;
}

std::vector<std::filesystem::path> WriteDictionary(
    const MetaPathDictionary& dict, const KnowledgeGraph& graph,
    const std::filesystem::path& dir, std::size_t shards) {
  if (shards == 0) shards = 1;
  std::filesystem::create_directories(dir);
  for (const auto& stale : DictionaryShards(dir)) {
    std::filesystem::remove(stale);
  }
  std::vector<std::filesystem::path> files;
  std::vector<std::ofstream> outs;
  for (std::size_t s = 0; s < shards; ++s) {
    files.push_back(dir / ("metapaths-" + std::to_string(s) + ".tsv"));
    outs.emplace_back(files.back());
    if (!outs.back()) throw Error("cannot write " + files.back().string());
  }
  const std::size_t n = std::max<std::size_t>(graph.num_nodes(), 1);
  std::vector<std::pair<std::string, std::uint64_t>> lines;
  for (const NodePair& pair : dict.Pairs()) {
    const std::size_t shard = std::size_t{pair.first} * shards / n;
    lines.clear();
    for (const PathCount& pc : dict.Entries(pair)) {
      lines.emplace_back(SerializeMetaPath(dict.path(pc.path)), pc.total());
    }
    std::sort(lines.begin(), lines.end());
    auto& out = outs[std::min(shard, shards - 1)];
    const std::string& u = graph.node_names().Name(pair.first);
    const std::string& v = graph.node_names().Name(pair.second);
    for (const auto& [word, count] : lines) {
      out << u << '\t' << v << '\t' << count << '\t' << word << '\n';
    }
  }
  return files;
}

MetaPathDictionary ReadDictionary(
    const KnowledgeGraph& graph,
    std::span<const std::filesystem::path> files) {
  MetaPathDictionary dict;
  for (const auto& file : files) {
    const std::string name = file.string();
    ForEachTsvLine(file, [&](std::span<const std::string_view> f,
                             std::size_t line) {
      if (f.size() != 4) throw ParseError(name, line, "expected 4 fields");
      auto u = graph.FindNode(f[0]);
      auto v = graph.FindNode(f[1]);
      if (!u || !v) {
        throw IntegrityError(name + ":" + std::to_string(line) +
                             ": unknown node in meta-path dump");
      }
      const std::uint64_t count = ParseUint(f[2], name, line);
      MetaPath mp;
      try {
        mp = ParseMetaPath(f[3]);
      } catch (const ConfigError& e) {
        throw ParseError(name, line, e.what());
      }
      for (std::size_t i = 0; i < mp.length(); ++i) {
        if (mp.node_type(i).value >= graph.num_node_types() ||
            (i + 1 < mp.length() &&
             mp.edge_type(i).value >= graph.num_edge_types())) {
          throw IntegrityError(name + ":" + std::to_string(line) +
                               ": type id out of range for this graph");
        }
      }
      if (*u <= *v) {
        dict.Add(NodePair{*u, *v}, mp, count, 0);
      } else {
        dict.Add(NodePair{*v, *u}, mp.Reversed(), count, 0);
      }
    });
  }
  return dict;
}

std::vector<std::filesystem::path> DictionaryShards(
    const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  if (!std::filesystem::is_directory(dir)) {
    throw Error("not a directory: " + dir.string());
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("metapaths-", 0) == 0 && entry.path().extension() == ".tsv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace mpemb
