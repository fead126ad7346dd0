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

#include "mpemb/features.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "mpemb/error.h"
#include "mpemb/tsv.h"

namespace mpemb {

std::string_view ToString(FeatureSource source) {
  switch (source) {
    case FeatureSource::kEdgeMetaPaths: return "edge-mp";
    case FeatureSource::kNodeMetaPaths: return "node-mp";
    case FeatureSource::kNodeTypes: return "node-type";
    case FeatureSource::kPair: return "pair";
  }
  return "?";
}

PairOperator ParsePairOperator(std::string_view name) {
  if (name == "average") return PairOperator::kAverage;
  if (name == "concat") return PairOperator::kConcat;
  if (name == "hadamard") return PairOperator::kHadamard;
  if (name == "weighted-l1") return PairOperator::kWeightedL1;
  if (name == "weighted-l2") return PairOperator::kWeightedL2;
  throw ConfigError("unknown pair operator '" + std::string(name) + "'");
}

std::string_view ToString(PairOperator op) {
  switch (op) {
    case PairOperator::kAverage: return "average";
    case PairOperator::kConcat: return "concat";
    case PairOperator::kHadamard: return "hadamard";
    case PairOperator::kWeightedL1: return "weighted-l1";
    case PairOperator::kWeightedL2: return "weighted-l2";
  }
  return "?";
}

const std::vector<double>* PathEmbeddingCache::Get(std::uint32_t path) {
  auto it = cache_.find(path);
  if (it == cache_.end()) {
    std::optional<std::vector<double>> v;
    try {
      v = table_.EmbWord(SerializeMetaPath(dict_.path(path))).values;
    } catch (const OutOfVocabularyError&) {
    }
    it = cache_.emplace(path, std::move(v)).first;
  }
  return it->second ? &*it->second : nullptr;
}

namespace {

template <typename Ids>
FeatureVector MeanOf(const Ids& ids, PathEmbeddingCache& cache, int dim,
                     FeatureSource source) {
  FeatureVector out;
  out.source = source;
  out.values.assign(static_cast<std::size_t>(dim), 0.0);
  std::size_t used = 0;
  for (std::uint32_t id : ids) {
    const std::vector<double>* v = cache.Get(id);
    if (!v) {
      ++out.unknown_words;
      continue;
    }
    for (std::size_t k = 0; k < v->size(); ++k) out.values[k] += (*v)[k];
    ++used;
  }
  if (used == 0) {
    out.empty = true;
    std::fill(out.values.begin(), out.values.end(), 0.0);
  } else {
    for (double& x : out.values) x /= static_cast<double>(used);
  }
  return out;
}

}  // namespace

FeatureVector EdgeEmbedding(NodeId i, NodeId j, const MetaPathDictionary& dict,
                            PathEmbeddingCache& cache) {
  std::vector<std::uint32_t> ids;
  for (const PathCount& pc : dict.Entries(NodePair::Canonical(i, j))) {
    ids.push_back(pc.path);
  }
  return MeanOf(ids, cache, cache.dim(), FeatureSource::kEdgeMetaPaths);
}

NodeMetaPathIndex::NodeMetaPathIndex(const MetaPathDictionary& dict,
                                     std::size_t num_nodes) {
  std::vector<std::map<std::uint32_t, std::uint64_t>> acc(num_nodes);
  for (const NodePair& pair : dict.Pairs()) {
    for (const PathCount& pc : dict.Entries(pair)) {
      acc.at(pair.first)[pc.path] += pc.total();
      if (pair.second != pair.first) acc.at(pair.second)[pc.path] += pc.total();
    }
  }
  paths_.resize(num_nodes);
  for (std::size_t v = 0; v < num_nodes; ++v) {
    paths_[v].assign(acc[v].begin(), acc[v].end());
  }
}

FeatureVector NodeEmbeddingMetaPaths(NodeId node, const NodeMetaPathIndex& index,
                                     PathEmbeddingCache& cache,
                                     std::size_t top_k) {
  auto entries = index.Paths(node);
  if (top_k > 0 && entries.size() > top_k) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    entries.resize(top_k);
  }
  std::vector<std::uint32_t> ids;
  for (const auto& e : entries) ids.push_back(e.first);
  return MeanOf(ids, cache, cache.dim(), FeatureSource::kNodeMetaPaths);
}

FeatureVector NodeEmbeddingTypes(NodeId node, const KnowledgeGraph& graph,
                                 const EmbeddingTable& table) {
  FeatureVector out;
  out.source = FeatureSource::kNodeTypes;
  out.values.assign(static_cast<std::size_t>(table.dim()), 0.0);
  const auto types = graph.NodeTypes(node);
  for (NodeTypeId t : types) {
    const auto v = table.EmbNodeType(t).values;
    for (std::size_t k = 0; k < v.size(); ++k) out.values[k] += v[k];
  }
  for (double& x : out.values) x /= static_cast<double>(types.size());
  return out;
}

FeatureVector CombinePair(const FeatureVector& a, const FeatureVector& b,
                          PairOperator op) {
  if (a.values.size() != b.values.size()) {
    throw DimensionMismatchError("cannot combine vectors of size " +
                                 std::to_string(a.values.size()) + " and " +
                                 std::to_string(b.values.size()));
  }
  FeatureVector out;
  out.source = FeatureSource::kPair;
  out.op = op;
  out.empty = a.empty || b.empty;
  const std::size_t d = a.values.size();
  if (op == PairOperator::kConcat) {
    out.values = a.values;
    out.values.insert(out.values.end(), b.values.begin(), b.values.end());
    return out;
  }
  out.values.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double x = a.values[k], y = b.values[k];
    switch (op) {
      case PairOperator::kAverage: out.values[k] = (x + y) / 2.0; break;
      case PairOperator::kHadamard: out.values[k] = x * y; break;
      case PairOperator::kWeightedL1: out.values[k] = std::abs(x - y); break;
      case PairOperator::kWeightedL2: out.values[k] = (x - y) * (x - y); break;
      case PairOperator::kConcat: break;
    }
  }
  return out;
}

void WriteFeatures(
    const std::filesystem::path& file,
    const std::vector<std::pair<std::string, FeatureVector>>& rows) {
  std::ofstream out(file);
  if (!out) throw Error("cannot write " + file.string());
  std::string line;
  for (const auto& [id, fv] : rows) {
    line = id;
    line.push_back('\t');
    AppendVector(line, fv.values);
    line.push_back('\n');
    out << line;
  }
}

}  // namespace mpemb
