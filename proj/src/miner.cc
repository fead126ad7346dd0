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

#include "mpemb/miner.h"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include <spdlog/spdlog.h>

#include "mpemb/random.h"

namespace mpemb {

MultiTypeMode ParseMultiTypeMode(std::string_view name) {
  if (name == "first-type") return MultiTypeMode::kFirstType;
  if (name == "cartesian-product") return MultiTypeMode::kCartesianProduct;
  throw ConfigError("unknown multi-type mode '" + std::string(name) + "'");
}

std::string_view ToString(MultiTypeMode mode) {
  return mode == MultiTypeMode::kFirstType ? "first-type"
                                           : "cartesian-product";
}

void MiningConfig::Validate() const {
  if (max_length < 1) throw ConfigError("max_length must be >= 1");
  if (min_length < 1 || min_length > max_length) {
    throw ConfigError("min_length must be in [1, max_length]");
  }
  auto is_probability = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!is_probability(node_skip_probability)) {
    throw ConfigError("node skip probability must be in [0, 1]");
  }
  if (!is_probability(edge_skip_probability)) {
    throw ConfigError("edge skip probability must be in [0, 1]");
  }
  if (max_paths_per_node && *max_paths_per_node == 0) {
    throw ConfigError("max_paths_per_node must be positive");
  }
  if (product_cap == 0) throw ConfigError("product_cap must be positive");
  if (workers < 1) throw ConfigError("workers must be >= 1");
}

ExpandedPaths ExpandMultiType(const TypeSetPath& path, MultiTypeMode mode,
                              std::size_t cap) {
  const auto& sets = path.node_types;
  if (sets.empty() || path.edge_types.size() + 1 != sets.size()) {
    throw ConfigError("template needs one more node position than edges");
  }
  for (const auto& s : sets) {
    if (s.empty()) throw ConfigError("empty node type set in template");
  }
  ExpandedPaths out;
  std::vector<std::size_t> pick(sets.size(), 0);
  auto emit = [&](auto choose) {
    MetaPath mp;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (i > 0) mp.PushEdge(path.edge_types[i - 1]);
      mp.PushNode(choose(i));
    }
    out.paths.push_back(std::move(mp));
  };
  if (mode == MultiTypeMode::kFirstType) {
    emit([&](std::size_t i) {
      return *std::min_element(sets[i].begin(), sets[i].end());
    });
    return out;
  }
  // Odometer over the positions, last position varying fastest.
  while (true) {
    if (out.paths.size() == cap) {
      out.truncated = true;
      return out;
    }
    emit([&](std::size_t i) { return sets[i][pick[i]]; });
    std::size_t i = sets.size();
    while (i > 0) {
      --i;
      if (++pick[i] < sets[i].size()) break;
      pick[i] = 0;
      if (i == 0) return out;
    }
  }
}

namespace {

class WalkMiner {
 public:
  WalkMiner(const KnowledgeGraph& graph, const MiningConfig& cfg,
            std::atomic<std::uint64_t>& records, std::atomic<bool>& abort)
      : graph_(graph), cfg_(cfg), records_(records), abort_(abort) {}

  void MineFrom(NodeId start) {
    Rng rng(DeriveSeed(cfg_.seed, {start}));
    if (cfg_.node_skip_probability > 0.0 &&
        Uniform01(rng) < cfg_.node_skip_probability) {
      ++stats_.start_nodes_skipped;
      return;
    }
    ++stats_.start_nodes_processed;
    start_ = start;
    recorded_ = 0;
    stop_ = false;
    rng_ = &rng;
    Visit(start, cfg_.max_length);
    if (stop_ && !abort_.load(std::memory_order_relaxed)) {
      ++stats_.start_nodes_stopped_early;
    }
  }

  MetaPathDictionary& dict() { return dict_; }
  const MiningStats& stats() const { return stats_; }

 private:
  void Visit(NodeId v, int remaining) {
    auto types = graph_.NodeTypes(v);
    walk_nodes_.push_back(v);
    multi_typed_ += types.size() > 1 ? 1 : 0;
    buffer_.PushNode(types.front());

    if (static_cast<int>(walk_nodes_.size()) >= cfg_.min_length) Record(v);

    if (remaining > 1 && !stop_) {
      const std::size_t mark = buffer_.token_count();
      for (const Neighbor& nb : graph_.Neighbors(v)) {
        if (stop_) break;
        if (cfg_.edge_skip_probability > 0.0 &&
            Uniform01(*rng_) < cfg_.edge_skip_probability) {
          continue;
        }
        walk_edges_.push_back(nb.type);
        buffer_.PushEdge(nb.type);
        Visit(nb.node, remaining - 1);
        buffer_.Truncate(mark);
        walk_edges_.pop_back();
      }
    }

    buffer_.Truncate(buffer_.token_count() - 1);
    multi_typed_ -= types.size() > 1 ? 1 : 0;
    walk_nodes_.pop_back();
  }

  void Record(NodeId end) {
    if (multi_typed_ == 0 ||
        cfg_.multi_type_mode == MultiTypeMode::kFirstType) {
      Store(end, buffer_);
      return;
    }
    TypeSetPath tpl;
    for (NodeId n : walk_nodes_) {
      auto types = graph_.NodeTypes(n);
      tpl.node_types.emplace_back(types.begin(), types.end());
    }
    tpl.edge_types = walk_edges_;
    auto expanded = ExpandMultiType(tpl, cfg_.multi_type_mode,
                                    cfg_.product_cap);
    if (expanded.truncated) ++stats_.truncated_expansions;
    for (const MetaPath& mp : expanded.paths) {
      if (stop_) break;
      Store(end, mp);
    }
  }

  void Store(NodeId end, const MetaPath& mp) {
    dict_.Record(start_, end, mp);
    ++recorded_;
    if (cfg_.max_paths_per_node && recorded_ >= *cfg_.max_paths_per_node) {
      stop_ = true;
    }
    if (cfg_.max_records > 0) {
      const auto total = records_.fetch_add(1, std::memory_order_relaxed) + 1;
      if (total >= cfg_.max_records) abort_.store(true);
    }
    if (abort_.load(std::memory_order_relaxed)) stop_ = true;
  }

  const KnowledgeGraph& graph_;
  const MiningConfig& cfg_;
  std::atomic<std::uint64_t>& records_;
  std::atomic<bool>& abort_;
  MetaPathDictionary dict_;
  MiningStats stats_;

  NodeId start_ = 0;
  std::size_t recorded_ = 0;
  bool stop_ = false;
  Rng* rng_ = nullptr;
  MetaPath buffer_;
  std::vector<NodeId> walk_nodes_;
  std::vector<EdgeTypeId> walk_edges_;
  int multi_typed_ = 0;
};

}  // namespace

MetaPathDictionary MineProbabilistic(const KnowledgeGraph& graph,
                                     const MiningConfig& cfg,
                                     MiningStats* stats) {
  cfg.Validate();
  std::vector<NodeId> starts = cfg.start_nodes;
  if (starts.empty()) {
    starts.resize(graph.num_nodes());
    std::iota(starts.begin(), starts.end(), NodeId{0});
  }
  for (NodeId s : starts) {
    if (s >= graph.num_nodes()) throw ConfigError("start node out of range");
  }

  const std::size_t workers = std::min<std::size_t>(
      static_cast<std::size_t>(cfg.workers), std::max<std::size_t>(starts.size(), 1));
  std::atomic<std::uint64_t> records{0};
  std::atomic<bool> abort{false};
  std::vector<WalkMiner> miners;
  miners.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    miners.emplace_back(graph, cfg, records, abort);
  }
  // Contiguous start-node ranges; workers share nothing mutable but the
  // budget counter.
  auto run = [&](std::size_t w) {
    const std::size_t begin = starts.size() * w / workers;
    const std::size_t end = starts.size() * (w + 1) / workers;
    for (std::size_t i = begin; i < end; ++i) {
      if (abort.load(std::memory_order_relaxed)) break;
      miners[w].MineFrom(starts[i]);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }

  MetaPathDictionary merged = std::move(miners[0].dict());
  MiningStats total = miners[0].stats();
  for (std::size_t w = 1; w < workers; ++w) {
    merged.Merge(miners[w].dict());
    const auto& s = miners[w].stats();
    total.start_nodes_processed += s.start_nodes_processed;
    total.start_nodes_skipped += s.start_nodes_skipped;
    total.start_nodes_stopped_early += s.start_nodes_stopped_early;
    total.truncated_expansions += s.truncated_expansions;
  }
  if (total.truncated_expansions > 0) {
    spdlog::warn("{} multi-type expansions truncated at {} meta-paths",
                 total.truncated_expansions, cfg.product_cap);
  }
  if (stats) *stats = total;
  if (abort.load()) {
    throw MiningBudgetError("mining aborted after " +
                                std::to_string(cfg.max_records) +
                                " recorded walks",
                            std::move(merged));
  }
  return merged;
}

MetaPathDictionary MineAll(const KnowledgeGraph& graph, MiningConfig cfg,
                           MiningStats* stats) {
  cfg.node_skip_probability = 0.0;
  cfg.edge_skip_probability = 0.0;
  return MineProbabilistic(graph, cfg, stats);
}

}  // namespace mpemb
