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

#include "mpemb/experiment.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <thread>
#include <unordered_set>

#include <spdlog/spdlog.h>

#include "mpemb/error.h"
#include "mpemb/random.h"
#include "mpemb/trainer.h"
#include "mpemb/tsv.h"

namespace mpemb {

FeatureMode ParseFeatureMode(std::string_view name) {
  if (name == "node-type") return FeatureMode::kNodeTypes;
  if (name == "node-mp") return FeatureMode::kNodeMetaPaths;
  if (name == "edge-mp") return FeatureMode::kEdgeMetaPaths;
  throw ConfigError("unknown feature mode '" + std::string(name) + "'");
}

std::string_view ToString(FeatureMode mode) {
  switch (mode) {
    case FeatureMode::kNodeTypes: return "node-type";
    case FeatureMode::kNodeMetaPaths: return "node-mp";
    case FeatureMode::kEdgeMetaPaths: return "edge-mp";
  }
  return "?";
}

NegativeSampling ParseNegativeSampling(std::string_view name) {
  if (name == "uniform") return NegativeSampling::kUniform;
  if (name == "degree") return NegativeSampling::kDegree;
  throw ConfigError("unknown negative sampling '" + std::string(name) + "'");
}

std::string_view ToString(NegativeSampling mode) {
  return mode == NegativeSampling::kUniform ? "uniform" : "degree";
}

LabeledEdgeSet BuildLabeledSet(const SnapshotDiff& diff,
                               const KnowledgeGraph& g0,
                               double sample_fraction, std::uint64_t seed,
                               NegativeSampling mode) {
  if (!(sample_fraction > 0.0 && sample_fraction <= 1.0)) {
    throw ConfigError("sample fraction must be in (0, 1]");
  }
  LabeledEdgeSet out;
  out.seed = seed;
  std::unordered_set<std::uint64_t> new_pairs;
  std::set<NodePair> eligible;
  for (const NewEdge& e : diff.new_edges) {
    if (e.touches_new_node) continue;
    auto u = g0.FindNode(e.src);
    auto v = g0.FindNode(e.dst);
    if (!u || !v) continue;
    const NodePair pair = NodePair::Canonical(*u, *v);
    new_pairs.insert(pair.key());
    if (*u == *v || g0.Adjacent(*u, *v)) continue;
    eligible.insert(pair);
  }
  if (eligible.empty()) {
    throw ExperimentError(
        "no new edge joins two nodes of the earlier snapshot; nothing to "
        "predict");
  }
  out.positives.assign(eligible.begin(), eligible.end());
  Rng rng(DeriveSeed(seed, {0x706f73ULL}));
  if (sample_fraction < 1.0) {
    const auto keep = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(
               sample_fraction * static_cast<double>(out.positives.size()))));
    Shuffle(out.positives.begin(), out.positives.end(), rng);
    out.positives.resize(keep);
    std::sort(out.positives.begin(), out.positives.end());
  }

  const std::size_t n = g0.num_nodes();
  std::vector<double> cumulative;
  if (mode == NegativeSampling::kDegree) {
    double total = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      total += static_cast<double>(g0.Degree(v));
      cumulative.push_back(total);
    }
    if (total <= 0.0) {
      throw ExperimentError("degree-proportional negatives need edges in t0");
    }
  }
  auto draw = [&]() -> NodeId {
    if (mode == NegativeSampling::kUniform) {
      return static_cast<NodeId>(UniformIndex(rng, n));
    }
    const double u = Uniform01(rng) * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    return static_cast<NodeId>(it - cumulative.begin());
  };
  std::unordered_set<std::uint64_t> taken;
  std::uint64_t attempts = 0;
  while (out.negatives.size() < out.positives.size()) {
    ++attempts;
    if (attempts >= 10000 &&
        static_cast<double>(out.negatives.size()) <
            0.001 * static_cast<double>(attempts)) {
      throw ExperimentError(
          "graph too dense to sample negative pairs (acceptance rate below "
          "0.1%)");
    }
    if (n < 2) continue;
    const NodeId u = draw();
    const NodeId v = draw();
    if (u == v) continue;
    const NodePair pair = NodePair::Canonical(u, v);
    if (g0.Adjacent(u, v) || new_pairs.count(pair.key()) ||
        !taken.insert(pair.key()).second) {
      continue;
    }
    out.negatives.push_back(pair);
  }
  return out;
}

TrainTestSplit SplitExamples(std::span<const int> labels, double train_fraction,
                             std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train fraction must be in (0, 1)");
  }
  TrainTestSplit split;
  Rng rng(DeriveSeed(seed, {0x73706c6974ULL}));
  for (int c = 0; c <= 1; ++c) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == c) idx.push_back(i);
    }
    Shuffle(idx.begin(), idx.end(), rng);
    auto k = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(idx.size())));
    if (idx.size() >= 2) k = std::clamp<std::size_t>(k, 1, idx.size() - 1);
    split.train.insert(split.train.end(), idx.begin(),
                       idx.begin() + static_cast<std::ptrdiff_t>(k));
    split.test.insert(split.test.end(),
                      idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

void ExperimentConfig::Validate() const {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train fraction must be in (0, 1)");
  }
  if (!(sample_fraction > 0.0 && sample_fraction <= 1.0)) {
    throw ConfigError("sample fraction must be in (0, 1]");
  }
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  logreg.Validate();
}

Report RunExperiment(const ExperimentConfig& cfg, const ExperimentInputs& in) {
  cfg.Validate();
  if (!in.g0 || !in.diff || !in.table) {
    throw ConfigError("experiment needs t0, the snapshot diff and a table");
  }
  if (cfg.feature != FeatureMode::kNodeTypes && !in.dict) {
    throw ConfigError(std::string(ToString(cfg.feature)) +
                      " features need a meta-path dictionary");
  }
  const auto start = std::chrono::steady_clock::now();
  const KnowledgeGraph& g0 = *in.g0;
  const LabeledEdgeSet set = BuildLabeledSet(
      *in.diff, g0, cfg.sample_fraction, DeriveSeed(cfg.seed, {0x6c6162ULL}),
      cfg.negatives);

  std::vector<NodePair> pairs = set.positives;
  pairs.insert(pairs.end(), set.negatives.begin(), set.negatives.end());
  std::vector<int> labels(pairs.size(), 0);
  std::fill(labels.begin(),
            labels.begin() + static_cast<std::ptrdiff_t>(set.positives.size()), 1);

  Report report;
  report.config = cfg;
  report.dim = in.table->dim();
  report.positives = set.positives.size();
  report.negatives = set.negatives.size();

  std::vector<std::vector<double>> x;
  x.reserve(pairs.size());
  if (cfg.feature == FeatureMode::kEdgeMetaPaths) {
    report.effective_op = "none";
    PathEmbeddingCache cache(*in.dict, *in.table);
    for (const NodePair& p : pairs) {
      FeatureVector f = EdgeEmbedding(p.first, p.second, *in.dict, cache);
      report.empty_features += f.empty;
      x.push_back(std::move(f.values));
    }
  } else {
    std::vector<std::optional<FeatureVector>> node(g0.num_nodes());
    std::optional<NodeMetaPathIndex> index;
    std::optional<PathEmbeddingCache> cache;
    if (cfg.feature == FeatureMode::kNodeMetaPaths) {
      index.emplace(*in.dict, g0.num_nodes());
      cache.emplace(*in.dict, *in.table);
    }
    auto feature = [&](NodeId v) -> const FeatureVector& {
      if (!node[v]) {
        node[v] = cfg.feature == FeatureMode::kNodeTypes
                      ? NodeEmbeddingTypes(v, g0, *in.table)
                      : NodeEmbeddingMetaPaths(v, *index, *cache, cfg.top_k);
        report.empty_features += node[v]->empty;
      }
      return *node[v];
    };
    for (const NodePair& p : pairs) {
      feature(p.first);
      feature(p.second);
    }
    PairOperator op = cfg.op;
    if (op == PairOperator::kHadamard && report.empty_features > 0) {
      spdlog::warn(
          "{} node vectors are zero vectors; hadamard is not usable, falling "
          "back to the average operator",
          report.empty_features);
      op = PairOperator::kAverage;
      report.downgraded = true;
    }
    report.effective_op = std::string(ToString(op));
    for (const NodePair& p : pairs) {
      x.push_back(CombinePair(*node[p.first], *node[p.second], op).values);
    }
  }

  report.f1.assign(static_cast<std::size_t>(cfg.repetitions), 0.0);
  auto run = [&](int r) {
    const TrainTestSplit split = SplitExamples(
        labels, cfg.train_fraction,
        DeriveSeed(cfg.seed, {0x726570ULL, static_cast<std::uint64_t>(r)}));
    std::vector<std::vector<double>> xt;
    std::vector<int> yt;
    for (std::size_t i : split.train) {
      xt.push_back(x[i]);
      yt.push_back(labels[i]);
    }
    const LogRegModel model = TrainLogReg(xt, yt, cfg.logreg);
    std::vector<int> pred, truth;
    for (std::size_t i : split.test) {
      pred.push_back(model.Predict(x[i]));
      truth.push_back(labels[i]);
    }
    report.f1[static_cast<std::size_t>(r)] = MacroF1(pred, truth);
  };
  const int workers = std::min(cfg.workers, cfg.repetitions);
  if (workers <= 1) {
    for (int r = 0; r < cfg.repetitions; ++r) run(r);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          for (int r = w; r < cfg.repetitions; r += workers) run(r);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  double sum = 0.0;
  for (double f : report.f1) sum += f;
  report.mean = sum / static_cast<double>(report.f1.size());
  if (report.f1.size() > 1) {
    double ss = 0.0;
    for (double f : report.f1) ss += (f - report.mean) * (f - report.mean);
    report.stddev = std::sqrt(ss / static_cast<double>(report.f1.size() - 1));
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

std::string ReportKeyValues(const Report& r) {
  const ExperimentConfig& c = r.config;
  std::string s = "metric=macro_f1 mean=" + FormatDouble(r.mean) +
                  " std=" + FormatDouble(r.stddev) +
                  " dim=" + std::to_string(r.dim) + " op=" + r.effective_op;
  s += " requested_op=" + std::string(ToString(c.op));
  s += " feature=" + std::string(ToString(c.feature));
  s += " repetitions=" + std::to_string(c.repetitions);
  s += " train_fraction=" + FormatDouble(c.train_fraction);
  s += " sample_fraction=" + FormatDouble(c.sample_fraction);
  s += " negatives=" + std::string(ToString(c.negatives));
  s += " seed=" + std::to_string(c.seed);
  s += " positives=" + std::to_string(r.positives);
  s += " negative_pairs=" + std::to_string(r.negatives);
  s += " empty_features=" + std::to_string(r.empty_features);
  s += " downgraded=" + std::string(r.downgraded ? "1" : "0");
  return s;
}

std::string FormatReport(const Report& r, bool with_wall_time) {
  char buf[128];
  std::string s = "feature   " + std::string(ToString(r.config.feature)) +
                  "\noperator  " + r.effective_op +
                  (r.downgraded ? " (requested hadamard)" : "") +
                  "\ndim       " + std::to_string(r.dim) + "\npairs     " +
                  std::to_string(r.positives) + " positive, " +
                  std::to_string(r.negatives) + " negative\n";
  s += "rep  macro_f1\n";
  for (std::size_t i = 0; i < r.f1.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%3zu  %.4f\n", i, r.f1[i]);
    s += buf;
  }
  std::snprintf(buf, sizeof(buf), "mean %.4f  std %.4f\n", r.mean, r.stddev);
  s += buf;
  if (with_wall_time) {
    std::snprintf(buf, sizeof(buf), "wall %.3fs\n", r.wall_seconds);
    s += buf;
  }
  s += ReportKeyValues(r) + "\n";
  return s;
}

std::map<std::string, std::string> ParseReportLine(std::string_view line) {
  std::map<std::string, std::string> kv;
  for (std::string_view field : Split(line, ' ')) {
    if (field.empty()) continue;
    const auto eq = field.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ParseError("report", 0, "malformed field '" + std::string(field) + "'");
    }
    kv.emplace(std::string(field.substr(0, eq)), std::string(field.substr(eq + 1)));
  }
  if (kv.count("metric") == 0 || kv.count("mean") == 0 || kv.count("std") == 0) {
    throw ParseError("report", 0, "not a report line");
  }
  return kv;
}

std::vector<Report> SweepDimensions(const Corpus& corpus,
                                    const TrainConfig& train,
                                    std::span<const int> dims,
                                    const ExperimentConfig& cfg,
                                    ExperimentInputs in) {
  std::vector<Report> out;
  for (int d : dims) {
    TrainConfig tc = train;
    tc.dim = d;
    const EmbeddingTable table = Train(corpus, tc);
    in.table = &table;
    out.push_back(RunExperiment(cfg, in));
  }
  return out;
}

std::vector<Report> SweepTrainFraction(std::span<const double> fractions,
                                       const ExperimentConfig& cfg,
                                       const ExperimentInputs& in) {
  std::vector<Report> out;
  for (double f : fractions) {
    ExperimentConfig c = cfg;
    c.train_fraction = f;
    out.push_back(RunExperiment(c, in));
  }
  return out;
}

std::vector<Report> SweepSampleFraction(std::span<const double> fractions,
                                        const ExperimentConfig& cfg,
                                        const ExperimentInputs& in) {
  std::vector<Report> out;
  for (double f : fractions) {
    ExperimentConfig c = cfg;
    c.sample_fraction = f;
    out.push_back(RunExperiment(c, in));
  }
  return out;
}

void WriteSweepCsv(const std::vector<Report>& reports,
                   const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw Error("cannot write " + file.string());
  out << "feature,op,dim,train_fraction,sample_fraction,repetitions,mean,std\n";
  for (const Report& r : reports) {
    out << ToString(r.config.feature) << ',' << r.effective_op << ',' << r.dim
        << ',' << FormatDouble(r.config.train_fraction) << ','
        << FormatDouble(r.config.sample_fraction) << ','
        << r.config.repetitions << ',' << FormatDouble(r.mean) << ','
        << FormatDouble(r.stddev) << '\n';
  }
}

}  // namespace mpemb
