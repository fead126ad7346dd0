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

// mpemb command line front-end. Every stage reads and writes files, so a
// pipeline can be resumed at any step.

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mpemb/corpus.h"
#include "mpemb/dictionary.h"
#include "mpemb/embedding.h"
#include "mpemb/error.h"
#include "mpemb/experiment.h"
#include "mpemb/features.h"
#include "mpemb/graph.h"
#include "mpemb/miner.h"
#include "mpemb/snapshot.h"
#include "mpemb/taxonomy.h"
#include "mpemb/trainer.h"

namespace fs = std::filesystem;
using namespace mpemb;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kResource = 3 };

struct Common {
  std::uint64_t seed = 0;
  int workers = 1;
  bool dry_run = false;
};

void AddCommon(CLI::App* cmd, Common& c) {
  cmd->set_config("--config", "", "Read options from a TOML/INI file");
  cmd->add_option("--seed", c.seed, "Seed for every random draw")
      ->capture_default_str();
  cmd->add_option("--workers", c.workers, "Worker threads")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  cmd->add_flag("--dry-run", c.dry_run, "Validate inputs and exit");
}

void PrintResolved(const CLI::App* cmd, const Common& c) {
  std::cout << "# mpemb " << cmd->get_name() << " (seed " << c.seed << ")\n"
            << cmd->config_to_str(true, false) << std::flush;
}

fs::path NodesFile(const fs::path& dir) { return dir / "nodes.tsv"; }
fs::path EdgesFile(const fs::path& dir) { return dir / "edges.tsv"; }
fs::path TypesFile(const fs::path& dir) { return dir / "node_types.tsv"; }

KnowledgeGraph ReadGraphDir(const fs::path& dir) {
  const fs::path types = TypesFile(dir);
  return LoadGraph(NodesFile(dir), EdgesFile(dir),
                   fs::exists(types) ? types : fs::path());
}

void RequireFile(const fs::path& p) {
  if (!fs::exists(p)) throw Error("missing input " + p.string());
}

void RequireGraphDir(const fs::path& dir) {
  RequireFile(NodesFile(dir));
  RequireFile(EdgesFile(dir));
}

std::vector<fs::path> RequireShards(const fs::path& dir) {
  auto shards = DictionaryShards(dir);
  if (shards.empty()) {
    throw Error("no metapaths-*.tsv files in " + dir.string());
  }
  return shards;
}

// ---- convert --------------------------------------------------------------

struct ConvertArgs {
  Common common;
  fs::path nodes, edges, taxonomy, out;
  int depth_limit = 3;
  std::string instance_of = "instance_of";
};

int RunConvert(CLI::App* cmd, const ConvertArgs& a) {
  PrintResolved(cmd, a.common);
  RequireFile(a.nodes);
  RequireFile(a.edges);
  if (!a.taxonomy.empty()) RequireFile(a.taxonomy);
  if (a.common.dry_run) return kOk;
  KnowledgeGraph g = LoadGraph(a.nodes, a.edges);
  if (!a.taxonomy.empty()) {
    const Taxonomy tax = LoadTaxonomy(a.taxonomy);
    TypeAssignmentReport rep;
    g = AssignNodeTypes(g, tax, a.instance_of, a.depth_limit, &rep);
    spdlog::info("typed {} nodes by {}, {} class nodes, {} untyped",
                 rep.typed_by_instance_of, a.instance_of, rep.class_nodes,
                 rep.untyped);
  }
  fs::create_directories(a.out);
  SaveGraph(g, NodesFile(a.out), EdgesFile(a.out), TypesFile(a.out));
  spdlog::info("wrote {} nodes, {} edges, {} node types to {}", g.num_nodes(),
               g.num_edges(), g.num_node_types(), a.out.string());
  return kOk;
}

// ---- mine -----------------------------------------------------------------

struct MineArgs {
  Common common;
  fs::path graph, out;
  MiningConfig cfg;
  std::size_t max_paths_per_node = 0;
  std::string multi_type = "first-type";
};

int RunMine(CLI::App* cmd, MineArgs a) {
  PrintResolved(cmd, a.common);
  a.cfg.seed = a.common.seed;
  a.cfg.workers = a.common.workers;
  a.cfg.multi_type_mode = ParseMultiTypeMode(a.multi_type);
  if (a.max_paths_per_node > 0) a.cfg.max_paths_per_node = a.max_paths_per_node;
  a.cfg.Validate();
  RequireGraphDir(a.graph);
  if (a.common.dry_run) return kOk;
  const KnowledgeGraph g = ReadGraphDir(a.graph);
  fs::create_directories(a.out);
  const auto shards = static_cast<std::size_t>(a.common.workers);
  MiningStats stats;
  try {
    const MetaPathDictionary dict = MineProbabilistic(g, a.cfg, &stats);
    WriteDictionary(dict, g, a.out, shards);
    spdlog::info("{} pairs, {} distinct meta-paths, {} walks; {} start nodes "
                 "skipped",
                 dict.num_pairs(), dict.num_paths(), dict.total_records(),
                 stats.start_nodes_skipped);
  } catch (const MiningBudgetError& e) {
    WriteDictionary(e.partial(), g, a.out, shards);
    spdlog::error("{}; partial dictionary written to {}", e.what(),
                  a.out.string());
    return kResource;
  }
  return kOk;
}

// ---- corpus ---------------------------------------------------------------

struct CorpusArgs {
  Common common;
  fs::path graph, dict, out;
  SentenceConfig cfg;
  bool uniform = false;
};

int RunCorpus(CLI::App* cmd, CorpusArgs a) {
  PrintResolved(cmd, a.common);
  a.cfg.seed = a.common.seed;
  a.cfg.workers = a.common.workers;
  a.cfg.weight_by_count = !a.uniform;
  a.cfg.Validate();
  RequireGraphDir(a.graph);
  const auto shards = RequireShards(a.dict);
  if (a.common.dry_run) return kOk;
  const KnowledgeGraph g = ReadGraphDir(a.graph);
  const MetaPathDictionary dict = ReadDictionary(g, shards);
  const Corpus corpus = BuildSentences(dict, a.cfg);
  WriteCorpus(corpus, a.out);
  spdlog::info("{} sentences, {} tokens, {} distinct meta-paths",
               corpus.sentences().size(), corpus.num_tokens(),
               corpus.words().size());
  return kOk;
}

// ---- train ----------------------------------------------------------------

struct TrainArgs {
  Common common;
  fs::path corpus, out;
  TrainConfig cfg;
  std::string noise = "unigram";
  std::string combine = "sum";
};

int RunTrain(CLI::App* cmd, TrainArgs a) {
  PrintResolved(cmd, a.common);
  a.cfg.seed = a.common.seed;
  a.cfg.workers = a.common.workers;
  a.cfg.noise = ParseNoiseDistribution(a.noise);
  a.cfg.combine = ParseGramCombine(a.combine);
  a.cfg.Validate();
  RequireFile(a.corpus);
  if (a.common.dry_run) return kOk;
  const Corpus corpus = ReadCorpus(a.corpus);
  TrainStats stats;
  const EmbeddingTable table = Train(corpus, a.cfg, &stats);
  for (std::size_t e = 0; e < stats.epoch_loss.size(); ++e) {
    spdlog::info("epoch {} loss {:.6f}", e + 1, stats.epoch_loss[e]);
  }
  const fs::path bin = a.out.string() + ".bin";
  table.Save(bin);
  table.WriteWordVectors(a.out.string() + ".vec");
  table.WriteBucketVectors(a.out.string() + ".buckets.vec");
  table.vocab().Write(a.out.string() + ".vocab.tsv");
  spdlog::info("{} words, {} input rows, dim {} -> {}", table.vocab().size(),
               table.num_input_rows(), table.dim(), bin.string());
  return kOk;
}

// ---- features -------------------------------------------------------------

struct FeaturesArgs {
  Common common;
  fs::path graph, dict, table, out;
  std::string mode = "node-type";
  std::size_t top_k = 0;
};

int RunFeatures(CLI::App* cmd, const FeaturesArgs& a) {
  PrintResolved(cmd, a.common);
  const FeatureMode mode = ParseFeatureMode(a.mode);
  RequireGraphDir(a.graph);
  RequireFile(a.table);
  std::vector<fs::path> shards;
  if (mode != FeatureMode::kNodeTypes) shards = RequireShards(a.dict);
  if (a.common.dry_run) return kOk;
  const KnowledgeGraph g = ReadGraphDir(a.graph);
  const EmbeddingTable table = EmbeddingTable::Load(a.table);
  std::vector<std::pair<std::string, FeatureVector>> rows;
  std::size_t empty = 0;
  if (mode == FeatureMode::kNodeTypes) {
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      rows.emplace_back(g.node_names().Name(v), NodeEmbeddingTypes(v, g, table));
    }
  } else {
    const MetaPathDictionary dict = ReadDictionary(g, shards);
    PathEmbeddingCache cache(dict, table);
    if (mode == FeatureMode::kNodeMetaPaths) {
      const NodeMetaPathIndex index(dict, g.num_nodes());
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        rows.emplace_back(g.node_names().Name(v),
                          NodeEmbeddingMetaPaths(v, index, cache, a.top_k));
      }
    } else {
      for (const NodePair& p : dict.Pairs()) {
        rows.emplace_back(g.node_names().Name(p.first) + "," +
                              g.node_names().Name(p.second),
                          EdgeEmbedding(p.first, p.second, dict, cache));
      }
    }
  }
  for (const auto& r : rows) empty += r.second.empty;
  WriteFeatures(a.out, rows);
  spdlog::info("{} {} feature rows ({} zero vectors)", rows.size(), a.mode,
               empty);
  return kOk;
}

// ---- diff -----------------------------------------------------------------

struct DiffArgs {
  Common common;
  fs::path earlier, later, out;
};

int RunDiff(CLI::App* cmd, const DiffArgs& a) {
  PrintResolved(cmd, a.common);
  RequireGraphDir(a.earlier);
  RequireGraphDir(a.later);
  if (a.common.dry_run) return kOk;
  const SnapshotDiff diff =
      DiffSnapshots(ReadGraphDir(a.earlier), ReadGraphDir(a.later));
  WriteDiff(diff, a.out);
  std::size_t touching = 0;
  for (const NewEdge& e : diff.new_edges) touching += e.touches_new_node;
  spdlog::info("{} new edges ({} touch new nodes), {} new nodes",
               diff.new_edges.size(), touching, diff.new_nodes.size());
  return kOk;
}

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
  Common common;
  fs::path graph, diff, dict, table, out, csv;
  std::string feature = "node-type";
  std::string op = "average";
  std::string negatives = "uniform";
  ExperimentConfig cfg;
  std::vector<double> train_fractions;
  std::vector<double> sample_fractions;
};

int RunEval(CLI::App* cmd, EvalArgs a) {
  PrintResolved(cmd, a.common);
  a.cfg.seed = a.common.seed;
  a.cfg.workers = a.common.workers;
  a.cfg.feature = ParseFeatureMode(a.feature);
  a.cfg.op = ParsePairOperator(a.op);
  a.cfg.negatives = ParseNegativeSampling(a.negatives);
  a.cfg.Validate();
  RequireGraphDir(a.graph);
  RequireFile(a.diff);
  RequireFile(a.table);
  std::vector<fs::path> shards;
  if (a.cfg.feature != FeatureMode::kNodeTypes) shards = RequireShards(a.dict);
  if (a.common.dry_run) return kOk;

  const KnowledgeGraph g0 = ReadGraphDir(a.graph);
  const SnapshotDiff diff = ReadDiff(a.diff);
  const EmbeddingTable table = EmbeddingTable::Load(a.table);
  std::optional<MetaPathDictionary> dict;
  if (!shards.empty()) dict = ReadDictionary(g0, shards);
  ExperimentInputs in{&g0, &diff, dict ? &*dict : nullptr, &table};

  std::vector<Report> reports;
  if (!a.train_fractions.empty()) {
    reports = SweepTrainFraction(a.train_fractions, a.cfg, in);
  } else if (!a.sample_fractions.empty()) {
    reports = SweepSampleFraction(a.sample_fractions, a.cfg, in);
  } else {
    reports.push_back(RunExperiment(a.cfg, in));
  }
  std::string text;
  for (const Report& r : reports) {
    std::cout << FormatReport(r, true);
    text += FormatReport(r, false);
  }
  if (!a.out.empty()) {
    std::ofstream f(a.out);
    if (!f) throw Error("cannot write " + a.out.string());
    f << text;
  }
  if (!a.csv.empty()) WriteSweepCsv(reports, a.csv);
  return kOk;
}

int ExitCodeFor(const Error& e) {
  if (dynamic_cast<const ConfigError*>(&e) ||
      dynamic_cast<const UnsupportedConfigError*>(&e)) {
    return kUsage;
  }
  if (dynamic_cast<const ResourceError*>(&e)) return kResource;
  return kData;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("mpemb"));
  spdlog::set_pattern("[%l] %v");

  CLI::App app{"Meta-path mining, embedding and link-prediction pipeline"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "mpemb 0.1.0");

  ConvertArgs convert;
  auto* c = app.add_subcommand("convert", "Normalize a graph and assign node types from a class hierarchy");
  AddCommon(c, convert.common);
  c->add_option("--nodes", convert.nodes, "Nodes TSV")->required();
  c->add_option("--edges", convert.edges, "Edges TSV")->required();
  c->add_option("--taxonomy", convert.taxonomy, "child<TAB>parent class hierarchy");
  c->add_option("--depth-limit", convert.depth_limit, "Deepest class level kept as a type")
      ->check(CLI::Range(1, 1 << 20))
      ->capture_default_str();
  c->add_option("--instance-of", convert.instance_of, "Edge type linking instances to classes")
      ->capture_default_str();
  c->add_option("--out", convert.out, "Output graph directory")->required();

  MineArgs mine;
  auto* m = app.add_subcommand("mine", "Mine meta-paths between node pairs");
  AddCommon(m, mine.common);
  m->add_option("--graph", mine.graph, "Graph directory (nodes.tsv, edges.tsv, optional node_types.tsv)")->required();
  m->add_option("--max-length", mine.cfg.max_length, "Maximum nodes per meta-path")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  m->add_option("--min-length", mine.cfg.min_length, "Minimum nodes per recorded meta-path")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  m->add_option("--node-skip", mine.cfg.node_skip_probability, "Probability of skipping a start node")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  m->add_option("--edge-skip", mine.cfg.edge_skip_probability, "Probability of not following an edge")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  m->add_option("--max-paths-per-node", mine.max_paths_per_node, "Stop a start node after this many walks (0: no limit)")
      ->capture_default_str();
  m->add_option("--multi-type", mine.multi_type, "first-type or cartesian-product")
      ->check(CLI::IsMember({"first-type", "cartesian-product"}))
      ->capture_default_str();
  m->add_option("--product-cap", mine.cfg.product_cap, "Cap on one cartesian expansion")
      ->capture_default_str();
  m->add_option("--max-records", mine.cfg.max_records, "Abort after this many walks (0: no limit)")
      ->capture_default_str();
  m->add_option("--out", mine.out, "Output directory for metapaths-*.tsv")->required();

  CorpusArgs corpus;
  auto* s = app.add_subcommand("corpus", "Build training sentences from a meta-path dictionary");
  AddCommon(s, corpus.common);
  s->add_option("--graph", corpus.graph, "Graph directory the dictionary was mined from")->required();
  s->add_option("--dict", corpus.dict, "Directory with metapaths-*.tsv")->required();
  s->add_option("--sentence-length", corpus.cfg.sentence_length, "Meta-paths per sentence")
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  s->add_option("--samples-per-pair", corpus.cfg.samples_per_pair, "Sentences per node pair")
      ->check(CLI::Range(1, 1 << 20))
      ->capture_default_str();
  s->add_flag("--uniform-sampling", corpus.uniform, "Ignore meta-path multiplicities when sampling");
  s->add_option("--out", corpus.out, "Output corpus file")->required();

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Train meta-path embeddings");
  AddCommon(t, train.common);
  t->add_option("--corpus", train.corpus, "Corpus file")->required();
  t->add_option("--dim", train.cfg.dim, "Embedding dimension")
      ->check(CLI::Range(1, 1 << 16))
      ->capture_default_str();
  t->add_option("--window", train.cfg.window, "Context window")
      ->check(CLI::Range(1, 1 << 16))
      ->capture_default_str();
  t->add_option("--negatives", train.cfg.negatives, "Negative samples per pair")
      ->check(CLI::Range(1, 1 << 16))
      ->capture_default_str();
  t->add_option("--epochs", train.cfg.epochs, "Passes over the corpus")
      ->check(CLI::Range(0, 1 << 20))
      ->capture_default_str();
  t->add_option("--lr", train.cfg.learning_rate, "Initial learning rate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  t->add_option("--min-n", train.cfg.ngrams.min_n, "Shortest gram in tokens")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  t->add_option("--max-n", train.cfg.ngrams.max_n, "Longest gram in tokens")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  t->add_option("--buckets", train.cfg.ngrams.buckets, "Hash buckets for grams")
      ->check(CLI::Range(1u, 1u << 30))
      ->capture_default_str();
  t->add_option("--min-count", train.cfg.min_count, "Drop rarer meta-paths")
      ->capture_default_str();
  t->add_option("--noise", train.noise, "unigram or uniform")
      ->check(CLI::IsMember({"unigram", "uniform"}))
      ->capture_default_str();
  t->add_option("--combine", train.combine, "sum or mean of gram vectors")
      ->check(CLI::IsMember({"sum", "mean"}))
      ->capture_default_str();
  t->add_option("--subsample", train.cfg.subsample, "Frequent-word subsampling threshold (0: off)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  t->add_option("--out", train.out, "Output prefix (.bin, .vec, .buckets.vec, .vocab.tsv)")->required();

  FeaturesArgs features;
  auto* f = app.add_subcommand("features", "Dump node or edge feature vectors");
  AddCommon(f, features.common);
  f->add_option("--graph", features.graph, "Graph directory")->required();
  f->add_option("--dict", features.dict, "Directory with metapaths-*.tsv");
  f->add_option("--table", features.table, "Embedding table (.bin)")->required();
  f->add_option("--mode", features.mode, "node-type, node-mp or edge-mp")
      ->check(CLI::IsMember({"node-type", "node-mp", "edge-mp"}))
      ->capture_default_str();
  f->add_option("--top-k", features.top_k, "Keep the k most frequent meta-paths per node (0: all)")
      ->capture_default_str();
  f->add_option("--out", features.out, "Output TSV")->required();

  DiffArgs diff;
  auto* d = app.add_subcommand("diff", "New edges and nodes between two snapshots");
  AddCommon(d, diff.common);
  d->add_option("--earlier", diff.earlier, "Earlier graph directory")->required();
  d->add_option("--later", diff.later, "Later graph directory")->required();
  d->add_option("--out", diff.out, "Output TSV")->required();

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Temporal link-prediction experiment");
  AddCommon(e, eval.common);
  e->add_option("--graph", eval.graph, "Earlier graph directory")->required();
  e->add_option("--diff", eval.diff, "Snapshot diff TSV")->required();
  e->add_option("--dict", eval.dict, "Directory with metapaths-*.tsv (meta-path features)");
  e->add_option("--table", eval.table, "Embedding table (.bin)")->required();
  e->add_option("--feature", eval.feature, "node-type, node-mp or edge-mp")
      ->check(CLI::IsMember({"node-type", "node-mp", "edge-mp"}))
      ->capture_default_str();
  e->add_option("--op", eval.op, "Pair operator for node features")
      ->check(CLI::IsMember({"average", "concat", "hadamard", "weighted-l1", "weighted-l2"}))
      ->capture_default_str();
  e->add_option("--train-fraction", eval.cfg.train_fraction, "Share of labeled pairs used for training")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  e->add_option("--sample-fraction", eval.cfg.sample_fraction, "Share of eligible new edges used")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  e->add_option("--repetitions", eval.cfg.repetitions, "Independent splits")
      ->check(CLI::Range(1, 1 << 20))
      ->capture_default_str();
  e->add_option("--negatives", eval.negatives, "uniform or degree")
      ->check(CLI::IsMember({"uniform", "degree"}))
      ->capture_default_str();
  e->add_option("--l2", eval.cfg.logreg.l2, "Logistic regression l2 strength")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  e->add_option("--top-k", eval.cfg.top_k, "Keep the k most frequent meta-paths per node (0: all)")
      ->capture_default_str();
  e->add_option("--sweep-train-fractions", eval.train_fractions, "Run once per train fraction");
  e->add_option("--sweep-sample-fractions", eval.sample_fractions, "Run once per sample fraction");
  e->add_option("--out", eval.out, "Report file (no wall time, stable across runs)");
  e->add_option("--csv", eval.csv, "CSV with one row per report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*c) return RunConvert(c, convert);
    if (*m) return RunMine(m, mine);
    if (*s) return RunCorpus(s, corpus);
    if (*t) return RunTrain(t, train);
    if (*f) return RunFeatures(f, features);
    if (*d) return RunDiff(d, diff);
    if (*e) return RunEval(e, eval);
  } catch (const Error& err) {
    spdlog::error("{}", err.what());
    return ExitCodeFor(err);
  } catch (const std::bad_alloc&) {
    spdlog::error("out of memory");
    return kResource;
  } catch (const std::exception& err) {
    spdlog::error("{}", err.what());
    return kData;
  }
  return kUsage;
}
