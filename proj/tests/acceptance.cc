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

// Acceptance checks A1-A8. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.
//
// usage: mpemb_acceptance <path to mpemb cli>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/spdlog.h>
#include <sys/wait.h>

#include "embed_util.h"
#include "mpemb/corpus.h"
#include "mpemb/experiment.h"
#include "mpemb/features.h"
#include "mpemb/metapath.h"
#include "mpemb/miner.h"
#include "mpemb/snapshot.h"
#include "mpemb/synthetic.h"
#include "mpemb/trainer.h"
#include "test_util.h"

namespace mpemb {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, double a, double b = 0, double c = 0,
                double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

Outcome A1MiningOracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const KnowledgeGraph g = testing::RandomGraph(rng, 20, 4, 4, 4);
    MiningConfig cfg;
    cfg.max_length = 1 + static_cast<int>(rng() % 4);
    if (testing::DirectedView(MineAll(g, cfg)) !=
        testing::BruteForceWalks(g, cfg.max_length)) {
      ++mismatches;
    }
  }
  const double secs = Seconds(start);
  return {mismatches == 0 && secs < 60.0,
          Fmt("%.0f of 200 graphs differ from the brute-force oracle, %.1fs",
              mismatches, secs)};
}

Outcome A2SkipStatistics() {
  const KnowledgeGraph g = testing::MakeGraph(
      {{"a", {"A"}}, {"b", {"B"}}, {"c", {"C"}}}, {{"a", "b", "r"}, {"b", "c", "s"}});
  const NodeId a = *g.FindNode("a"), c = *g.FindNode("c");
  const MetaPath full = ParseMetaPath(testing::Word(g, {"A", "r", "B", "s", "C"}));
  MiningConfig cfg;
  cfg.max_length = 3;
  cfg.start_nodes = {a};
  cfg.edge_skip_probability = 0.5;
  int found = 0;
  for (int seed = 0; seed < 10000; ++seed) {
    cfg.seed = static_cast<std::uint64_t>(seed);
    const auto paths = MineProbabilistic(g, cfg).Get(a, c);
    found += std::find(paths.begin(), paths.end(), full) != paths.end();
  }
  const double rate = found / 10000.0;
  cfg.edge_skip_probability = 0.0;
  cfg.node_skip_probability = 1.0;
  cfg.start_nodes.clear();
  int nonempty = 0;
  for (int seed = 0; seed < 10000; ++seed) {
    cfg.seed = static_cast<std::uint64_t>(seed);
    nonempty += MineProbabilistic(g, cfg).num_pairs() > 0;
  }
  return {std::abs(rate - 0.25) <= 0.02 && nonempty == 0,
          Fmt("full path found in %.4f of runs (expected 0.25 +- 0.02); "
              "%.0f non-empty runs with p=1",
              rate, nonempty)};
}

struct TwoBlockSetup {
  SnapshotPair snaps;
  SnapshotDiff diff;
  MetaPathDictionary dict;
  Corpus corpus;
  TrainConfig train;
  EmbeddingTable table;
  double seconds = 0;

  TwoBlockSetup() {
    const auto start = Clock::now();
    TwoBlockConfig tb;
    snaps = MakeTwoBlockGraph(tb);
    diff = DiffSnapshots(snaps.t0, snaps.t1);
    MiningConfig mc;
    mc.max_length = 3;
    mc.workers = 4;
    dict = MineAll(snaps.t0, mc);
    SentenceConfig sc;
    sc.workers = 4;
    corpus = BuildSentences(dict, sc);
    train.ngrams.buckets = 100000;
    table = Train(corpus, train);
    seconds = Seconds(start);
  }
  ExperimentInputs inputs() const { return {&snaps.t0, &diff, &dict, &table}; }
};

Outcome A3EmbeddingSanity(const TwoBlockSetup& setup) {
  std::mt19937_64 rng(3);
  const Corpus small = testing::RandomCorpus(rng, 30, 40, 6);
  TrainConfig cfg;
  cfg.dim = 8;
  cfg.ngrams.buckets = 64;
  EmbeddingTable table =
      EmbeddingTable::Initialize(Vocabulary::Build(small, cfg.ngrams), cfg);
  const auto v = static_cast<std::uint32_t>(table.vocab().size());
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    testing::Randomize(table, rng, 0.5);
    const auto word = static_cast<std::uint32_t>(rng() % v);
    const auto context = static_cast<std::uint32_t>(rng() % v);
    std::vector<std::uint32_t> negs;
    while (negs.size() < 3) {
      const auto n = static_cast<std::uint32_t>(rng() % v);
      if (n != context && std::find(negs.begin(), negs.end(), n) == negs.end()) {
        negs.push_back(n);
      }
    }
    worst = std::max(
        worst, testing::CheckPairGradient(table, word, context, negs).max_relative_error);
  }

  TrainConfig tc = setup.train;
  tc.dim = 16;
  TrainStats stats;
  const EmbeddingTable first = Train(setup.corpus, tc, &stats);
  const bool decreasing = testing::MostlyDecreasing(stats.epoch_loss);
  const bool identical = Train(setup.corpus, tc) == first;
  std::string losses;
  for (double l : stats.epoch_loss) losses += Fmt(" %.4f", l);
  return {worst < 1e-4 && decreasing && identical,
          Fmt("max gradient relative error %.2e; ", worst) + "epoch loss" +
              losses + (decreasing ? " (decreasing)" : " (NOT decreasing)") +
              (identical ? "; reruns bit-identical" : "; reruns differ")};
}

Report RunTypes(const TwoBlockSetup& setup, PairOperator op,
                const EmbeddingTable* table = nullptr) {
  ExperimentConfig cfg;
  cfg.feature = FeatureMode::kNodeTypes;
  cfg.op = op;
  cfg.repetitions = 10;
  ExperimentInputs in = setup.inputs();
  if (table) in.table = table;
  return RunExperiment(cfg, in);
}

Outcome A4LinkPrediction(const TwoBlockSetup& setup) {
  const auto start = Clock::now();
  const Report avg = RunTypes(setup, PairOperator::kAverage);
  const double secs = setup.seconds + Seconds(start);
  std::string others;
  for (PairOperator op : {PairOperator::kHadamard, PairOperator::kConcat,
                          PairOperator::kWeightedL1, PairOperator::kWeightedL2}) {
    others += " " + std::string(ToString(op)) +
              Fmt("=%.4f", RunTypes(setup, op).mean);
  }
  return {avg.mean > 0.65 && secs < 300.0,
          Fmt("node-type average macro F1 %.4f +- %.4f over 10 repetitions "
              "(target > 0.65), %.1fs;",
              avg.mean, avg.stddev, secs) +
              " other operators:" + others};
}

Outcome A5OperatorBattery(const TwoBlockSetup& setup) {
  bool ok = true;
  std::string detail;
  for (PairOperator op : {PairOperator::kAverage, PairOperator::kConcat,
                          PairOperator::kHadamard, PairOperator::kWeightedL1,
                          PairOperator::kWeightedL2}) {
    const Report r = RunTypes(setup, op);
    const bool ran = r.f1.size() == 10 && r.effective_op == ToString(op);
    ok = ok && ran;
    detail += std::string(ToString(op)) + (ran ? " ran; " : " FAILED; ");
  }

  // weighted-l1 of a node with itself
  double l1_norm = 0;
  for (NodeId v = 0; v < 20; ++v) {
    const FeatureVector f = NodeEmbeddingTypes(v, setup.snaps.t0, setup.table);
    for (double x : CombinePair(f, f, PairOperator::kWeightedL1).values) {
      l1_norm += std::abs(x);
    }
  }
  ok = ok && l1_norm == 0.0;
  detail += Fmt("weighted-l1 self features sum %.1f; ", l1_norm);

  // Node meta-path features from single-node walks started in block 0 only,
  // so every block-1 node has the zero vector.
  MiningConfig mc;
  mc.max_length = 1;
  for (NodeId v = 0; v < 500; ++v) mc.start_nodes.push_back(v);
  const MetaPathDictionary partial = MineAll(setup.snaps.t0, mc);
  ExperimentConfig cfg;
  cfg.feature = FeatureMode::kNodeMetaPaths;
  cfg.op = PairOperator::kHadamard;
  cfg.repetitions = 3;
  ExperimentInputs in = setup.inputs();
  in.dict = &partial;
  const Report had = RunExperiment(cfg, in);
  cfg.op = PairOperator::kAverage;
  const Report avg = RunExperiment(cfg, in);
  const bool downgraded = had.empty_features > 0 && had.downgraded &&
                          had.effective_op == "average" && had.f1 == avg.f1;
  // no zero vectors: hadamard is kept
  const Report kept = RunTypes(setup, PairOperator::kHadamard);
  const bool not_downgraded = !kept.downgraded && kept.effective_op == "hadamard";
  ok = ok && downgraded && not_downgraded;
  detail += Fmt("%.0f zero node vectors: hadamard ", had.empty_features) +
            (downgraded ? "downgraded to average" : "NOT downgraded") +
            (not_downgraded ? "; kept without zero vectors" : "; downgraded without zero vectors");
  return {ok, detail};
}

Outcome A6DimensionProbe(const TwoBlockSetup& setup) {
  std::vector<double> means;
  std::string detail;
  for (int d : {16, 64, 256}) {
    TrainConfig tc = setup.train;
    tc.dim = d;
    const EmbeddingTable table = Train(setup.corpus, tc);
    means.push_back(RunTypes(setup, PairOperator::kAverage, &table).mean);
    detail += Fmt("d=%.0f F1 %.4f; ", d, means.back());
  }
  const double range = *std::max_element(means.begin(), means.end()) -
                       *std::min_element(means.begin(), means.end());
  return {range < 0.10, detail + Fmt("range %.4f (target < 0.10)", range)};
}

Outcome A7Scaling() {
  std::vector<double> normalized;
  std::string detail;
  for (int degree : {2, 3, 4}) {
    const KnowledgeGraph g = MakeRegularGraph(20000, degree, 7);
    MiningConfig cfg;
    cfg.max_length = 4;
    std::vector<double> runs;
    for (int r = 0; r < 3; ++r) {
      const auto start = Clock::now();
      const MetaPathDictionary d = MineAll(g, cfg);
      runs.push_back(Seconds(start));
    }
    std::sort(runs.begin(), runs.end());
    const double t = runs[1];
    normalized.push_back(t / std::pow(degree, 3));
    detail += Fmt("d=%.0f %.3fs; ", degree, t);
  }
  const double ratio = *std::max_element(normalized.begin(), normalized.end()) /
                       *std::min_element(normalized.begin(), normalized.end());
  return {ratio <= 3.0,
          detail + Fmt("time / d^3 varies by a factor of %.2f (target <= 3)", ratio)};
}

int Run(const std::string& cmd) {
  const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome A8Fixture(const std::string& cli) {
  namespace fs = std::filesystem;
  const fs::path fixture = testing::FixtureDir();
  testing::TempDir tmp;
  auto pipeline = [&](const fs::path& dir, std::string& failed) {
    fs::create_directories(dir);
    const std::string d = dir.string() + "/";
    const std::string fx = fixture.string() + "/";
    const std::vector<std::string> steps = {
        "convert --nodes " + fx + "t0_nodes.tsv --edges " + fx +
            "t0_edges.tsv --taxonomy " + fx + "taxonomy.tsv --out " + d + "g0",
        "convert --nodes " + fx + "t1_nodes.tsv --edges " + fx +
            "t1_edges.tsv --taxonomy " + fx + "taxonomy.tsv --out " + d + "g1",
        "mine --graph " + d + "g0 --max-length 3 --workers 2 --out " + d + "dict",
        "corpus --graph " + d + "g0 --dict " + d + "dict --out " + d + "corpus.txt",
        "train --corpus " + d + "corpus.txt --dim 16 --buckets 10000 --out " + d + "emb",
        "features --graph " + d + "g0 --dict " + d + "dict --table " + d +
            "emb.bin --mode edge-mp --out " + d + "features.tsv",
        "diff --earlier " + d + "g0 --later " + d + "g1 --out " + d + "diff.tsv",
        "eval --graph " + d + "g0 --diff " + d + "diff.tsv --dict " + d +
            "dict --table " + d + "emb.bin --feature node-type --repetitions 5 --out " +
            d + "report.txt",
    };
    for (const std::string& step : steps) {
      const int code = Run(cli + " " + step + " --seed 11");
      if (code != 0) {
        failed = step.substr(0, step.find(' ')) + Fmt(" exited %.0f", code);
        return false;
      }
    }
    return true;
  };
  std::string failed;
  if (!pipeline(tmp / "run1", failed) || !pipeline(tmp / "run2", failed)) {
    return {false, failed};
  }
  std::size_t files = 0, differing = 0;
  for (const auto& entry : fs::recursive_directory_iterator(tmp / "run1")) {
    if (!entry.is_regular_file()) continue;
    ++files;
    const fs::path other = tmp / "run2" / fs::relative(entry.path(), tmp / "run1");
    if (testing::ReadText(entry.path()) != testing::ReadText(other)) ++differing;
  }
  bool parsed = false;
  const std::string report = testing::ReadText(tmp / "run1" / "report.txt");
  std::istringstream lines(report);
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("metric=", 0) != 0) continue;
    try {
      const auto kv = ParseReportLine(line);
      parsed = kv.count("mean") > 0;
    } catch (const Error&) {
    }
  }
  return {parsed && differing == 0 && files > 0,
          Fmt("all 8 steps exited 0 twice; %.0f output files, %.0f differ; report ",
              static_cast<double>(files), static_cast<double>(differing)) +
              (parsed ? "parsed" : "NOT parseable")};
}

}  // namespace
}  // namespace mpemb

int main(int argc, char** argv) {
  using namespace mpemb;
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <mpemb cli>\n", argv[0]);
    return 2;
  }
  spdlog::set_level(spdlog::level::err);
  int failures = 0;
  auto report = [&](const char* id, const char* name,
                    const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %s %s: %s\n", id, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  };
  report("A1", "mining oracle equivalence", A1MiningOracle);
  report("A2", "skip-probability statistics", A2SkipStatistics);
  const TwoBlockSetup setup;
  report("A3", "embedding sanity", [&] { return A3EmbeddingSanity(setup); });
  report("A4", "synthetic link prediction", [&] { return A4LinkPrediction(setup); });
  report("A5", "operator battery", [&] { return A5OperatorBattery(setup); });
  report("A6", "dimension insensitivity", [&] { return A6DimensionProbe(setup); });
  report("A7", "mining scaling", A7Scaling);
  report("A8", "end-to-end fixture", [&] { return A8Fixture(argv[1]); });
  return failures == 0 ? 0 : 1;
}
