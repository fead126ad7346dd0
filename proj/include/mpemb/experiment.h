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

#ifndef MPEMB_EXPERIMENT_H_
#define MPEMB_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mpemb/corpus.h"
#include "mpemb/dictionary.h"
#include "mpemb/embedding.h"
#include "mpemb/features.h"
#include "mpemb/graph.h"
#include "mpemb/logreg.h"
#include "mpemb/snapshot.h"

namespace mpemb {

enum class FeatureMode { kNodeTypes, kNodeMetaPaths, kEdgeMetaPaths };
enum class NegativeSampling { kUniform, kDegree };

FeatureMode ParseFeatureMode(std::string_view name);
std::string_view ToString(FeatureMode mode);
NegativeSampling ParseNegativeSampling(std::string_view name);
std::string_view ToString(NegativeSampling mode);

/// Node pairs of the earlier snapshot labeled as new edges (positives) or
/// non-edges (negatives), in equal numbers.
struct LabeledEdgeSet {
  std::vector<NodePair> positives;
  std::vector<NodePair> negatives;
  std::uint64_t seed = 0;
};

/// Positives are the new edges between nodes of `g0` whose pair is not
/// already adjacent in `g0`, as unordered pairs without self loops, keeping a
/// `sample_fraction` share of them. Negatives are distinct pairs of `g0`
/// nodes that are adjacent neither in `g0` nor through a new edge. Throws
/// ExperimentError when there are no positives or negatives cannot be found.
LabeledEdgeSet BuildLabeledSet(const SnapshotDiff& diff,
                               const KnowledgeGraph& g0,
                               double sample_fraction, std::uint64_t seed,
                               NegativeSampling mode = NegativeSampling::kUniform);

/// Stratified split of example indices; each class keeps at least one
/// example on each side when it has two or more.
struct TrainTestSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};
TrainTestSplit SplitExamples(std::span<const int> labels, double train_fraction,
                             std::uint64_t seed);

struct ExperimentConfig {
  FeatureMode feature = FeatureMode::kNodeTypes;
  PairOperator op = PairOperator::kAverage;
  /// Share of labeled pairs used for training.
  double train_fraction = 0.5;
  /// Share of eligible new edges turned into positives.
  double sample_fraction = 1.0;
  int repetitions = 10;
  std::uint64_t seed = 0;
  NegativeSampling negatives = NegativeSampling::kUniform;
  /// Keep only the k most frequent meta-paths per node (node-mp); 0 keeps all.
  std::size_t top_k = 0;
  int workers = 1;
  LogRegConfig logreg;

  void Validate() const;
};

struct ExperimentInputs {
  const KnowledgeGraph* g0 = nullptr;
  const SnapshotDiff* diff = nullptr;
  /// Needed for the meta-path feature modes.
  const MetaPathDictionary* dict = nullptr;
  const EmbeddingTable* table = nullptr;
};

struct Report {
  ExperimentConfig config;
  int dim = 0;
  std::vector<double> f1;
  double mean = 0.0;
  double stddev = 0.0;
  /// Operator actually applied; "none" for edge-mp features.
  std::string effective_op;
  bool downgraded = false;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::size_t empty_features = 0;
  double wall_seconds = 0.0;
};

/// Builds the labeled set once, featurizes every pair from t0 structures,
/// then for each repetition splits, trains and scores on an independent
/// seed. With hadamard and any zero-flagged node vector, the whole
/// experiment falls back to the average operator and logs a warning.
Report RunExperiment(const ExperimentConfig& cfg, const ExperimentInputs& in);

/// `metric=macro_f1 mean=.. std=.. dim=.. op=..` followed by the other
/// config fields.
std::string ReportKeyValues(const Report& report);
/// Human-readable table plus the key-value line. Wall time only when asked,
/// so report files stay byte-identical across runs.
std::string FormatReport(const Report& report, bool with_wall_time);
/// Parses a key-value line; throws ParseError when it is not one.
std::map<std::string, std::string> ParseReportLine(std::string_view line);

/// Retrains the table for each dimension and runs the experiment.
std::vector<Report> SweepDimensions(const Corpus& corpus,
                                    const TrainConfig& train,
                                    std::span<const int> dims,
                                    const ExperimentConfig& cfg,
                                    ExperimentInputs in);
std::vector<Report> SweepTrainFraction(std::span<const double> fractions,
                                       const ExperimentConfig& cfg,
                                       const ExperimentInputs& in);
std::vector<Report> SweepSampleFraction(std::span<const double> fractions,
                                        const ExperimentConfig& cfg,
                                        const ExperimentInputs& in);
void WriteSweepCsv(const std::vector<Report>& reports,
                   const std::filesystem::path& file);

}  // namespace mpemb

#endif  // MPEMB_EXPERIMENT_H_
