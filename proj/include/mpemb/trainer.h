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

#ifndef MPEMB_TRAINER_H_
#define MPEMB_TRAINER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mpemb/corpus.h"
#include "mpemb/embedding.h"

namespace mpemb {

struct TrainStats {
  /// Mean negative-sampling loss per (word, context) pair, one per epoch,
  /// measured before each update.
  std::vector<double> epoch_loss;
  /// Corpus loss after each epoch, with the same noise draws every epoch.
  std::vector<double> epoch_objective;
  std::uint64_t pair_updates = 0;
};

/// Skip-gram with negative sampling over gram-composed word vectors.
/// With one worker the result is a pure function of (corpus, config).
/// More workers update the shared table without locks.
EmbeddingTable Train(const Corpus& corpus, const TrainConfig& cfg,
                     TrainStats* stats = nullptr);

/// Continues training an existing table on a corpus; words outside the
/// table's vocabulary are skipped.
void TrainTable(EmbeddingTable& table, const Corpus& corpus,
                TrainStats* stats = nullptr);

/// -log s(h.o_c) - sum_n log s(-h.o_n) for vocabulary indices.
double PairLoss(const EmbeddingTable& table, std::uint32_t word,
                std::uint32_t context,
                std::span<const std::uint32_t> negatives);

/// One SGD step on PairLoss; returns the loss before the step.
double SgdPairUpdate(EmbeddingTable& table, std::uint32_t word,
                     std::uint32_t context,
                     std::span<const std::uint32_t> negatives,
                     double learning_rate);

}  // namespace mpemb

#endif  // MPEMB_TRAINER_H_
