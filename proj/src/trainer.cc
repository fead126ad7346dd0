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

#include "mpemb/trainer.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "mpemb/error.h"
#include "mpemb/random.h"

namespace mpemb {
namespace {

// log(1 + e^x) without overflow.
double Softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

template <bool kShared>
double Load(const double& x) {
  if constexpr (kShared) {
    return std::atomic_ref<double>(const_cast<double&>(x))
        .load(std::memory_order_relaxed);
  } else {
    return x;
  }
}

template <bool kShared>
void AddTo(double& x, double delta) {
  if constexpr (kShared) {
    std::atomic_ref<double> r(x);
    r.store(r.load(std::memory_order_relaxed) + delta,
            std::memory_order_relaxed);
  } else {
    x += delta;
  }
}

double CombineScale(const EmbeddingTable& table, std::uint32_t word) {
  return table.config().combine == GramCombine::kMean
             ? 1.0 / static_cast<double>(table.WordRows(word).size())
             : 1.0;
}

template <bool kShared>
void Hidden(const EmbeddingTable& table, std::uint32_t word,
            std::vector<double>& h) {
  h.assign(static_cast<std::size_t>(table.dim()), 0.0);
  for (std::uint32_t r : table.WordRows(word)) {
    auto row = table.InputRow(r);
    for (std::size_t k = 0; k < h.size(); ++k) h[k] += Load<kShared>(row[k]);
  }
  const double scale = CombineScale(table, word);
  if (scale != 1.0) {
    for (double& x : h) x *= scale;
  }
}

void CheckFinite(double value, std::uint32_t word, std::uint32_t context) {
  if (!std::isfinite(value)) {
    throw TrainingDivergedError("non-finite loss or gradient at word " +
                                std::to_string(word) + ", context " +
                                std::to_string(context) +
                                "; lower the learning rate");
  }
}

template <bool kShared>
double Step(EmbeddingTable& table, std::uint32_t word, std::uint32_t context,
            std::span<const std::uint32_t> negatives, double lr,
            std::vector<double>& h, std::vector<double>& grad) {
  Hidden<kShared>(table, word, h);
  grad.assign(h.size(), 0.0);
  double loss = 0.0;
  auto term = [&](std::uint32_t out, bool positive) {
    auto o = table.OutputRow(out);
    double s = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k) s += h[k] * Load<kShared>(o[k]);
    const double g = Sigmoid(s) - (positive ? 1.0 : 0.0);
    loss += Softplus(positive ? -s : s);
    CheckFinite(loss + g, word, context);
    for (std::size_t k = 0; k < h.size(); ++k) {
      grad[k] += g * Load<kShared>(o[k]);
      AddTo<kShared>(o[k], -lr * g * h[k]);
    }
  };
  term(context, true);
  for (std::uint32_t n : negatives) term(n, false);
  const double step = lr * CombineScale(table, word);
  for (std::uint32_t r : table.WordRows(word)) {
    auto row = table.InputRow(r);
    for (std::size_t k = 0; k < grad.size(); ++k) {
      AddTo<kShared>(row[k], -step * grad[k]);
    }
  }
  return loss;
}

class NoiseSampler {
 public:
  NoiseSampler(const Vocabulary& vocab, const TrainConfig& cfg) {
    cumulative_.reserve(vocab.size());
    double total = 0.0;
    for (std::uint32_t w = 0; w < vocab.size(); ++w) {
      total += cfg.noise == NoiseDistribution::kUniform
                   ? 1.0
                   : std::pow(static_cast<double>(vocab.count(w)),
                              cfg.noise_power);
      cumulative_.push_back(total);
    }
  }

  std::uint32_t Draw(Rng& rng) const {
    const double u = Uniform01(rng) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<std::uint32_t>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

struct EpochTotals {
  double loss = 0.0;
  std::uint64_t pairs = 0;
};

template <bool kShared>
void RunSlice(EmbeddingTable& table,
              const std::vector<std::vector<std::uint32_t>>& sentences,
              const std::vector<std::size_t>& order,
              std::size_t begin, std::size_t end, int epoch,
              std::uint64_t tokens_before, std::uint64_t total_work,
              const NoiseSampler& noise, EpochTotals& totals) {
  const TrainConfig& cfg = table.config();
  const Vocabulary& vocab = table.vocab();
  std::vector<double> h, grad;
  std::vector<std::uint32_t> kept, negs;
  std::uint64_t processed = tokens_before;
  for (std::size_t i = begin; i < end; ++i) {
    const std::size_t s = order[i];
    Rng rng(DeriveSeed(cfg.seed, {0x747261696eULL,
                                  static_cast<std::uint64_t>(epoch), s}));
    kept.clear();
    for (std::uint32_t w : sentences[s]) {
      if (cfg.subsample > 0.0) {
        const double f = static_cast<double>(vocab.count(w)) /
                         static_cast<double>(vocab.total_count());
        const double keep = std::sqrt(cfg.subsample / f) + cfg.subsample / f;
        if (Uniform01(rng) >= keep) continue;
      }
      kept.push_back(w);
    }
    const auto n = static_cast<std::ptrdiff_t>(kept.size());
    for (std::ptrdiff_t t = 0; t < n; ++t) {
      const double lr =
          cfg.learning_rate *
          std::max(1e-4, 1.0 - static_cast<double>(processed) /
                                   static_cast<double>(total_work));
      ++processed;
      const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, t - cfg.window);
      const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, t + cfg.window);
      for (std::ptrdiff_t c = lo; c <= hi; ++c) {
        if (c == t) continue;
        const std::uint32_t context = kept[static_cast<std::size_t>(c)];
        negs.clear();
        if (vocab.size() > 1) {
          for (int k = 0; k < cfg.negatives; ++k) {
            std::uint32_t neg;
            do {
              neg = noise.Draw(rng);
            } while (neg == context);
            negs.push_back(neg);
          }
        }
        totals.loss += Step<kShared>(table, kept[static_cast<std::size_t>(t)],
                                     context, negs, lr, h, grad);
        ++totals.pairs;
      }
    }
  }
}

// Mean pair loss over the corpus with negatives drawn from streams that do
// not depend on the epoch, so successive evaluations are comparable.
double Objective(const EmbeddingTable& table,
                 const std::vector<std::vector<std::uint32_t>>& sentences,
                 const NoiseSampler& noise) {
  const TrainConfig& cfg = table.config();
  std::vector<std::uint32_t> negs;
  double loss = 0.0;
  std::uint64_t pairs = 0;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    Rng rng(DeriveSeed(cfg.seed, {0x6576616cULL, s}));
    const auto& sent = sentences[s];
    const auto n = static_cast<std::ptrdiff_t>(sent.size());
    for (std::ptrdiff_t t = 0; t < n; ++t) {
      const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, t - cfg.window);
      const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, t + cfg.window);
      for (std::ptrdiff_t c = lo; c <= hi; ++c) {
        if (c == t) continue;
        const std::uint32_t context = sent[static_cast<std::size_t>(c)];
        negs.clear();
        if (table.vocab().size() > 1) {
          for (int k = 0; k < cfg.negatives; ++k) {
            std::uint32_t neg;
            do {
              neg = noise.Draw(rng);
            } while (neg == context);
            negs.push_back(neg);
          }
        }
        loss += PairLoss(table, sent[static_cast<std::size_t>(t)], context, negs);
        ++pairs;
      }
    }
  }
  return pairs ? loss / static_cast<double>(pairs) : 0.0;
}

}  // namespace

double PairLoss(const EmbeddingTable& table, std::uint32_t word,
                std::uint32_t context,
                std::span<const std::uint32_t> negatives) {
  std::vector<double> h;
  Hidden<false>(table, word, h);
  auto dot = [&](std::uint32_t out) {
    auto o = table.OutputRow(out);
    double s = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k) s += h[k] * o[k];
    return s;
  };
  double loss = Softplus(-dot(context));
  for (std::uint32_t n : negatives) loss += Softplus(dot(n));
  return loss;
}

double SgdPairUpdate(EmbeddingTable& table, std::uint32_t word,
                     std::uint32_t context,
                     std::span<const std::uint32_t> negatives,
                     double learning_rate) {
  std::vector<double> h, grad;
  return Step<false>(table, word, context, negatives, learning_rate, h, grad);
}

void TrainTable(EmbeddingTable& table, const Corpus& corpus,
                TrainStats* stats) {
  const TrainConfig& cfg = table.config();
  const Vocabulary& vocab = table.vocab();
  std::vector<std::int64_t> to_vocab(corpus.words().size(), -1);
  for (std::size_t i = 0; i < to_vocab.size(); ++i) {
    if (auto id = vocab.Find(corpus.words()[i])) to_vocab[i] = *id;
  }
  std::vector<std::vector<std::uint32_t>> sentences;
  std::uint64_t tokens = 0;
  for (const auto& s : corpus.sentences()) {
    std::vector<std::uint32_t> mapped;
    for (std::uint32_t w : s) {
      if (to_vocab[w] >= 0) mapped.push_back(static_cast<std::uint32_t>(to_vocab[w]));
    }
    tokens += mapped.size();
    sentences.push_back(std::move(mapped));
  }
  if (stats) *stats = {};
  if (tokens == 0 || vocab.size() == 0) {
    if (stats) stats->epoch_loss.assign(static_cast<std::size_t>(cfg.epochs), 0.0);
    return;
  }
  const NoiseSampler noise(vocab, cfg);
  const std::uint64_t total_work = tokens * static_cast<std::uint64_t>(cfg.epochs);
  const std::size_t workers = std::min<std::size_t>(
      static_cast<std::size_t>(cfg.workers), sentences.size());
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const std::uint64_t base = tokens * static_cast<std::uint64_t>(epoch);
    // Sentences of one node pair are adjacent in the corpus; visiting them in
    // a fresh random order every epoch keeps consecutive updates unrelated.
    std::vector<std::size_t> order(sentences.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng order_rng(DeriveSeed(cfg.seed, {0x6f72646572ULL,
                                        static_cast<std::uint64_t>(epoch)}));
    Shuffle(order.begin(), order.end(), order_rng);
    std::vector<std::uint64_t> offsets{0};
    for (std::size_t i : order) offsets.push_back(offsets.back() + sentences[i].size());
    std::vector<EpochTotals> totals(workers);
    if (workers <= 1) {
      RunSlice<false>(table, sentences, order, 0, sentences.size(), epoch, base,
                      total_work, noise, totals[0]);
    } else {
      std::vector<std::thread> threads;
      std::vector<std::exception_ptr> errors(workers);
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t b = sentences.size() * w / workers;
        const std::size_t e = sentences.size() * (w + 1) / workers;
        threads.emplace_back([&, w, b, e] {
          try {
            RunSlice<true>(table, sentences, order, b, e, epoch, base + offsets[b],
                           total_work, noise, totals[w]);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& t : threads) t.join();
      for (auto& err : errors) {
        if (err) std::rethrow_exception(err);
      }
    }
    EpochTotals sum;
    for (const auto& t : totals) {
      sum.loss += t.loss;
      sum.pairs += t.pairs;
    }
    if (stats) {
      stats->epoch_loss.push_back(
          sum.pairs ? sum.loss / static_cast<double>(sum.pairs) : 0.0);
      stats->pair_updates += sum.pairs;
      stats->epoch_objective.push_back(Objective(table, sentences, noise));
    }
  }
}

EmbeddingTable Train(const Corpus& corpus, const TrainConfig& cfg,
                     TrainStats* stats) {
  cfg.Validate();
  EmbeddingTable table = EmbeddingTable::Initialize(
      Vocabulary::Build(corpus, cfg.ngrams, cfg.min_count), cfg);
  TrainTable(table, corpus, stats);
  return table;
}

}  // namespace mpemb
