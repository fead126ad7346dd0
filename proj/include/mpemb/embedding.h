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

#ifndef MPEMB_EMBEDDING_H_
#define MPEMB_EMBEDDING_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mpemb/ids.h"
#include "mpemb/vocabulary.h"

namespace mpemb {

enum class NoiseDistribution { kUnigram, kUniform };
/// How the gram vectors of a word are combined into its embedding.
enum class GramCombine { kSum, kMean };

NoiseDistribution ParseNoiseDistribution(std::string_view name);
std::string_view ToString(NoiseDistribution noise);
GramCombine ParseGramCombine(std::string_view name);
std::string_view ToString(GramCombine combine);

struct TrainConfig {
  int dim = 64;
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  double learning_rate = 0.025;
  NgramConfig ngrams;
  std::uint64_t min_count = 1;
  std::uint64_t seed = 0;
  int workers = 1;
  NoiseDistribution noise = NoiseDistribution::kUnigram;
  /// Exponent applied to word counts for the unigram noise distribution.
  double noise_power = 0.75;
  GramCombine combine = GramCombine::kSum;
  /// Frequent-word subsampling threshold; 0 disables it.
  double subsample = 0.0;

  void Validate() const;
};

/// Input vectors for every gram id (hashed buckets and whole words) and
/// output (context) vectors for every vocabulary word.
///
/// Only buckets referenced by vocabulary words are stored. Every input row
/// starts from a value derived from (seed, gram id) alone, so an unstored
/// bucket reads back exactly the value a dense table would hold for it.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;

  /// Input rows uniform in [-1/dim, 1/dim], output rows zero.
  static EmbeddingTable Initialize(Vocabulary vocab, const TrainConfig& cfg);
  /// Initial value of input row `gram_id` for a given seed.
  static std::vector<double> InitialRow(std::uint64_t seed,
                                        std::uint32_t gram_id, int dim);

  int dim() const { return config_.dim; }
  const Vocabulary& vocab() const { return vocab_; }
  const TrainConfig& config() const { return config_; }

  /// Dense input rows summed for a word, one per entry of its gram list.
  std::span<const std::uint32_t> WordRows(std::uint32_t word) const {
    return word_rows_[word];
  }
  std::size_t num_input_rows() const { return num_rows_; }
  std::span<double> InputRow(std::size_t row) {
    return {input_.data() + row * dim_stride(), dim_stride()};
  }
  std::span<const double> InputRow(std::size_t row) const {
    return {input_.data() + row * dim_stride(), dim_stride()};
  }
  std::span<double> OutputRow(std::uint32_t word) {
    return {output_.data() + std::size_t{word} * dim_stride(), dim_stride()};
  }
  std::span<const double> OutputRow(std::uint32_t word) const {
    return {output_.data() + std::size_t{word} * dim_stride(), dim_stride()};
  }
  /// Dense row of a gram id, or -1 when the bucket is not stored.
  std::ptrdiff_t RowOfGram(std::uint32_t gram_id) const;
  /// Current vector of any gram id, stored or not.
  std::vector<double> GramVector(std::uint32_t gram_id) const;

  struct Vector {
    std::vector<double> values;
    /// Word embeddings: the word is not in the vocabulary and was composed
    /// from known grams. Type embeddings: the token's bucket is shared with
    /// other grams or the token never occurred.
    bool flagged = false;
  };

  /// emb(mp): sum (or mean) of the word's gram vectors including its
  /// whole-word vector.
  std::vector<double> EmbWord(std::uint32_t word) const;
  /// Unknown words made only of known grams are composed from the gram
  /// buckets and flagged. Throws OutOfVocabularyError otherwise.
  Vector EmbWord(std::string_view word) const;
  /// emb(mp)^T ctx(c). Throws OutOfVocabularyError for an unknown context.
  double Score(std::string_view word, std::string_view context,
               bool* fallback = nullptr) const;

  /// Unigram gram vectors of type tokens. Throw UnsupportedConfigError unless
  /// the table was trained with min_n == 1.
  Vector EmbNodeType(NodeTypeId type) const;
  Vector EmbEdgeType(EdgeTypeId type) const;

  /// Exact binary dump and its reader.
  void Save(const std::filesystem::path& file) const;
  static EmbeddingTable Load(const std::filesystem::path& file);
  /// `<rows> <dim>` header, then `word v1 ... vd` with emb(word).
  void WriteWordVectors(const std::filesystem::path& file) const;
  /// Same layout for the stored buckets, keyed `bucket:<id>`.
  void WriteBucketVectors(const std::filesystem::path& file) const;

  bool operator==(const EmbeddingTable& other) const;

  double* input_data() { return input_.data(); }
  double* output_data() { return output_.data(); }

 private:
  std::size_t dim_stride() const { return static_cast<std::size_t>(config_.dim); }
  void Layout();
  Vector TypeToken(std::string token) const;

  Vocabulary vocab_;
  TrainConfig config_;
  std::vector<std::uint32_t> buckets_;  // stored bucket ids, ascending
  std::unordered_map<std::uint32_t, std::uint32_t> bucket_row_;
  std::vector<std::vector<std::uint32_t>> word_rows_;
  std::size_t num_rows_ = 0;
  std::vector<double> input_;
  std::vector<double> output_;
};

}  // namespace mpemb

#endif  // MPEMB_EMBEDDING_H_
