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

#ifndef MPEMB_VOCABULARY_H_
#define MPEMB_VOCABULARY_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mpemb/corpus.h"
#include "mpemb/ids.h"

namespace mpemb {

struct NgramConfig {
  int min_n = 1;
  int max_n = 3;
  std::uint32_t buckets = 2'000'000;

  void Validate() const;
};

/// Contiguous token subsequences of a meta-path word with min_n <= length
/// <= max_n, each rendered as its tokens joined by '.', in order of start
/// position then length. Whole-word handling is up to the caller.
std::vector<std::string> NgramStrings(std::string_view word, int min_n,
                                      int max_n);

/// 32-bit FNV-1a of the gram text, reduced modulo the bucket count.
std::uint32_t GramBucket(std::string_view gram, std::uint32_t buckets);

/// Bucket ids of all grams of `word` (no whole-word id).
std::vector<std::uint32_t> ExtractNgrams(std::string_view word,
                                         const NgramConfig& cfg);

/// Word <-> index maps, counts and the gram list of every word. Gram ids
/// below `buckets` are hashed n-grams; id `buckets + i` is the dedicated
/// whole-word vector of word i.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Counts the corpus and keeps words occurring at least `min_count` times,
  /// ordered by descending count then by word.
  static Vocabulary Build(const Corpus& corpus, const NgramConfig& cfg,
                          std::uint64_t min_count = 1);
  /// Rebuilds from stored (word, count) entries, e.g. when loading a table.
  static Vocabulary FromCounts(
      std::vector<std::pair<std::string, std::uint64_t>> entries,
      const NgramConfig& cfg);

  std::size_t size() const { return words_.size(); }
  const std::string& word(std::uint32_t i) const { return words_[i]; }
  std::uint64_t count(std::uint32_t i) const { return counts_[i]; }
  std::uint64_t total_count() const { return total_; }
  std::optional<std::uint32_t> Find(std::string_view word) const;
  const NgramConfig& ngrams() const { return cfg_; }

  /// Hashed grams plus the whole-word id; never empty.
  std::span<const std::uint32_t> Grams(std::uint32_t word) const {
    return grams_[word];
  }
  std::uint32_t WholeWordId(std::uint32_t word) const {
    return cfg_.buckets + word;
  }

  /// Whether some vocabulary word contains this gram text.
  bool KnowsGram(std::string_view gram) const {
    return gram_owner_.count(std::string(gram)) > 0;
  }
  /// Whether distinct gram texts of the vocabulary hash to this bucket.
  bool BucketCollides(std::uint32_t bucket) const {
    return collided_.count(bucket) > 0;
  }
  /// Buckets referenced by at least one vocabulary word, ascending.
  std::vector<std::uint32_t> UsedBuckets() const;

  /// `word<TAB>count` in vocabulary order.
  void Write(const std::filesystem::path& file) const;

 private:
  void Index();

  NgramConfig cfg_;
  std::vector<std::string> words_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
  std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>>
      index_;
  std::vector<std::vector<std::uint32_t>> grams_;
  std::unordered_map<std::string, std::uint32_t> gram_owner_;
  std::unordered_set<std::uint32_t> collided_;
};

}  // namespace mpemb

#endif  // MPEMB_VOCABULARY_H_
