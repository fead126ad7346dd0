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

#ifndef MPEMB_CORPUS_H_
#define MPEMB_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mpemb/dictionary.h"
#include "mpemb/ids.h"

namespace mpemb {

/// Training corpus: sentences of meta-path words. Words are interned, so a
/// sentence is a list of indices into `words()`.
class Corpus {
 public:
  std::uint32_t Intern(std::string_view word);
  void AddSentence(std::vector<std::uint32_t> sentence) {
    sentences_.push_back(std::move(sentence));
  }

  const std::vector<std::string>& words() const { return words_; }
  const std::vector<std::vector<std::uint32_t>>& sentences() const {
    return sentences_;
  }
  std::size_t num_tokens() const;
  bool empty() const { return sentences_.empty(); }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>>
      index_;
  std::vector<std::vector<std::uint32_t>> sentences_;
};

struct SentenceConfig {
  /// Words per sentence (upper bound; a pair with fewer meta-paths yields
  /// shorter sentences).
  int sentence_length = 8;
  /// Sentences drawn per node pair.
  int samples_per_pair = 10;
  std::uint64_t seed = 0;
  /// Draw meta-paths with probability proportional to their multiplicity.
  bool weight_by_count = true;
  int workers = 1;

  void Validate() const;
};

/// For every pair with at least two distinct meta-paths, draws
/// `samples_per_pair` sentences. Each is a sample without replacement of
/// min(sentence_length, m) of the pair's m meta-paths, in shuffled order.
/// Pairs are visited in ascending order and each pair draws from its own
/// stream seeded by (seed, pair), so the corpus is independent of `workers`.
Corpus BuildSentences(const MetaPathDictionary& dict,
                      const SentenceConfig& cfg);

/// One sentence per line, words separated by single spaces.
void WriteCorpus(const Corpus& corpus, const std::filesystem::path& file);
Corpus ReadCorpus(const std::filesystem::path& file);

}  // namespace mpemb

#endif  // MPEMB_CORPUS_H_
