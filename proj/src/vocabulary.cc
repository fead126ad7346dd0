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

#include "mpemb/vocabulary.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "mpemb/error.h"
#include "mpemb/metapath.h"

namespace mpemb {

void NgramConfig::Validate() const {
  if (min_n < 1) throw ConfigError("min_n must be >= 1");
  if (max_n < min_n) throw ConfigError("max_n must be >= min_n");
  if (buckets == 0) throw ConfigError("bucket count must be positive");
}

std::vector<std::string> NgramStrings(std::string_view word, int min_n,
                                      int max_n) {
  const auto tokens = MetaPathTokens(word);
  std::vector<std::string> out;
  const auto n = static_cast<int>(tokens.size());
  for (int start = 0; start < n; ++start) {
    std::string gram;
    for (int len = 1; len <= max_n && start + len <= n; ++len) {
      if (len > 1) gram.push_back('.');
      gram.append(tokens[static_cast<std::size_t>(start + len - 1)]);
      if (len >= min_n) out.push_back(gram);
    }
  }
  return out;
}

std::uint32_t GramBucket(std::string_view gram, std::uint32_t buckets) {
  std::uint32_t h = 2166136261u;
  for (char c : gram) {
    h ^= static_cast<std::uint32_t>(static_cast<unsigned char>(c));
    h *= 16777619u;
  }
  return h % buckets;
}

std::vector<std::uint32_t> ExtractNgrams(std::string_view word,
                                         const NgramConfig& cfg) {
  std::vector<std::uint32_t> out;
  for (const std::string& g : NgramStrings(word, cfg.min_n, cfg.max_n)) {
    out.push_back(GramBucket(g, cfg.buckets));
  }
  return out;
}

Vocabulary Vocabulary::Build(const Corpus& corpus, const NgramConfig& cfg,
                             std::uint64_t min_count) {
  cfg.Validate();
  std::vector<std::uint64_t> counts(corpus.words().size(), 0);
  for (const auto& sentence : corpus.sentences()) {
    for (std::uint32_t w : sentence) ++counts[w];
  }
  std::vector<std::pair<std::string, std::uint64_t>> entries;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] >= std::max<std::uint64_t>(min_count, 1)) {
      entries.emplace_back(corpus.words()[i], counts[i]);
    }
  }
  return FromCounts(std::move(entries), cfg);
}

Vocabulary Vocabulary::FromCounts(
    std::vector<std::pair<std::string, std::uint64_t>> entries,
    const NgramConfig& cfg) {
  cfg.Validate();
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.second > b.second || (a.second == b.second && a.first < b.first);
  });
  Vocabulary v;
  v.cfg_ = cfg;
  for (auto& [word, count] : entries) {
    v.words_.push_back(std::move(word));
    v.counts_.push_back(count);
    v.total_ += count;
  }
  v.Index();
  return v;
}

void Vocabulary::Index() {
  index_.clear();
  grams_.assign(words_.size(), {});
  gram_owner_.clear();
  collided_.clear();
  std::unordered_map<std::uint32_t, std::string> bucket_text;
  for (std::uint32_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], i).second) {
      throw IntegrityError("duplicate vocabulary word '" + words_[i] + "'");
    }
    for (const std::string& g : NgramStrings(words_[i], cfg_.min_n, cfg_.max_n)) {
      const std::uint32_t b = GramBucket(g, cfg_.buckets);
      grams_[i].push_back(b);
      gram_owner_.emplace(g, b);
      auto [it, inserted] = bucket_text.emplace(b, g);
      if (!inserted && it->second != g) collided_.insert(b);
    }
    grams_[i].push_back(WholeWordId(i));
  }
}

std::optional<std::uint32_t> Vocabulary::Find(std::string_view word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint32_t> Vocabulary::UsedBuckets() const {
  std::set<std::uint32_t> used;
  for (const auto& g : grams_) {
    for (std::uint32_t id : g) {
      if (id < cfg_.buckets) used.insert(id);
    }
  }
  return {used.begin(), used.end()};
}

void Vocabulary::Write(const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) throw Error("cannot write " + file.string());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out << words_[i] << '\t' << counts_[i] << '\n';
  }
}

}  // namespace mpemb
