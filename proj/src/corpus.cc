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

#include "mpemb/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <thread>

#include "mpemb/error.h"
#include "mpemb/random.h"
#include "mpemb/tsv.h"

namespace mpemb {

std::uint32_t Corpus::Intern(std::string_view word) {
  auto it = index_.find(word);
  if (it != index_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(words_.size());
  words_.emplace_back(word);
  index_.emplace(words_.back(), id);
  return id;
}

std::size_t Corpus::num_tokens() const {
  std::size_t n = 0;
  for (const auto& s : sentences_) n += s.size();
  return n;
}

void SentenceConfig::Validate() const {
  if (sentence_length < 2) throw ConfigError("sentence length must be >= 2");
  if (samples_per_pair < 1) throw ConfigError("samples per pair must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
}

namespace {

// Weighted sampling without replacement (Efraimidis-Spirakis): the k items
// with the largest u^(1/w) keys. Uniform weights reduce to a uniform
// k-subset.
std::vector<std::uint32_t> SampleWithoutReplacement(
    std::span<const PathCount> entries, std::size_t k, bool weighted,
    Rng& rng) {
  std::vector<std::pair<double, std::uint32_t>> keyed;
  keyed.reserve(entries.size());
  for (const PathCount& pc : entries) {
    double u = Uniform01(rng);
    if (u <= 0.0) u = 0x1.0p-53;
    const double w = weighted ? static_cast<double>(std::max<std::uint64_t>(
                                    pc.total(), 1))
                              : 1.0;
    keyed.emplace_back(std::log(u) / w, pc.path);
  }
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(k),
                    keyed.end(), [](const auto& a, const auto& b) {
                      return a.first > b.first ||
                             (a.first == b.first && a.second < b.second);
                    });
  std::vector<std::uint32_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(keyed[i].second);
  Shuffle(out.begin(), out.end(), rng);
  return out;
}

}  // namespace

Corpus BuildSentences(const MetaPathDictionary& dict,
                      const SentenceConfig& cfg) {
  cfg.Validate();
  const auto pairs = dict.Pairs();
  // Sentences hold dictionary path ids until the final interning pass.
  std::vector<std::vector<std::vector<std::uint32_t>>> per_pair(pairs.size());
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto entries = dict.Entries(pairs[i]);
      if (entries.size() < 2) continue;
      // Entries are kept in insertion order, which depends on traversal; sort
      // by word so the draw only depends on content.
      std::vector<PathCount> sorted(entries.begin(), entries.end());
      std::sort(sorted.begin(), sorted.end(),
                [&](const PathCount& a, const PathCount& b) {
                  return dict.path(a.path) < dict.path(b.path);
                });
      Rng rng(DeriveSeed(cfg.seed, {pairs[i].first, pairs[i].second}));
      const std::size_t k = std::min<std::size_t>(
          static_cast<std::size_t>(cfg.sentence_length), sorted.size());
      for (int s = 0; s < cfg.samples_per_pair; ++s) {
        per_pair[i].push_back(
            SampleWithoutReplacement(sorted, k, cfg.weight_by_count, rng));
      }
    }
  };
  const std::size_t workers = static_cast<std::size_t>(cfg.workers);
  if (workers == 1 || pairs.size() < 2) {
    run(0, pairs.size());
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back(run, pairs.size() * w / workers,
                           pairs.size() * (w + 1) / workers);
    }
    for (auto& t : threads) t.join();
  }

  Corpus corpus;
  std::unordered_map<std::uint32_t, std::uint32_t> word_of_path;
  for (auto& sentences : per_pair) {
    for (auto& sentence : sentences) {
      for (auto& id : sentence) {
        auto it = word_of_path.find(id);
        if (it == word_of_path.end()) {
          it = word_of_path
                   .emplace(id, corpus.Intern(SerializeMetaPath(dict.path(id))))
                   .first;
        }
        id = it->second;
      }
      corpus.AddSentence(std::move(sentence));
    }
  }
  return corpus;
}

void WriteCorpus(const Corpus& corpus, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw Error("cannot write " + file.string());
  std::string line;
  for (const auto& sentence : corpus.sentences()) {
    line.clear();
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      if (i > 0) line.push_back(' ');
      line += corpus.words()[sentence[i]];
    }
    line.push_back('\n');
    out << line;
  }
}

Corpus ReadCorpus(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open " + file.string());
  Corpus corpus;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::uint32_t> sentence;
    for (std::string_view w : Split(line, ' ')) {
      if (!w.empty()) sentence.push_back(corpus.Intern(w));
    }
    if (!sentence.empty()) corpus.AddSentence(std::move(sentence));
  }
  return corpus;
}

}  // namespace mpemb
