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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "mpemb/corpus.h"
#include "mpemb/dictionary.h"
#include "mpemb/error.h"
#include "mpemb/miner.h"
#include "mpemb/vocabulary.h"
#include "test_util.h"

namespace mpemb {
namespace {

// A dictionary with one pair holding `m` distinct two-node meta-paths.
MetaPathDictionary PairWithPaths(int m, NodeId u = 0, NodeId v = 1) {
  MetaPathDictionary d;
  for (int i = 0; i < m; ++i) {
    d.Record(u, v, MetaPath({0, static_cast<std::uint32_t>(i), 1}));
  }
  return d;
}

TEST_CASE("two meta-paths fill one sentence") {
  SentenceConfig cfg;
  cfg.sentence_length = 5;
  cfg.samples_per_pair = 1;
  const Corpus c = BuildSentences(PairWithPaths(2), cfg);
  REQUIRE(c.sentences().size() == 1);
  std::set<std::string> words;
  for (auto w : c.sentences()[0]) words.insert(c.words()[w]);
  CHECK(words == std::set<std::string>{"n0.e0.n1", "n0.e1.n1"});
}

TEST_CASE("pairs with fewer than two meta-paths give no sentences") {
  SentenceConfig cfg;
  CHECK(BuildSentences(PairWithPaths(0), cfg).sentences().empty());
  CHECK(BuildSentences(PairWithPaths(1), cfg).sentences().empty());
  CHECK_THROWS_AS(BuildSentences(PairWithPaths(3), SentenceConfig{1, 1, 0, true, 1}),
                  ConfigError);
}

TEST_CASE("uniform pair frequencies for m=4, n=2") {
  SentenceConfig cfg;
  cfg.sentence_length = 2;
  cfg.samples_per_pair = 100;
  std::map<std::set<std::uint32_t>, int> freq;
  int total = 0;
  // Average over several seeds to keep the Monte-Carlo error small.
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    cfg.seed = seed;
    const Corpus c = BuildSentences(PairWithPaths(4), cfg);
    for (const auto& s : c.sentences()) {
      REQUIRE(s.size() == 2);
      CHECK(s[0] != s[1]);
      std::set<std::uint32_t> key;
      for (auto w : s) key.insert(static_cast<std::uint32_t>(
                           ParseMetaPath(c.words()[w]).edge_type(0).value));
      ++freq[key];
      ++total;
    }
  }
  CHECK(freq.size() == 6);
  for (const auto& [key, count] : freq) {
    CHECK(std::abs(static_cast<double>(count) / total - 1.0 / 6) < 0.02);
  }
}

TEST_CASE("multiplicities weight the draw") {
  MetaPathDictionary d;
  d.Record(0, 1, MetaPath({0, 0, 1}), 50);
  d.Record(0, 1, MetaPath({0, 1, 1}), 1);
  d.Record(0, 1, MetaPath({0, 2, 1}), 1);
  SentenceConfig cfg;
  cfg.sentence_length = 1 + 1;
  cfg.samples_per_pair = 2000;
  auto heavy = [&](bool weighted) {
    cfg.weight_by_count = weighted;
    const Corpus c = BuildSentences(d, cfg);
    int n = 0;
    for (const auto& s : c.sentences()) {
      for (auto w : s) n += c.words()[w] == "n0.e0.n1";
    }
    return n;
  };
  // weighted: missed only when both draws pick a light path
  CHECK(heavy(true) > 1900);
  // unweighted: any 2 of 3, so 2/3 of the sentences
  CHECK(std::abs(heavy(false) - 1333) < 100);
}

TEST_CASE("sentences are deterministic and independent of workers") {
  std::mt19937_64 rng(21);
  const KnowledgeGraph g = testing::RandomGraph(rng, 18, 4, 3, 3);
  MiningConfig mc;
  mc.max_length = 3;
  const MetaPathDictionary d = MineAll(g, mc);
  SentenceConfig cfg;
  cfg.seed = 5;
  const Corpus a = BuildSentences(d, cfg);
  const Corpus b = BuildSentences(d, cfg);
  cfg.workers = 3;
  const Corpus c = BuildSentences(d, cfg);
  testing::TempDir dir;
  WriteCorpus(a, dir / "a.txt");
  WriteCorpus(b, dir / "b.txt");
  WriteCorpus(c, dir / "c.txt");
  CHECK(testing::ReadText(dir / "a.txt") == testing::ReadText(dir / "b.txt"));
  CHECK(testing::ReadText(dir / "a.txt") == testing::ReadText(dir / "c.txt"));
  const Corpus back = ReadCorpus(dir / "a.txt");
  CHECK(back.num_tokens() == a.num_tokens());
  // every sentence connects one pair: all words of a sentence are stored
  // for the same pair, and none repeats
  for (const auto& s : a.sentences()) {
    std::set<std::uint32_t> distinct(s.begin(), s.end());
    CHECK(distinct.size() == s.size());
    CHECK(s.size() >= 2);
    CHECK(s.size() <= static_cast<std::size_t>(cfg.sentence_length));
  }
}

// ---- n-grams and vocabulary ---------------------------------------------------

TEST_CASE("token n-grams") {
  CHECK(NgramStrings("n3.e7.n5", 1, 1) == std::vector<std::string>{"n3", "e7", "n5"});
  auto g23 = NgramStrings("n3.e7.n5", 2, 3);
  std::sort(g23.begin(), g23.end());
  CHECK(g23 == std::vector<std::string>{"e7.n5", "n3.e7", "n3.e7.n5"});
  CHECK(NgramStrings("n3", 2, 3).empty());
}

TEST_CASE("vocabulary gram lists end with the whole-word id") {
  Corpus c;
  c.AddSentence({c.Intern("n3.e7.n5"), c.Intern("n3")});
  c.AddSentence({c.Intern("n3.e7.n5"), c.Intern("n3")});
  c.AddSentence({c.Intern("n3.e7.n5"), c.Intern("n1.e7.n5")});
  NgramConfig ng;
  ng.min_n = 1;
  ng.max_n = 1;
  ng.buckets = 1000;
  const Vocabulary v = Vocabulary::Build(c, ng);
  REQUIRE(v.size() == 3);
  CHECK(v.word(0) == "n3.e7.n5");  // most frequent first
  CHECK(v.count(0) == 3);
  CHECK(v.total_count() == c.num_tokens());
  const auto grams = v.Grams(0);
  REQUIRE(grams.size() == 4);
  CHECK(grams[0] == GramBucket("n3", 1000));
  CHECK(grams[1] == GramBucket("e7", 1000));
  CHECK(grams[2] == GramBucket("n5", 1000));
  CHECK(grams[3] == v.WholeWordId(0));
  ng.min_n = 2;
  ng.max_n = 3;
  const Vocabulary v2 = Vocabulary::Build(c, ng);
  const auto single = *v2.Find("n3");
  CHECK(v2.Grams(single).size() == 1);
  CHECK(v2.Grams(single)[0] == v2.WholeWordId(single));
}

TEST_CASE("vocabulary counts equal corpus counts (random corpora)") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Corpus c;
    std::map<std::string, std::uint64_t> expect;
    for (int s = 0; s < 20; ++s) {
      std::vector<std::uint32_t> sent;
      for (int k = 0; k < 5; ++k) {
        const std::string w = "n" + std::to_string(rng() % 3) + ".e" +
                              std::to_string(rng() % 4) + ".n" + std::to_string(rng() % 3);
        sent.push_back(c.Intern(w));
        ++expect[w];
      }
      c.AddSentence(sent);
    }
    const Vocabulary v = Vocabulary::Build(c, NgramConfig{});
    CHECK(v.size() == expect.size());
    for (std::uint32_t i = 0; i < v.size(); ++i) {
      CHECK(v.count(i) == expect[v.word(i)]);
      CHECK_FALSE(v.Grams(i).empty());
      if (i > 0) CHECK(v.count(i) <= v.count(i - 1));
    }
  }
}

TEST_CASE("min_count drops rare words") {
  Corpus c;
  c.AddSentence({c.Intern("n1"), c.Intern("n1"), c.Intern("n2")});
  const Vocabulary v = Vocabulary::Build(c, NgramConfig{}, 2);
  CHECK(v.size() == 1);
  CHECK_FALSE(v.Find("n2").has_value());
}

}  // namespace
}  // namespace mpemb
