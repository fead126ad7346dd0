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

#include "mpemb/embedding.h"

#include <bit>
#include <cstring>
#include <fstream>

#include "mpemb/error.h"
#include "mpemb/metapath.h"
#include "mpemb/random.h"
#include "mpemb/tsv.h"

namespace mpemb {

NoiseDistribution ParseNoiseDistribution(std::string_view name) {
  if (name == "unigram") return NoiseDistribution::kUnigram;
  if (name == "uniform") return NoiseDistribution::kUniform;
  throw ConfigError("unknown noise distribution '" + std::string(name) + "'");
}

std::string_view ToString(NoiseDistribution noise) {
  return noise == NoiseDistribution::kUnigram ? "unigram" : "uniform";
}

GramCombine ParseGramCombine(std::string_view name) {
  if (name == "sum") return GramCombine::kSum;
  if (name == "mean") return GramCombine::kMean;
  throw ConfigError("unknown gram combination '" + std::string(name) + "'");
}

std::string_view ToString(GramCombine combine) {
  return combine == GramCombine::kSum ? "sum" : "mean";
}

void TrainConfig::Validate() const {
  if (dim < 1) throw ConfigError("dimension must be >= 1");
  if (window < 1) throw ConfigError("window must be >= 1");
  if (negatives < 1) throw ConfigError("negatives must be >= 1");
  if (epochs < 0) throw ConfigError("epochs must be >= 0");
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be > 0");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (subsample < 0.0) throw ConfigError("subsample threshold must be >= 0");
  ngrams.Validate();
}

std::vector<double> EmbeddingTable::InitialRow(std::uint64_t seed,
                                               std::uint32_t gram_id, int dim) {
  Rng rng(DeriveSeed(seed, {0x696e707574ULL, gram_id}));
  const double bound = 1.0 / dim;
  std::vector<double> row(static_cast<std::size_t>(dim));
  for (double& x : row) x = (2.0 * Uniform01(rng) - 1.0) * bound;
  return row;
}

void EmbeddingTable::Layout() {
  buckets_ = vocab_.UsedBuckets();
  bucket_row_.clear();
  for (std::uint32_t i = 0; i < buckets_.size(); ++i) {
    bucket_row_.emplace(buckets_[i], i);
  }
  num_rows_ = buckets_.size() + vocab_.size();
  word_rows_.assign(vocab_.size(), {});
  for (std::uint32_t w = 0; w < vocab_.size(); ++w) {
    for (std::uint32_t g : vocab_.Grams(w)) {
      word_rows_[w].push_back(static_cast<std::uint32_t>(RowOfGram(g)));
    }
  }
}

EmbeddingTable EmbeddingTable::Initialize(Vocabulary vocab,
                                          const TrainConfig& cfg) {
  cfg.Validate();
  EmbeddingTable t;
  t.vocab_ = std::move(vocab);
  t.config_ = cfg;
  t.config_.ngrams = t.vocab_.ngrams();
  t.Layout();
  const std::size_t d = t.dim_stride();
  t.input_.resize(t.num_rows_ * d);
  for (std::size_t r = 0; r < t.num_rows_; ++r) {
    const std::uint32_t gram =
        r < t.buckets_.size()
            ? t.buckets_[r]
            : t.vocab_.WholeWordId(static_cast<std::uint32_t>(r - t.buckets_.size()));
    auto row = InitialRow(cfg.seed, gram, cfg.dim);
    std::copy(row.begin(), row.end(), t.input_.begin() + static_cast<std::ptrdiff_t>(r * d));
  }
  t.output_.assign(t.vocab_.size() * d, 0.0);
  return t;
}

std::ptrdiff_t EmbeddingTable::RowOfGram(std::uint32_t gram_id) const {
  const std::uint32_t buckets = vocab_.ngrams().buckets;
  if (gram_id >= buckets) {
    const std::uint32_t word = gram_id - buckets;
    if (word >= vocab_.size()) return -1;
    return static_cast<std::ptrdiff_t>(buckets_.size() + word);
  }
  auto it = bucket_row_.find(gram_id);
  return it == bucket_row_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

std::vector<double> EmbeddingTable::GramVector(std::uint32_t gram_id) const {
  const std::ptrdiff_t row = RowOfGram(gram_id);
  if (row < 0) return InitialRow(config_.seed, gram_id, config_.dim);
  auto r = InputRow(static_cast<std::size_t>(row));
  return {r.begin(), r.end()};
}

std::vector<double> EmbeddingTable::EmbWord(std::uint32_t word) const {
  std::vector<double> out(dim_stride(), 0.0);
  const auto rows = word_rows_.at(word);
  for (std::uint32_t r : rows) {
    auto v = InputRow(r);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += v[k];
  }
  if (config_.combine == GramCombine::kMean) {
    for (double& x : out) x /= static_cast<double>(rows.size());
  }
  return out;
}

EmbeddingTable::Vector EmbeddingTable::EmbWord(std::string_view word) const {
  if (auto id = vocab_.Find(word)) return {EmbWord(*id), false};
  const auto grams =
      NgramStrings(word, vocab_.ngrams().min_n, vocab_.ngrams().max_n);
  if (grams.empty()) {
    throw OutOfVocabularyError("unknown meta-path '" + std::string(word) +
                               "' has no grams");
  }
  Vector out{std::vector<double>(dim_stride(), 0.0), true};
  for (const std::string& g : grams) {
    if (!vocab_.KnowsGram(g)) {
      throw OutOfVocabularyError("unknown meta-path '" + std::string(word) +
                                 "' contains unseen gram '" + g + "'");
    }
    auto v = GramVector(GramBucket(g, vocab_.ngrams().buckets));
    for (std::size_t k = 0; k < v.size(); ++k) out.values[k] += v[k];
  }
  if (config_.combine == GramCombine::kMean) {
    for (double& x : out.values) x /= static_cast<double>(grams.size());
  }
  return out;
}

double EmbeddingTable::Score(std::string_view word, std::string_view context,
                             bool* fallback) const {
  auto c = vocab_.Find(context);
  if (!c) {
    throw OutOfVocabularyError("unknown context word '" + std::string(context) +
                               "'");
  }
  const Vector w = EmbWord(word);
  if (fallback) *fallback = w.flagged;
  auto o = OutputRow(*c);
  double s = 0.0;
  for (std::size_t k = 0; k < o.size(); ++k) s += w.values[k] * o[k];
  return s;
}

EmbeddingTable::Vector EmbeddingTable::TypeToken(std::string token) const {
  if (vocab_.ngrams().min_n != 1) {
    throw UnsupportedConfigError(
        "type embeddings need a table trained with min_n = 1");
  }
  const std::uint32_t bucket = GramBucket(token, vocab_.ngrams().buckets);
  const bool shared = !vocab_.KnowsGram(token) || vocab_.BucketCollides(bucket);
  return {GramVector(bucket), shared};
}

EmbeddingTable::Vector EmbeddingTable::EmbNodeType(NodeTypeId type) const {
  return TypeToken("n" + std::to_string(type.value));
}

EmbeddingTable::Vector EmbeddingTable::EmbEdgeType(EdgeTypeId type) const {
  return TypeToken("e" + std::to_string(type.value));
}

bool EmbeddingTable::operator==(const EmbeddingTable& other) const {
  if (config_.dim != other.config_.dim || vocab_.size() != other.vocab_.size() ||
      buckets_ != other.buckets_ || input_.size() != other.input_.size() ||
      output_.size() != other.output_.size()) {
    return false;
  }
  for (std::uint32_t w = 0; w < vocab_.size(); ++w) {
    if (vocab_.word(w) != other.vocab_.word(w) ||
        vocab_.count(w) != other.vocab_.count(w)) {
      return false;
    }
  }
  // Bitwise, so that -0.0 vs 0.0 or NaN payloads count as differences.
  return std::memcmp(input_.data(), other.input_.data(),
                     input_.size() * sizeof(double)) == 0 &&
         std::memcmp(output_.data(), other.output_.data(),
                     output_.size() * sizeof(double)) == 0;
}

namespace {

constexpr char kMagic[8] = {'M', 'P', 'E', 'M', 'B', 'T', 'B', '1'};

template <typename T>
void Put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T Get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw Error("truncated embedding table file");
  return v;
}

void PutString(std::ostream& out, const std::string& s) {
  Put<std::uint64_t>(out, s.size());
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string GetString(std::istream& in) {
  const auto n = Get<std::uint64_t>(in);
  if (n > (1u << 30)) throw Error("corrupt embedding table file");
  std::string s(n, '\0');
  in.read(s.data(), static_cast<std::streamsize>(n));
  if (!in) throw Error("truncated embedding table file");
  return s;
}

}  // namespace

void EmbeddingTable::Save(const std::filesystem::path& file) const {
  static_assert(std::endian::native == std::endian::little,
                "binary table format is little-endian");
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write " + file.string());
  out.write(kMagic, sizeof(kMagic));
  const TrainConfig& c = config_;
  Put<std::int32_t>(out, c.dim);
  Put<std::int32_t>(out, c.window);
  Put<std::int32_t>(out, c.negatives);
  Put<std::int32_t>(out, c.epochs);
  Put<double>(out, c.learning_rate);
  Put<std::int32_t>(out, c.ngrams.min_n);
  Put<std::int32_t>(out, c.ngrams.max_n);
  Put<std::uint32_t>(out, c.ngrams.buckets);
  Put<std::uint64_t>(out, c.min_count);
  Put<std::uint64_t>(out, c.seed);
  Put<std::int32_t>(out, c.workers);
  Put<std::int32_t>(out, static_cast<std::int32_t>(c.noise));
  Put<double>(out, c.noise_power);
  Put<std::int32_t>(out, static_cast<std::int32_t>(c.combine));
  Put<double>(out, c.subsample);
  Put<std::uint64_t>(out, vocab_.size());
  for (std::uint32_t w = 0; w < vocab_.size(); ++w) {
    PutString(out, vocab_.word(w));
    Put<std::uint64_t>(out, vocab_.count(w));
  }
  out.write(reinterpret_cast<const char*>(input_.data()),
            static_cast<std::streamsize>(input_.size() * sizeof(double)));
  out.write(reinterpret_cast<const char*>(output_.data()),
            static_cast<std::streamsize>(output_.size() * sizeof(double)));
  if (!out) throw Error("write failed for " + file.string());
}

EmbeddingTable EmbeddingTable::Load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open " + file.string());
  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error(file.string() + " is not an embedding table");
  }
  TrainConfig c;
  c.dim = Get<std::int32_t>(in);
  c.window = Get<std::int32_t>(in);
  c.negatives = Get<std::int32_t>(in);
  c.epochs = Get<std::int32_t>(in);
  c.learning_rate = Get<double>(in);
  c.ngrams.min_n = Get<std::int32_t>(in);
  c.ngrams.max_n = Get<std::int32_t>(in);
  c.ngrams.buckets = Get<std::uint32_t>(in);
  c.min_count = Get<std::uint64_t>(in);
  c.seed = Get<std::uint64_t>(in);
  c.workers = Get<std::int32_t>(in);
  c.noise = static_cast<NoiseDistribution>(Get<std::int32_t>(in));
  c.noise_power = Get<double>(in);
  c.combine = static_cast<GramCombine>(Get<std::int32_t>(in));
  c.subsample = Get<double>(in);
  c.Validate();
  const auto n = Get<std::uint64_t>(in);
  std::vector<std::pair<std::string, std::uint64_t>> entries;
  entries.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::string w = GetString(in);
    entries.emplace_back(std::move(w), Get<std::uint64_t>(in));
  }
  EmbeddingTable t;
  t.vocab_ = Vocabulary::FromCounts(std::move(entries), c.ngrams);
  t.config_ = c;
  t.Layout();
  const std::size_t d = t.dim_stride();
  t.input_.resize(t.num_rows_ * d);
  t.output_.resize(t.vocab_.size() * d);
  in.read(reinterpret_cast<char*>(t.input_.data()),
          static_cast<std::streamsize>(t.input_.size() * sizeof(double)));
  in.read(reinterpret_cast<char*>(t.output_.data()),
          static_cast<std::streamsize>(t.output_.size() * sizeof(double)));
  if (!in) throw Error("truncated embedding table file");
  return t;
}

void EmbeddingTable::WriteWordVectors(const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) throw Error("cannot write " + file.string());
  out << vocab_.size() << ' ' << config_.dim << '\n';
  std::string line;
  for (std::uint32_t w = 0; w < vocab_.size(); ++w) {
    line = vocab_.word(w);
    line.push_back(' ');
    AppendVector(line, EmbWord(w));
    line.push_back('\n');
    out << line;
  }
}

void EmbeddingTable::WriteBucketVectors(
    const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) throw Error("cannot write " + file.string());
  out << buckets_.size() << ' ' << config_.dim << '\n';
  std::string line;
  for (std::size_t i = 0; i < buckets_.size(); ++i) {
    line = "bucket:" + std::to_string(buckets_[i]);
    line.push_back(' ');
    AppendVector(line, InputRow(i));
    line.push_back('\n');
    out << line;
  }
}

}  // namespace mpemb
