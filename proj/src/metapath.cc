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

#include "mpemb/metapath.h"

#include <algorithm>
#include <charconv>

#include "mpemb/error.h"
#include "mpemb/tsv.h"

namespace mpemb {

MetaPath::MetaPath(std::vector<std::uint32_t> tokens)
    : tokens_(std::move(tokens)) {
  if (tokens_.size() % 2 == 0) {
    throw ConfigError("a meta-path needs an odd, non-zero token count");
  }
}

MetaPath MetaPath::Reversed() const {
  MetaPath r;
  r.tokens_.assign(tokens_.rbegin(), tokens_.rend());
  return r;
}

std::size_t MetaPathHash::operator()(const MetaPath& mp) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint32_t t : mp.tokens()) {
    h ^= t;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 32));
}

std::string SerializeMetaPath(const MetaPath& mp) {
  std::string out;
  char buf[16];
  auto tokens = mp.tokens();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back('.');
    out.push_back(i % 2 == 0 ? 'n' : 'e');
    auto res = std::to_chars(buf, buf + sizeof(buf), tokens[i]);
    out.append(buf, res.ptr);
  }
  return out;
}

std::vector<std::string_view> MetaPathTokens(std::string_view word) {
  return Split(word, '.');
}

MetaPath ParseMetaPath(std::string_view word) {
  auto parts = MetaPathTokens(word);
  std::vector<std::uint32_t> tokens;
  tokens.reserve(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::string_view p = parts[i];
    const char expected = i % 2 == 0 ? 'n' : 'e';
    if (p.size() < 2 || p[0] != expected) {
      throw ConfigError("malformed meta-path word '" + std::string(word) + "'");
    }
    std::uint32_t v = 0;
    auto res = std::from_chars(p.data() + 1, p.data() + p.size(), v);
    if (res.ec != std::errc() || res.ptr != p.data() + p.size()) {
      throw ConfigError("malformed meta-path word '" + std::string(word) + "'");
    }
    tokens.push_back(v);
  }
  return MetaPath(std::move(tokens));
}

}  // namespace mpemb
