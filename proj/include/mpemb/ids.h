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

#ifndef MPEMB_IDS_H_
#define MPEMB_IDS_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mpemb {

using NodeId = std::uint32_t;

/// Dense integer id tagged with the kind of thing it names.
template <typename Tag>
struct TypedId {
  std::uint32_t value = 0;

  constexpr TypedId() = default;
  constexpr explicit TypedId(std::uint32_t v) : value(v) {}
  constexpr auto operator<=>(const TypedId&) const = default;
};

using NodeTypeId = TypedId<struct NodeTypeTag>;
using EdgeTypeId = TypedId<struct EdgeTypeTag>;

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
};

/// Bijective name <-> id mapping with ids assigned contiguously from 0 in
/// insertion order.
class NameDictionary {
 public:
  std::uint32_t GetOrAdd(std::string_view name);
  std::optional<std::uint32_t> Find(std::string_view name) const;
  const std::string& Name(std::uint32_t id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const NameDictionary& other) const {
    return names_ == other.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>>
      index_;
};

}  // namespace mpemb

template <typename Tag>
struct std::hash<mpemb::TypedId<Tag>> {
  std::size_t operator()(const mpemb::TypedId<Tag>& id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};

#endif  // MPEMB_IDS_H_
