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

#ifndef MPEMB_TSV_H_
#define MPEMB_TSV_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mpemb {

/// Calls `fn(fields, line_number)` for every non-blank line of a
/// tab-separated file, skipping lines starting with '#'. Throws Error when the
/// file cannot be opened.
void ForEachTsvLine(
    const std::filesystem::path& path,
    const std::function<void(std::span<const std::string_view>, std::size_t)>&
        fn);

std::vector<std::string_view> Split(std::string_view s, char sep);

/// Shortest decimal representation that round-trips to the same double.
std::string FormatDouble(double v);

/// Appends values separated by single spaces.
void AppendVector(std::string& out, std::span<const double> values);

std::uint64_t ParseUint(std::string_view s, const std::string& file,
                        std::size_t line);
double ParseDouble(std::string_view s, const std::string& file,
                   std::size_t line);

}  // namespace mpemb

#endif  // MPEMB_TSV_H_
