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

#ifndef MPEMB_ERROR_H_
#define MPEMB_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mpemb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments or configuration supplied by the caller.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Input that parses but violates a data invariant (dangling edge endpoint,
/// unknown type name, ...).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class TaxonomyError : public Error {
 public:
  using Error::Error;
};

class OutOfVocabularyError : public Error {
 public:
  using Error::Error;
};

class UnsupportedConfigError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

/// NaN or Inf appeared during training.
class TrainingDivergedError : public Error {
 public:
  using Error::Error;
};

/// The labeled edge set or the training labels cannot support an experiment.
class ExperimentError : public Error {
 public:
  using Error::Error;
};

/// A configured resource budget was exhausted.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace mpemb

#endif  // MPEMB_ERROR_H_
